//! Text formats for functions, hypergraphs and #CSP instances.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exact::Rational;

use super::{AnyInstance, CspInstance, Hypergraph, SymFunc};

/// Non-blank lines with `#` comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn int(line: usize, tok: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, format!("expected a nonnegative integer, found {tok:?}")))
}

fn expect_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    header: &str,
) -> Result<()> {
    match lines.next() {
        Some((_, l)) if l.split_whitespace().collect::<Vec<_>>().join(" ") == header => Ok(()),
        Some((ln, l)) => Err(Error::parse(ln, format!("expected header {header:?}, found {l:?}"))),
        None => Err(Error::parse(1, format!("empty input, expected header {header:?}"))),
    }
}

fn count_line<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<usize> {
    match lines.next() {
        Some((ln, l)) => {
            let toks: Vec<&str> = l.split_whitespace().collect();
            match toks.as_slice() {
                ["n", v] => int(ln, v),
                _ => Err(Error::parse(ln, format!("expected \"n <int>\", found {l:?}"))),
            }
        }
        None => Err(Error::parse(1, "missing \"n <int>\" line")),
    }
}

pub fn load_symfunc(text: &str) -> Result<SymFunc> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "symfunc v1")?;
    let (ln, l) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing \"q <int> r <int>\" line"))?;
    let toks: Vec<&str> = l.split_whitespace().collect();
    let (q, r) = match toks.as_slice() {
        ["q", q, "r", r] => (int(ln, q)?, int(ln, r)?),
        _ => return Err(Error::parse(ln, format!("expected \"q <int> r <int>\", found {l:?}"))),
    };
    if r == 2 {
        return Err(Error::parse(
            ln,
            "arity r = 2 is the graph case and is not handled; need r >= 3",
        ));
    }
    if r < 3 {
        return Err(Error::parse(ln, format!("arity r = {r} not supported; need r >= 3")));
    }
    if q == 0 {
        return Err(Error::parse(ln, "domain size q must be positive"));
    }

    let mut g = SymFunc::zero(q, r);
    let mut seen = BTreeSet::new();
    for (ln, l) in lines {
        let (lhs, rhs) = l
            .split_once('=')
            .ok_or_else(|| Error::parse(ln, format!("expected \"<z1> ... <zr> = <weight>\", found {l:?}")))?;
        let zs = lhs
            .split_whitespace()
            .map(|t| int(ln, t))
            .collect::<Result<Vec<_>>>()?;
        if zs.len() != r {
            return Err(Error::parse(ln, format!("expected {r} elements, found {}", zs.len())));
        }
        if let Some(&z) = zs.iter().find(|&&z| z >= q) {
            return Err(Error::parse(ln, format!("element {z} out of range 0..{q}")));
        }
        if zs.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::parse(ln, "elements must be non-decreasing"));
        }
        let w: Rational = rhs
            .trim()
            .parse()
            .map_err(|_| Error::parse(ln, format!("malformed weight {:?}", rhs.trim())))?;
        if w.is_negative() {
            return Err(Error::parse(ln, format!("negative weight {w}")));
        }
        if !seen.insert(zs.clone()) {
            return Err(Error::parse(ln, format!("duplicate multiset {zs:?}")));
        }
        g.set(&zs, w);
    }
    Ok(g)
}

pub fn load_hypergraph(text: &str) -> Result<Hypergraph> {
    load_hypergraph_impl(text, false)
}

/// Accepts repeated edge lines, as emitted for gadget multigraphs.
pub fn load_multi_hypergraph(text: &str) -> Result<Hypergraph> {
    load_hypergraph_impl(text, true)
}

fn load_hypergraph_impl(text: &str, allow_repeats: bool) -> Result<Hypergraph> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "hypergraph v1")?;
    let n = count_line(&mut lines)?;
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    let mut arity = None;
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        if toks.next() != Some("e") {
            return Err(Error::parse(ln, format!("expected \"e <v1> ... <vr>\", found {l:?}")));
        }
        let vs = toks.map(|t| int(ln, t)).collect::<Result<Vec<_>>>()?;
        if vs.is_empty() {
            return Err(Error::parse(ln, "edge with no vertices"));
        }
        match arity {
            None => arity = Some(vs.len()),
            Some(a) if a != vs.len() => {
                return Err(Error::parse(ln, format!("edge has {} vertices, expected {a}", vs.len())))
            }
            _ => {}
        }
        if let Some(&v) = vs.iter().find(|&&v| v >= n) {
            return Err(Error::parse(ln, format!("vertex {v} out of range 0..{n}")));
        }
        let mut sorted = vs.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::parse(ln, "non-distinct edge vertices"));
        }
        if sorted != vs {
            return Err(Error::parse(ln, "edge vertices must be strictly increasing"));
        }
        if !seen.insert(vs.clone()) && !allow_repeats {
            return Err(Error::parse(ln, format!("duplicate edge {vs:?}")));
        }
        edges.push(vs);
    }
    Hypergraph::multi(n, edges).map_err(|e| Error::parse(0, e.to_string()))
}

pub fn load_csp(text: &str) -> Result<CspInstance> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "csp v1")?;
    let n = count_line(&mut lines)?;
    let mut scopes = Vec::new();
    let mut equalities = Vec::new();
    let mut arity = None;
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks.first() {
            Some(&"c") => {
                let vs = toks[1..].iter().map(|t| int(ln, t)).collect::<Result<Vec<_>>>()?;
                if vs.is_empty() {
                    return Err(Error::parse(ln, "scope with no variables"));
                }
                match arity {
                    None => arity = Some(vs.len()),
                    Some(a) if a != vs.len() => {
                        return Err(Error::parse(ln, format!("scope has {} variables, expected {a}", vs.len())))
                    }
                    _ => {}
                }
                if let Some(&v) = vs.iter().find(|&&v| v >= n) {
                    return Err(Error::parse(ln, format!("variable {v} out of range 0..{n}")));
                }
                scopes.push(vs);
            }
            Some(&"eq") => {
                if toks.len() != 3 {
                    return Err(Error::parse(ln, format!("expected \"eq <u> <w>\", found {l:?}")));
                }
                let (u, w) = (int(ln, toks[1])?, int(ln, toks[2])?);
                if u >= n || w >= n {
                    return Err(Error::parse(ln, format!("equality ({u}, {w}) out of range 0..{n}")));
                }
                equalities.push((u, w));
            }
            _ => return Err(Error::parse(ln, format!("expected a \"c\" or \"eq\" line, found {l:?}"))),
        }
    }
    CspInstance::new(n, scopes, equalities).map_err(|e| Error::parse(0, e.to_string()))
}

/// Dispatches on the header line.
pub fn load_instance(text: &str) -> Result<AnyInstance> {
    let header = content_lines(text).next().map(|(_, l)| l.to_string());
    match header.as_deref() {
        Some(h) if h.starts_with("hypergraph") => Ok(AnyInstance::Hypergraph(load_hypergraph(text)?)),
        Some(h) if h.starts_with("csp") => Ok(AnyInstance::Csp(load_csp(text)?)),
        Some(h) => Err(Error::parse(1, format!("unknown instance header {h:?}"))),
        None => Err(Error::parse(1, "empty instance file")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Instance;

    fn line_of(e: Error) -> usize {
        match e {
            Error::Parse { line, .. } => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn symfunc_minimal() {
        let g = load_symfunc("symfunc v1\nq 2 r 3\n0 0 0 = 1\n").unwrap();
        assert_eq!(g.nonzero_count(), 1);
        assert_eq!(g.weight(&[0, 0, 0]), Rational::one());
    }

    #[test]
    fn symfunc_comments_and_fractions() {
        let g = load_symfunc("# parity-ish\nsymfunc v1\nq 2 r 3 # header\n\n0 1 1 = 3/6\n").unwrap();
        assert_eq!(g.weight(&[1, 0, 1]), Rational::new(1, 2));
    }

    #[test]
    fn symfunc_errors_carry_line_numbers() {
        let e = load_symfunc("symfunc v1\nq 2 r 3\n0 0 0 = 1\n0 0 0 = 2\n").unwrap_err();
        assert_eq!(line_of(e), 4);
        let e = load_symfunc("symfunc v1\nq 2 r 3\n0 0 1 = -1\n").unwrap_err();
        assert_eq!(line_of(e), 3);
        let e = load_symfunc("symfunc v1\nq 2 r 3\n0 0 2 = 1\n").unwrap_err();
        assert_eq!(line_of(e), 3);
        let e = load_symfunc("symfunc v1\nq 2 r 3\n1 0 0 = 1\n").unwrap_err();
        assert_eq!(line_of(e), 3);
        let e = load_symfunc("symfunc v1\nq 2 r 3\n0 0 = 1\n").unwrap_err();
        assert_eq!(line_of(e), 3);
        let e = load_symfunc("symfunc v1\nq 2 r 3\n0 0 0 1\n").unwrap_err();
        assert_eq!(line_of(e), 3);
    }

    #[test]
    fn symfunc_rejects_binary() {
        let e = load_symfunc("symfunc v1\nq 2 r 2\n0 0 = 1\n").unwrap_err();
        assert!(e.to_string().contains("r = 2"), "{e}");
    }

    #[test]
    fn hypergraph_rejects_repeated_vertex() {
        let e = load_hypergraph("hypergraph v1\nn 3\ne 1 1 2\n").unwrap_err();
        assert_eq!(line_of(e.clone()), 3);
        assert!(e.to_string().contains("non-distinct"));
    }

    #[test]
    fn hypergraph_rejects_duplicates_unless_multi() {
        let text = "hypergraph v1\nn 3\ne 0 1 2\ne 0 1 2\n";
        assert_eq!(line_of(load_hypergraph(text).unwrap_err()), 4);
        assert_eq!(load_multi_hypergraph(text).unwrap().num_edges(), 2);
    }

    #[test]
    fn csp_accepts_repeats() {
        let c = load_csp("csp v1\nn 3\nc 1 1 2\nc 1 1 2\neq 0 2\n").unwrap();
        assert_eq!(c.scopes(), &[vec![1, 1, 2], vec![1, 1, 2]]);
        assert_eq!(c.equalities(), &[(0, 2)]);
        assert!(load_csp("csp v1\nn 3\nc 1 1 3\n").is_err());
    }

    #[test]
    fn dispatch_by_header() {
        assert!(matches!(load_instance("hypergraph v1\nn 1\n").unwrap(), AnyInstance::Hypergraph(_)));
        assert!(matches!(load_instance("csp v1\nn 1\n").unwrap(), AnyInstance::Csp(_)));
        assert!(load_instance("graph v1\n").is_err());
    }

    #[test]
    fn text_roundtrip() {
        let g = load_symfunc("symfunc v1\nq 3 r 3\n0 1 2 = 7/3\n2 2 2 = 1\n").unwrap();
        assert_eq!(load_symfunc(&g.to_text()).unwrap(), g);
        let h = load_hypergraph("hypergraph v1\nn 5\ne 0 1 2\ne 2 3 4\n").unwrap();
        assert_eq!(load_hypergraph(&h.to_text()).unwrap(), h);
        let c = load_csp("csp v1\nn 3\nc 2 1 1\neq 0 1\n").unwrap();
        assert_eq!(load_csp(&c.to_text()).unwrap(), c);
    }
}
