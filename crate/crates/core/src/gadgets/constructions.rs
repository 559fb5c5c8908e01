use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{degrees, instance_components, CspInstance, Hypergraph, Instance};

/// A constructed instance with its bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetResult {
    #[serde(skip)]
    pub instance: Hypergraph,
    pub construction: &'static str,
    pub vertices: usize,
    pub edges: usize,
    /// Images of every original vertex in the new instance.
    pub vertex_map: Vec<Vec<usize>>,
    /// Vertices added by the construction.
    pub fresh: usize,
    pub params: BTreeMap<&'static str, usize>,
}

impl GadgetResult {
    fn new(
        construction: &'static str,
        instance: Hypergraph,
        vertex_map: Vec<Vec<usize>>,
        params: impl IntoIterator<Item = (&'static str, usize)>,
    ) -> Self {
        let original: usize = vertex_map.iter().map(Vec::len).sum();
        GadgetResult {
            construction,
            vertices: instance.n(),
            edges: instance.num_edges(),
            fresh: instance.n() - original,
            vertex_map,
            params: params.into_iter().collect(),
            instance,
        }
    }
}

fn identity_map(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|v| vec![v]).collect()
}

fn require_arity(g: &Hypergraph, k: usize) -> Result<()> {
    if g.num_edges() > 0 && g.arity() != k {
        return Err(Error::InvalidArgument(format!("expected a {k}-uniform hypergraph, got arity {}", g.arity())));
    }
    Ok(())
}

/// Adds `r - k` fresh vertices to every edge.
pub fn pad_to_arity(g: &Hypergraph, k: usize, r: usize) -> Result<GadgetResult> {
    if !(2 <= k && k <= r) {
        return Err(Error::InvalidArgument(format!("need 2 <= k <= r, got k = {k}, r = {r}")));
    }
    require_arity(g, k)?;
    let extra = r - k;
    let n = g.n();
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .map(|(idx, e)| {
            let mut e = e.clone();
            e.extend((0..extra).map(|t| n + idx * extra + t));
            e
        })
        .collect();
    let inst = Hypergraph::multi(n + extra * g.num_edges(), edges)?;
    Ok(GadgetResult::new("pad", inst, identity_map(n), [("k", k), ("r", r)]))
}

/// Subdivides every edge `(u, w)` of a 2-uniform multigraph (loops allowed)
/// by a fresh vertex `x`, giving edges `(u, x)` and `(w, x)`.
pub fn two_stretch(i: &CspInstance) -> Result<GadgetResult> {
    if !i.equalities().is_empty() {
        return Err(Error::InvalidArgument("2-stretch takes no equality constraints".into()));
    }
    if i.scopes().iter().any(|s| s.len() != 2) {
        return Err(Error::InvalidArgument("2-stretch needs a 2-uniform instance".into()));
    }
    let n = i.n();
    let mut edges = Vec::with_capacity(2 * i.scopes().len());
    for (idx, s) in i.scopes().iter().enumerate() {
        let x = n + idx;
        edges.push(vec![s[0], x]);
        edges.push(vec![s[1], x]);
    }
    let inst = Hypergraph::multi(n + i.scopes().len(), edges)?;
    Ok(GadgetResult::new("stretch", inst, identity_map(n), []))
}

/// For every vertex `v`, `(j - 1) d_v` pendant edges, each through `v` and
/// `k - 1` fresh vertices.
pub fn vertex_power(g: &Hypergraph, j: usize) -> Result<GadgetResult> {
    if j == 0 {
        return Err(Error::InvalidArgument("vertex power needs j >= 1".into()));
    }
    let k = g.arity();
    let n = g.n();
    let mut edges = g.edges().to_vec();
    let mut next = n;
    if g.num_edges() > 0 {
        for (v, d) in degrees(g).into_iter().enumerate() {
            for _ in 0..(j - 1) * d {
                let mut e = vec![v];
                e.extend(next..next + k - 1);
                next += k - 1;
                edges.push(e);
            }
        }
    }
    let inst = Hypergraph::multi(next, edges)?;
    Ok(GadgetResult::new("power", inst, identity_map(n), [("j", j), ("k", k)]))
}

/// `p` copies of a connected `G` (copy `j` vertex `i` is `j n + i`), linked
/// cyclically: for each copy `j` and vertex `i`, fresh `u_{i,1..k-1}` with
/// edges `(u.., v_i^j)` and `(u.., v_i^{(j mod p)+1})`.
pub fn component_separator(g: &Hypergraph, p: usize) -> Result<GadgetResult> {
    if p == 0 {
        return Err(Error::InvalidArgument("component separator needs p >= 1".into()));
    }
    let split = instance_components(g);
    if split.parts.len() != 1 || !split.isolated.is_empty() {
        return Err(Error::Precondition("component separator needs a connected hypergraph".into()));
    }
    let (n, k) = (g.n(), g.arity());
    let mut edges = Vec::with_capacity(p * (g.num_edges() + 2 * n));
    for j in 0..p {
        for e in g.edges() {
            edges.push(e.iter().map(|&v| j * n + v).collect());
        }
    }
    for j in 0..p {
        let succ = (j + 1) % p;
        for i in 0..n {
            let base = p * n + (j * n + i) * (k - 1);
            let u: Vec<usize> = (base..base + k - 1).collect();
            let mut here = u.clone();
            here.push(j * n + i);
            let mut there = u;
            there.push(succ * n + i);
            edges.push(here);
            edges.push(there);
        }
    }
    let inst = Hypergraph::multi(p * n + p * n * (k - 1), edges)?;
    let map = (0..n).map(|i| (0..p).map(|j| j * n + i).collect()).collect();
    Ok(GadgetResult::new("separate", inst, map, [("p", p), ("k", k)]))
}

/// Replaces each equality `(v_s, v_t)` by `p` pairs of edges through fresh
/// `u_{i,1..k-1}^j`: `(v_s, u..)` and `(v_t, u..)`.
pub fn equality_eliminator(i: &CspInstance, p: usize) -> Result<GadgetResult> {
    if p == 0 {
        return Err(Error::InvalidArgument("equality eliminator needs p >= 1".into()));
    }
    let k = i.arity();
    if k < 2 {
        return Err(Error::InvalidArgument("equality eliminator needs scopes of arity >= 2".into()));
    }
    let n = i.n();
    let nu = i.equalities().len();
    let mut edges: Vec<Vec<usize>> = i.scopes().to_vec();
    for (idx, &(s, t)) in i.equalities().iter().enumerate() {
        for j in 0..p {
            let base = n + (idx * p + j) * (k - 1);
            let u: Vec<usize> = (base..base + k - 1).collect();
            let mut a = vec![s];
            a.extend(&u);
            let mut b = vec![t];
            b.extend(&u);
            edges.push(a);
            edges.push(b);
        }
    }
    let inst = Hypergraph::multi(n + nu * p * (k - 1), edges)?;
    Ok(GadgetResult::new("eq-elim", inst, identity_map(n), [("p", p), ("k", k), ("nu", nu)]))
}
