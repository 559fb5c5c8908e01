use num_bigint::BigUint;
use num_traits::One;

use crate::abelian::count_homs;
use crate::dichotomy::{FactorStructure, TractableStructure};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::model::{degrees, marginalize, multisets, orderings, Hypergraph, SymFunc};

fn require_binary(h: &SymFunc) -> Result<()> {
    if h.arity() != 2 {
        return Err(Error::InvalidArgument(format!("expected a binary function, got arity {}", h.arity())));
    }
    Ok(())
}

/// `h2(x, y) = Σ_z h(x, z) h(y, z)`.
pub fn gram(h: &SymFunc) -> Result<SymFunc> {
    require_binary(h)?;
    let q = h.q();
    Ok(SymFunc::from_fn(q, 2, |t| {
        (0..q).map(|z| h.weight(&[t[0], z]) * h.weight(&[t[1], z])).sum()
    }))
}

/// `f~(z, z') = Σ_{w in D^(k-1)} f(z, w) f(z', w)` with `f = marginalize(g, k)`.
pub fn tilde_f(g: &SymFunc, k: usize) -> Result<SymFunc> {
    if !(2 <= k && k <= g.arity()) {
        return Err(Error::InvalidArgument(format!("need 2 <= k <= {}, got {k}", g.arity())));
    }
    let f = marginalize(g, k)?;
    let q = g.q();
    let rests: Vec<(Vec<usize>, u64)> = multisets(q, k - 1)
        .map(|w| {
            let c = orderings(&w);
            (w, c)
        })
        .collect();
    let slice = |z: usize, w: &[usize]| {
        let mut t = w.to_vec();
        t.push(z);
        f.weight(&t)
    };
    Ok(SymFunc::from_fn(q, 2, |t| {
        rests
            .iter()
            .map(|(w, c)| slice(t[0], w) * slice(t[1], w) * Rational::from(*c))
            .sum()
    }))
}

/// Weight seen by the original edges after [`vertex_power`](super::vertex_power):
/// `h(z) = f(z) Π_t U(z_t)^(j-1)` with `U = f^(1)`.
pub fn power_weight(f: &SymFunc, j: usize) -> Result<SymFunc> {
    if j == 0 {
        return Err(Error::InvalidArgument("vertex power needs j >= 1".into()));
    }
    let u = marginalize(f, 1)?;
    let e = (j - 1) as i64;
    let mut h = SymFunc::zero(f.q(), f.arity());
    for (z, w) in f.support() {
        let boost: Rational = z.iter().map(|&x| u.weight(&[x]).pow(e)).product();
        h.set(z, w * &boost);
    }
    Ok(h)
}

fn component_of(ts: &TractableStructure, z: usize) -> Option<&FactorStructure> {
    ts.components
        .iter()
        .map(|c| &c.factor)
        .find(|fs| fs.class_of(z).is_some())
}

/// [`power_weight`] of a tractable `g` in closed form: on component `l`,
/// `h = g^j (|A| ^ (r(r-2)) C^(r-1) (Σ mu)^(r(r-1)))^(j-1)`.
pub fn power_weight_lemma(g: &SymFunc, ts: &TractableStructure, j: usize) -> Result<SymFunc> {
    if j == 0 {
        return Err(Error::InvalidArgument("vertex power needs j >= 1".into()));
    }
    let r = g.arity() as i64;
    let e = (j - 1) as i64;
    let mut h = SymFunc::zero(g.q(), g.arity());
    for (z, w) in g.support() {
        let fs = component_of(ts, z[0])
            .ok_or_else(|| Error::Internal(format!("element {} lies in no component", z[0])))?;
        let sum_mu: Rational = fs.mu.iter().sum();
        let per = Rational::from(fs.order() as u64).pow(r * (r - 2))
            * fs.c.pow(r - 1)
            * sum_mu.pow(r * (r - 1));
        h.set(z, w.pow(j as i64) * per.pow(e));
    }
    Ok(h)
}

/// Per-copy factor `η` of component `fs` in the separator identity
/// `Z(G^(p)) = Σ_l η_l^p Z^{S_l}(G)`:
/// `C^(M+2n) Π_i Σ_h mu_h^(d_i+2) (Σ mu^2)^(n(k-1)) |A|^(n(k-2))`.
pub fn separator_eta(fs: &FactorStructure, g: &Hypergraph) -> Rational {
    let n = g.n() as i64;
    let k = g.arity() as i64;
    let m = g.num_edges() as i64;
    let degree_part: Rational = degrees(g)
        .into_iter()
        .map(|d| fs.mu_power_sum(d as u64 + 2))
        .product();
    fs.c.pow(m + 2 * n)
        * degree_part
        * fs.mu_power_sum(2).pow(n * (k - 1))
        * Rational::from(fs.order() as u64).pow(n * (k - 2))
}

/// `Z^{S_l}(G)` for every component, in component order.
pub fn component_homs(ts: &TractableStructure, g: &Hypergraph) -> Vec<BigUint> {
    ts.components
        .iter()
        .map(|c| count_homs(&c.group.decomposition, c.group.a, g))
        .collect()
}

/// Per-component factor `|A|^((k-2) p ν)` of the equality-eliminator identity.
pub fn eliminator_scale(order: usize, k: usize, p: usize, nu: usize) -> BigUint {
    let e = (k.saturating_sub(2) * p * nu) as u32;
    if e == 0 {
        return BigUint::one();
    }
    BigUint::from(order).pow(e)
}

/// The 0/1 indicator of the support of `g`.
pub fn support_indicator(g: &SymFunc) -> SymFunc {
    let mut s = SymFunc::zero(g.q(), g.arity());
    for (z, _) in g.support() {
        s.set(z, Rational::one());
    }
    s
}
