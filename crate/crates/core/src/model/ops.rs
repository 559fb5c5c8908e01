use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::Rational;

use super::instance::UnionFind;
use super::symfunc::orderings;
use super::{CspInstance, Instance, SymFunc};

/// The marginal table `f^(k)`; it is itself a symmetric function of arity `k`.
pub type MarginalTable = SymFunc;

/// `f^(k)(z_1..z_k) = sum over z_{k+1}..z_r in D of g(z_1..z_r)`.
///
/// Each stored multiset contributes to every size-`k` sub-multiset it
/// contains, weighted by the number of orderings of the leftover part.
pub fn marginalize(g: &SymFunc, k: usize) -> Result<MarginalTable> {
    let r = g.arity();
    if k == 0 || k > r {
        return Err(Error::InvalidArgument(format!("marginal arity {k} outside 1..={r}")));
    }
    if k == r {
        return Ok(g.clone());
    }
    let mut acc: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    for (key, w) in g.support() {
        // distinct values of the key with multiplicities
        let mut vals: Vec<(usize, usize)> = Vec::new();
        for &z in key {
            match vals.last_mut() {
                Some((v, m)) if *v == z => *m += 1,
                _ => vals.push((z, 1)),
            }
        }
        let mut take = vec![0usize; vals.len()];
        sub_multisets(&vals, k, 0, &mut take, &mut |take| {
            let mut kept = Vec::with_capacity(k);
            let mut rest = Vec::with_capacity(r - k);
            for ((z, m), &t) in vals.iter().zip(take) {
                kept.extend(std::iter::repeat_n(*z, t));
                rest.extend(std::iter::repeat_n(*z, m - t));
            }
            let c = Rational::from(orderings(&rest));
            *acc.entry(kept).or_insert_with(Rational::zero) += &c * w;
        });
    }
    SymFunc::from_weights(g.q(), k, acc)
}

fn sub_multisets(
    vals: &[(usize, usize)],
    remaining: usize,
    pos: usize,
    take: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if pos == vals.len() {
        if remaining == 0 {
            f(take);
        }
        return;
    }
    let max = vals[pos].1.min(remaining);
    for t in 0..=max {
        take[pos] = t;
        sub_multisets(vals, remaining - t, pos + 1, take, f);
    }
    take[pos] = 0;
}

/// Elements with `f^(1)(z) > 0`, i.e. those occurring in some nonzero weight.
pub fn active_elements(g: &SymFunc) -> Vec<usize> {
    let mut active = vec![false; g.q()];
    for (key, _) in g.support() {
        for &z in key {
            active[z] = true;
        }
    }
    (0..g.q()).filter(|&z| active[z]).collect()
}

/// Result of dropping the non-participating domain elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pruned {
    /// The restricted function over `0..kept.len()`.
    pub func: SymFunc,
    /// Original label of each surviving element.
    pub kept: Vec<usize>,
    pub removed: Vec<usize>,
}

pub fn prune_domain(g: &SymFunc) -> Pruned {
    let kept = active_elements(g);
    let removed = (0..g.q()).filter(|z| kept.binary_search(z).is_err()).collect();
    Pruned {
        func: g.restrict(&kept),
        kept,
        removed,
    }
}

/// Classes of the reflexive-transitive closure of `R^(2)` over `elements`.
/// Classes are listed by least element; each class is sorted.
pub fn components_over(g: &SymFunc, elements: &[usize]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(g.q());
    for (key, _) in g.support() {
        for w in key.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &z in elements {
        by_root.entry(uf.find(z)).or_default().push(z);
    }
    let mut classes: Vec<Vec<usize>> = by_root.into_values().collect();
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort();
    classes
}

/// Connected components of the domain. Requires a pruned function.
pub fn domain_components(g: &SymFunc) -> Result<Vec<Vec<usize>>> {
    let active = active_elements(g);
    if active.len() != g.q() {
        return Err(Error::Precondition(
            "domain_components needs a pruned function (every element must participate)".into(),
        ));
    }
    Ok(components_over(g, &active))
}

/// One connected piece of an instance, relabelled to `0..vertices.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstancePart {
    /// Original variable ids, ascending.
    pub vertices: Vec<usize>,
    pub instance: CspInstance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceComponents {
    pub parts: Vec<InstancePart>,
    /// Variables that occur in no scope and no equality.
    pub isolated: Vec<usize>,
}

/// Components of the variable-scope incidence graph (equalities also link).
pub fn instance_components<I: Instance + ?Sized>(inst: &I) -> InstanceComponents {
    let n = inst.num_vars();
    let mut uf = UnionFind::new(n);
    let mut touched = vec![false; n];
    for s in inst.scopes() {
        for &v in s {
            touched[v] = true;
        }
        for w in s.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    for &(u, w) in inst.equalities() {
        touched[u] = true;
        touched[w] = true;
        uf.union(u, w);
    }
    let mut roots: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut isolated = Vec::new();
    for v in 0..n {
        if touched[v] {
            roots.entry(uf.find(v)).or_default().push(v);
        } else {
            isolated.push(v);
        }
    }
    let mut local = vec![usize::MAX; n];
    let mut part_of = vec![usize::MAX; n];
    let groups: Vec<Vec<usize>> = roots.into_values().collect();
    for (p, vs) in groups.iter().enumerate() {
        for (i, &v) in vs.iter().enumerate() {
            local[v] = i;
            part_of[v] = p;
        }
    }
    let mut scopes: Vec<Vec<Vec<usize>>> = vec![Vec::new(); groups.len()];
    for s in inst.scopes() {
        let p = part_of[s[0]];
        scopes[p].push(s.iter().map(|&v| local[v]).collect());
    }
    let mut eqs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); groups.len()];
    for &(u, w) in inst.equalities() {
        eqs[part_of[u]].push((local[u], local[w]));
    }
    let parts = groups
        .into_iter()
        .zip(scopes)
        .zip(eqs)
        .map(|((vertices, scopes), eqs)| InstancePart {
            instance: CspInstance::new(vertices.len(), scopes, eqs).expect("relabelled in range"),
            vertices,
        })
        .collect();
    InstanceComponents { parts, isolated }
}

/// Occurrence count of each variable, counting repeats within a scope.
pub fn degrees<I: Instance + ?Sized>(inst: &I) -> Vec<usize> {
    let mut d = vec![0usize; inst.num_vars()];
    for s in inst.scopes() {
        for &v in s {
            d[v] += 1;
        }
    }
    d
}
