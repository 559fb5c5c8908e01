use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Anything that can be fed to a partition function: variables `0..n` and
/// a multiset of scopes, optionally with equality constraints.
pub trait Instance {
    fn num_vars(&self) -> usize;
    fn scopes(&self) -> &[Vec<usize>];
    fn equalities(&self) -> &[(usize, usize)] {
        &[]
    }
}

/// r-uniform hypergraph. Edges are stored as strictly increasing tuples.
///
/// Gadget constructions may produce parallel edges; those are built with
/// [`Hypergraph::multi`] and flagged by [`Hypergraph::is_multi`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    arity: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// A simple hypergraph: distinct vertices per edge, no repeated edges.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let h = Self::multi(n, edges)?;
        let mut seen = BTreeSet::new();
        for e in &h.edges {
            if !seen.insert(e) {
                return Err(Error::InvalidArgument(format!("duplicate edge {e:?}")));
            }
        }
        Ok(h)
    }

    /// Like [`Hypergraph::new`] but keeps repeated edges as a multiset.
    pub fn multi(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let arity = edges.first().map_or(0, Vec::len);
        let mut out = Vec::with_capacity(edges.len());
        for mut e in edges {
            if e.len() != arity {
                return Err(Error::InvalidArgument(format!(
                    "edge {e:?} has {} vertices, expected {arity}",
                    e.len()
                )));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidArgument(format!("vertex {v} out of range 0..{n}")));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument(format!("non-distinct edge vertices {e:?}")));
            }
            out.push(e);
        }
        Ok(Hypergraph { n, arity, edges: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge size; 0 for an edgeless hypergraph.
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_multi(&self) -> bool {
        let set: BTreeSet<_> = self.edges.iter().collect();
        set.len() != self.edges.len()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("hypergraph v1\nn {}\n", self.n);
        for e in &self.edges {
            let vs: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            s.push_str(&format!("e {}\n", vs.join(" ")));
        }
        s
    }
}

impl Instance for Hypergraph {
    fn num_vars(&self) -> usize {
        self.n
    }

    fn scopes(&self) -> &[Vec<usize>] {
        &self.edges
    }
}

/// #CSP instance: scopes may repeat variables and may themselves repeat.
/// Scopes keep their input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CspInstance {
    n: usize,
    arity: usize,
    scopes: Vec<Vec<usize>>,
    equalities: Vec<(usize, usize)>,
}

impl CspInstance {
    pub fn new(n: usize, scopes: Vec<Vec<usize>>, equalities: Vec<(usize, usize)>) -> Result<Self> {
        let arity = scopes.first().map_or(0, Vec::len);
        for s in &scopes {
            if s.len() != arity {
                return Err(Error::InvalidArgument(format!(
                    "scope {s:?} has {} variables, expected {arity}",
                    s.len()
                )));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidArgument(format!("variable {v} out of range 0..{n}")));
            }
        }
        for &(u, w) in &equalities {
            if u >= n || w >= n {
                return Err(Error::InvalidArgument(format!("equality ({u}, {w}) out of range 0..{n}")));
            }
        }
        Ok(CspInstance {
            n,
            arity,
            scopes,
            equalities,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Copy with every equality folded in: variables joined by equalities
    /// are merged into their least member and the rest renumbered densely.
    pub fn contract_equalities(&self) -> CspInstance {
        if self.equalities.is_empty() {
            return self.clone();
        }
        let mut uf = UnionFind::new(self.n);
        for &(u, w) in &self.equalities {
            uf.union(u, w);
        }
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            let root = uf.find(v);
            if label[root] == usize::MAX {
                label[root] = next;
                next += 1;
            }
            label[v] = label[root];
        }
        let scopes = self
            .scopes
            .iter()
            .map(|s| s.iter().map(|&v| label[v]).collect())
            .collect();
        CspInstance {
            n: next,
            arity: self.arity,
            scopes,
            equalities: Vec::new(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("csp v1\nn {}\n", self.n);
        for sc in &self.scopes {
            let vs: Vec<String> = sc.iter().map(|v| v.to_string()).collect();
            s.push_str(&format!("c {}\n", vs.join(" ")));
        }
        for (u, w) in &self.equalities {
            s.push_str(&format!("eq {u} {w}\n"));
        }
        s
    }
}

impl Instance for CspInstance {
    fn num_vars(&self) -> usize {
        self.n
    }

    fn scopes(&self) -> &[Vec<usize>] {
        &self.scopes
    }

    fn equalities(&self) -> &[(usize, usize)] {
        &self.equalities
    }
}

impl From<&Hypergraph> for CspInstance {
    fn from(h: &Hypergraph) -> Self {
        CspInstance {
            n: h.n,
            arity: h.arity,
            scopes: h.edges.clone(),
            equalities: Vec::new(),
        }
    }
}

/// Either kind of parsed instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyInstance {
    Hypergraph(Hypergraph),
    Csp(CspInstance),
}

impl Instance for AnyInstance {
    fn num_vars(&self) -> usize {
        match self {
            AnyInstance::Hypergraph(h) => h.num_vars(),
            AnyInstance::Csp(c) => c.num_vars(),
        }
    }

    fn scopes(&self) -> &[Vec<usize>] {
        match self {
            AnyInstance::Hypergraph(h) => h.scopes(),
            AnyInstance::Csp(c) => c.scopes(),
        }
    }

    fn equalities(&self) -> &[(usize, usize)] {
        match self {
            AnyInstance::Hypergraph(h) => h.equalities(),
            AnyInstance::Csp(c) => c.equalities(),
        }
    }
}

/// Copies any instance into a [`CspInstance`].
pub fn to_csp<I: Instance + ?Sized>(inst: &I) -> CspInstance {
    CspInstance::new(inst.num_vars(), inst.scopes().to_vec(), inst.equalities().to_vec())
        .expect("instance invariants already hold")
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Joins two sets; the smaller root survives.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypergraph_validation() {
        assert!(Hypergraph::new(3, vec![vec![0, 1, 1]]).is_err());
        assert!(Hypergraph::new(3, vec![vec![0, 1, 3]]).is_err());
        assert!(Hypergraph::new(3, vec![vec![0, 1, 2], vec![2, 1, 0]]).is_err());
        let h = Hypergraph::multi(3, vec![vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
        assert!(h.is_multi());
        assert_eq!(h.edges()[1], vec![0, 1, 2]);
    }

    #[test]
    fn contraction_merges_variables() {
        let c = CspInstance::new(4, vec![vec![0, 1, 2], vec![1, 2, 3]], vec![(3, 0)]).unwrap();
        let k = c.contract_equalities();
        assert_eq!(k.n(), 3);
        assert_eq!(k.scopes(), &[vec![0, 1, 2], vec![1, 2, 0]]);
    }
}
