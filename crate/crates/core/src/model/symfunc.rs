use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::Rational;

/// A symmetric weight function `g: D^r -> Q>=0`, stored on sorted multisets.
///
/// Absent keys are zero. Lookups at unsorted tuples are answered from the
/// sorted key, so symmetry is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymFunc {
    q: usize,
    r: usize,
    weights: BTreeMap<Vec<usize>, Rational>,
}

impl SymFunc {
    /// An identically-zero function. Arity 1 and 2 are allowed here for
    /// marginals and gadget functions; parsed function files need `r >= 3`.
    pub fn zero(q: usize, r: usize) -> Self {
        assert!(r >= 1, "arity must be positive");
        SymFunc {
            q,
            r,
            weights: BTreeMap::new(),
        }
    }

    /// Builds from (tuple, weight) pairs; tuples are sorted, repeats rejected.
    pub fn from_weights<I>(q: usize, r: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Rational)>,
    {
        let mut g = SymFunc::zero(q, r);
        for (mut key, w) in entries {
            if key.len() != r {
                return Err(Error::InvalidArgument(format!(
                    "tuple {key:?} has length {}, expected {r}",
                    key.len()
                )));
            }
            if let Some(&z) = key.iter().find(|&&z| z >= q) {
                return Err(Error::InvalidArgument(format!("element {z} out of range 0..{q}")));
            }
            if w.is_negative() {
                return Err(Error::InvalidArgument(format!("negative weight {w}")));
            }
            key.sort_unstable();
            if g.weights.contains_key(&key) {
                return Err(Error::InvalidArgument(format!("duplicate multiset {key:?}")));
            }
            if !w.is_zero() {
                g.weights.insert(key, w);
            }
        }
        Ok(g)
    }

    /// Tabulates `f` on every sorted multiset.
    pub fn from_fn(q: usize, r: usize, mut f: impl FnMut(&[usize]) -> Rational) -> Self {
        let mut g = SymFunc::zero(q, r);
        for key in multisets(q, r) {
            let w = f(&key);
            assert!(!w.is_negative(), "negative weight");
            if !w.is_zero() {
                g.weights.insert(key, w);
            }
        }
        g
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn arity(&self) -> usize {
        self.r
    }

    /// Nonzero entries in key order.
    pub fn support(&self) -> impl Iterator<Item = (&[usize], &Rational)> {
        self.weights.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn nonzero_count(&self) -> usize {
        self.weights.len()
    }

    pub fn get_sorted(&self, key: &[usize]) -> Option<&Rational> {
        debug_assert!(key.windows(2).all(|w| w[0] <= w[1]));
        self.weights.get(key)
    }

    pub fn weight(&self, tuple: &[usize]) -> Rational {
        let mut key = tuple.to_vec();
        key.sort_unstable();
        self.weights.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_positive_at(&self, tuple: &[usize]) -> bool {
        let mut key = tuple.to_vec();
        key.sort_unstable();
        self.weights.contains_key(&key)
    }

    pub fn set(&mut self, tuple: &[usize], w: Rational) {
        assert_eq!(tuple.len(), self.r);
        assert!(tuple.iter().all(|&z| z < self.q));
        assert!(!w.is_negative());
        let mut key = tuple.to_vec();
        key.sort_unstable();
        if w.is_zero() {
            self.weights.remove(&key);
        } else {
            self.weights.insert(key, w);
        }
    }

    /// Restriction to `elements`, relabelled to `0..elements.len()` in the given order.
    pub fn restrict(&self, elements: &[usize]) -> SymFunc {
        let mut pos = vec![usize::MAX; self.q];
        for (i, &z) in elements.iter().enumerate() {
            pos[z] = i;
        }
        let mut out = SymFunc::zero(elements.len(), self.r);
        for (k, w) in &self.weights {
            if k.iter().all(|&z| pos[z] != usize::MAX) {
                let mut key: Vec<usize> = k.iter().map(|&z| pos[z]).collect();
                key.sort_unstable();
                out.weights.insert(key, w.clone());
            }
        }
        out
    }

    /// Relabels element `z` as `perm[z]`; `perm` must be a permutation of `0..q`.
    pub fn permute(&self, perm: &[usize]) -> SymFunc {
        assert_eq!(perm.len(), self.q);
        let mut out = SymFunc::zero(self.q, self.r);
        for (k, w) in &self.weights {
            let mut key: Vec<usize> = k.iter().map(|&z| perm[z]).collect();
            key.sort_unstable();
            out.weights.insert(key, w.clone());
        }
        out
    }

    /// Dense table over all ordered tuples, mixed radix with the first
    /// coordinate most significant.
    pub fn dense(&self) -> Vec<Rational> {
        let size = self.q.pow(self.r as u32);
        let mut out = vec![Rational::zero(); size];
        let mut tuple = vec![0usize; self.r];
        for (idx, slot) in out.iter_mut().enumerate() {
            let mut rest = idx;
            for t in (0..self.r).rev() {
                tuple[t] = rest % self.q;
                rest /= self.q;
            }
            let mut key = tuple.clone();
            key.sort_unstable();
            if let Some(w) = self.weights.get(&key) {
                *slot = w.clone();
            }
        }
        out
    }

    /// Serializes in the `symfunc v1` text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("symfunc v1\nq {} r {}\n", self.q, self.r);
        for (k, w) in &self.weights {
            let zs: Vec<String> = k.iter().map(|z| z.to_string()).collect();
            s.push_str(&format!("{} = {}\n", zs.join(" "), w));
        }
        s
    }
}

/// All non-decreasing tuples of length `k` over `0..q`, in lexicographic order.
pub fn multisets(q: usize, k: usize) -> Multisets {
    multisets_over((0..q).collect(), k)
}

/// All non-decreasing length-`k` tuples drawn from `elements` (which must be sorted).
pub fn multisets_over(elements: Vec<usize>, k: usize) -> Multisets {
    let done = elements.is_empty() && k > 0;
    Multisets {
        elements,
        idx: vec![0; k],
        done,
    }
}

pub struct Multisets {
    elements: Vec<usize>,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for Multisets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().map(|&i| self.elements[i]).collect();
        let n = self.elements.len();
        match (0..self.idx.len()).rev().find(|&t| self.idx[t] + 1 < n) {
            Some(t) => {
                let v = self.idx[t] + 1;
                for x in &mut self.idx[t..] {
                    *x = v;
                }
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// Number of distinct orderings of a sorted multiset.
pub fn orderings(sorted: &[usize]) -> u64 {
    let mut total = 1u64;
    let mut denom = 1u64;
    let mut run = 0u64;
    for (i, z) in sorted.iter().enumerate() {
        total *= i as u64 + 1;
        if i > 0 && sorted[i - 1] == *z {
            run += 1;
        } else {
            run = 1;
        }
        denom *= run;
    }
    total / denom
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_enumeration_counts() {
        assert_eq!(multisets(2, 3).count(), 4);
        assert_eq!(multisets(4, 3).count(), 20);
        assert_eq!(multisets(3, 0).count(), 1);
        assert_eq!(multisets(0, 2).count(), 0);
        assert_eq!(
            multisets_over(vec![2, 5], 2).collect::<Vec<_>>(),
            vec![vec![2, 2], vec![2, 5], vec![5, 5]]
        );
    }

    #[test]
    fn ordering_counts() {
        assert_eq!(orderings(&[0, 0, 1]), 3);
        assert_eq!(orderings(&[0, 1, 2]), 6);
        assert_eq!(orderings(&[1, 1, 1]), 1);
        assert_eq!(orderings(&[]), 1);
    }

    #[test]
    fn lookup_is_symmetric() {
        let g = SymFunc::from_weights(3, 3, [(vec![2, 0, 1], Rational::from(5i64))]).unwrap();
        assert_eq!(g.weight(&[1, 2, 0]), Rational::from(5i64));
        assert_eq!(g.weight(&[0, 0, 0]), Rational::zero());
    }

    #[test]
    fn rejects_duplicates_and_negatives() {
        let one = Rational::one();
        assert!(SymFunc::from_weights(2, 3, [(vec![0, 0, 1], one.clone()), (vec![1, 0, 0], one)]).is_err());
        assert!(SymFunc::from_weights(2, 3, [(vec![0, 0, 1], Rational::from(-1i64))]).is_err());
    }
}
