use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{multisets, SymFunc};

/// A symmetric relation of arity `r` on `0..size`, stored as sorted tuples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    size: usize,
    arity: usize,
    tuples: BTreeSet<Vec<usize>>,
}

impl Relation {
    pub fn new(size: usize, arity: usize, tuples: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for mut t in tuples {
            if t.len() != arity || t.iter().any(|&x| x >= size) {
                return Err(Error::InvalidArgument(format!("tuple {t:?} does not fit the relation")));
            }
            t.sort_unstable();
            set.insert(t);
        }
        Ok(Relation {
            size,
            arity,
            tuples: set,
        })
    }

    pub fn from_fn(size: usize, arity: usize, mut f: impl FnMut(&[usize]) -> bool) -> Self {
        let tuples = multisets(size, arity).filter(|t| f(t)).collect();
        Relation { size, arity, tuples }
    }

    /// The support of `g` as a relation on its whole domain.
    pub fn support_of(g: &SymFunc) -> Self {
        Relation {
            size: g.q(),
            arity: g.arity(),
            tuples: g.support().map(|(k, _)| k.to_vec()).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.tuples.iter()
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        let mut t = tuple.to_vec();
        t.sort_unstable();
        self.tuples.contains(&t)
    }

    /// Every `x` with `prefix + [x] + [pad; k]` in the relation, padded to the arity.
    pub fn completions(&self, prefix: &[usize], pad: usize) -> Vec<usize> {
        let mut t = vec![0; self.arity];
        (0..self.size)
            .filter(|&x| {
                t[..prefix.len()].copy_from_slice(prefix);
                t[prefix.len()] = x;
                for slot in &mut t[prefix.len() + 1..] {
                    *slot = pad;
                }
                self.contains(&t)
            })
            .collect()
    }
}
