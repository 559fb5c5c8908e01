use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::dichotomy::FactorStructure;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::model::{degrees, Instance};

/// `Λ = C^M · Π_v Σ_i mu[i]^{d_v}`, vertices grouped by degree.
pub fn lambda_factor_direct(fs: &FactorStructure, degrees: &[usize], m: usize) -> Result<Rational> {
    let total: usize = degrees.iter().sum();
    if total != fs.arity() * m {
        return Err(Error::Precondition(format!(
            "degree sum {total} differs from r*M = {}",
            fs.arity() * m
        )));
    }
    let mut by_degree: BTreeMap<usize, i64> = BTreeMap::new();
    for &d in degrees {
        *by_degree.entry(d).or_insert(0) += 1;
    }
    let mut value = fs.c.pow(m as i64);
    for (d, count) in by_degree {
        value *= fs.mu_power_sum(d as u64).pow(count);
    }
    Ok(value)
}

/// Coefficients of `Λ` as a polynomial in the index weights: exponent vector
/// `(M_1..M_s)` maps to the number of index assignments producing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialTally {
    pub s: usize,
    pub rm: u64,
    pub coeff: BTreeMap<Vec<u64>, BigUint>,
}

impl MonomialTally {
    /// Σ of all coefficients (equals `s^n`).
    pub fn total(&self) -> BigUint {
        self.coeff.values().sum()
    }
}

impl Serialize for MonomialTally {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<(&Vec<u64>, String)> = self.coeff.iter().map(|(k, v)| (k, v.to_string())).collect();
        let mut st = ser.serialize_struct("MonomialTally", 3)?;
        st.serialize_field("s", &self.s)?;
        st.serialize_field("rM", &self.rm)?;
        st.serialize_field("coeff", &entries)?;
        st.end()
    }
}

/// Nonnegative integer table with prescribed row sums and a common column sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContingencyTable {
    /// `entries[i][j]`, `s` rows by `M` columns.
    pub entries: Vec<Vec<u64>>,
    pub row_sums: Vec<u64>,
    pub col_total: u64,
}

impl ContingencyTable {
    /// Column `j` as the sorted multiset of row indices it holds.
    pub fn column_multiset(&self, j: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.col_total as usize);
        for (i, row) in self.entries.iter().enumerate() {
            out.extend(std::iter::repeat_n(i, row[j] as usize));
        }
        out
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }
}

/// Northwest-corner fill.
pub fn northwest_contingency(row_totals: &[u64], cols: usize, col_total: u64) -> Result<ContingencyTable> {
    let sum: u64 = row_totals.iter().sum();
    if sum != cols as u64 * col_total {
        return Err(Error::InvalidArgument(format!(
            "row totals sum to {sum}, columns need {}",
            cols as u64 * col_total
        )));
    }
    let mut entries = vec![vec![0u64; cols]; row_totals.len()];
    let mut row_left = row_totals.to_vec();
    let mut col_left = vec![col_total; cols];
    let (mut i, mut j) = (0, 0);
    while i < row_totals.len() && j < cols {
        let x = row_left[i].min(col_left[j]);
        entries[i][j] = x;
        row_left[i] -= x;
        col_left[j] -= x;
        if row_left[i] == 0 {
            i += 1;
        }
        if col_left[j] == 0 {
            j += 1;
        }
    }
    Ok(ContingencyTable {
        entries,
        row_sums: row_totals.to_vec(),
        col_total,
    })
}

/// `Π_i λ_i^{M_i}` without roots: a product of original weights over the
/// columns of a contingency table, at the first tuple of the relation.
pub fn monomial_value(fs: &FactorStructure, exps: &[u64]) -> Result<Rational> {
    let alpha = fs
        .relation
        .tuples()
        .next()
        .ok_or_else(|| Error::Precondition("empty class relation".into()))?
        .clone();
    monomial_value_at(fs, exps, &alpha)
}

/// [`monomial_value`] at a chosen class tuple `alpha` of the relation.
pub fn monomial_value_at(fs: &FactorStructure, exps: &[u64], alpha: &[usize]) -> Result<Rational> {
    let r = fs.arity() as u64;
    if exps.len() != fs.s {
        return Err(Error::InvalidArgument(format!("{} exponents for s = {}", exps.len(), fs.s)));
    }
    if !fs.relation.contains(alpha) {
        return Err(Error::InvalidArgument(format!("{alpha:?} is not in the class relation")));
    }
    let total: u64 = exps.iter().sum();
    if !total.is_multiple_of(r) {
        return Err(Error::InvalidArgument(format!("exponent total {total} is not a multiple of r")));
    }
    let table = northwest_contingency(exps, (total / r) as usize, r)?;
    let mut columns: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    for j in 0..table.cols() {
        *columns.entry(table.column_multiset(j)).or_insert(0) += 1;
    }
    let mut value = Rational::one();
    for (idx, count) in columns {
        let elements: Vec<usize> = alpha.iter().zip(&idx).map(|(&a, &i)| fs.element(a, i)).collect();
        value *= fs.weight(&elements).pow(count);
    }
    Ok(value)
}

/// The monomial dynamic program over vertices, then `Σ coeff · monomial_value`.
pub fn lambda_monomial_dp<I: Instance + ?Sized>(fs: &FactorStructure, inst: &I) -> Result<(MonomialTally, Rational)> {
    let m = inst.scopes().len();
    if m == 0 {
        return Err(Error::Precondition("the monomial program needs at least one scope".into()));
    }
    let s = fs.s;
    let mut states: HashMap<Vec<u64>, BigUint> = HashMap::new();
    states.insert(vec![0; s], BigUint::one());
    for d in degrees(inst) {
        let mut next: HashMap<Vec<u64>, BigUint> = HashMap::with_capacity(states.len() * 2);
        for (state, c) in states {
            for i in 0..s {
                let mut st = state.clone();
                st[i] += d as u64;
                *next.entry(st).or_insert_with(BigUint::zero) += &c;
            }
        }
        states = next;
    }
    let coeff: BTreeMap<Vec<u64>, BigUint> = states.into_iter().collect();
    let mut value = Rational::zero();
    for (exps, c) in &coeff {
        value += Rational::from(c.clone()) * monomial_value(fs, exps)?;
    }
    let tally = MonomialTally {
        s,
        rm: (fs.arity() * m) as u64,
        coeff,
    };
    Ok((tally, value))
}
