use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Observations `Z_p = Σ_l γ_l η_l^p` for `p = 1..m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InterpolationPlan {
    pub etas: Vec<Rational>,
    pub observations: Vec<Rational>,
}

/// Solved system. `gammas[i]` is the merged coefficient of `etas[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interpolation {
    /// Distinct `η` in order of first appearance.
    pub etas: Vec<Rational>,
    pub gammas: Vec<Rational>,
    /// `Σ γ`.
    pub z0: Rational,
}

/// Merges repeated `η`, then solves the Vandermonde system exactly. Extra
/// observations beyond the number of distinct `η` must be consistent.
pub fn recover_via_interpolation(plan: &InterpolationPlan) -> Result<Interpolation> {
    if plan.etas.iter().any(Rational::is_zero) {
        return Err(Error::InvalidArgument("interpolation needs nonzero etas".into()));
    }
    let mut etas: Vec<Rational> = Vec::new();
    for e in &plan.etas {
        if !etas.contains(e) {
            etas.push(e.clone());
        }
    }
    let m = etas.len();
    if plan.observations.len() < m {
        return Err(Error::InvalidArgument(format!(
            "{m} distinct etas need at least {m} observations, got {}",
            plan.observations.len()
        )));
    }
    // Row p - 1: η^p | Z_p.
    let mut rows: Vec<Vec<Rational>> = (1..=m)
        .map(|p| {
            let mut row: Vec<Rational> = etas.iter().map(|e| e.pow(p as i64)).collect();
            row.push(plan.observations[p - 1].clone());
            row
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m).find(|&i| !rows[i][col].is_zero()).ok_or(Error::Singular)?;
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for x in rows[col].iter_mut() {
            *x = &*x * &inv;
        }
        let prow = rows[col].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    let gammas: Vec<Rational> = rows.into_iter().map(|r| r[m].clone()).collect();
    for (p, z) in plan.observations.iter().enumerate().skip(m) {
        let predicted: Rational = etas
            .iter()
            .zip(&gammas)
            .map(|(e, g)| e.pow(p as i64 + 1) * g)
            .sum();
        if &predicted != z {
            return Err(Error::Inconsistent(format!(
                "observation {} is {z}, the fitted system predicts {predicted}",
                p + 1
            )));
        }
    }
    let z0 = gammas.iter().sum();
    Ok(Interpolation { etas, gammas, z0 })
}
