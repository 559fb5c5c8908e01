use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::model::{to_csp, Instance, SymFunc};

use super::brute::{check_arity, ScaledTable};

struct Factor {
    vars: Vec<usize>,
    table: Vec<BigUint>,
}

/// Exact `Z^g` by variable elimination with a min-degree order. Independent
/// of any structure of `g`; `cap` bounds the size of every intermediate table.
pub fn eval_elimination<I: Instance + ?Sized>(g: &SymFunc, inst: &I, cap: u64) -> Result<Rational> {
    check_arity(g, inst)?;
    let csp = to_csp(inst).contract_equalities();
    let q = g.q();
    let n = csp.n();
    let mut in_scope = vec![false; n];
    for s in csp.scopes() {
        for &v in s {
            in_scope[v] = true;
        }
    }
    let free = in_scope.iter().filter(|&&b| !b).count();
    let free_factor = Rational::from(Pow::pow(BigUint::from(q), free));
    if csp.scopes().is_empty() {
        return Ok(free_factor);
    }
    let scaled = ScaledTable::new(g)?;
    let size_of = |k: usize| -> Result<usize> {
        let size = (q as u128).pow(k as u32);
        if size > cap as u128 {
            return Err(Error::CapExceeded {
                needed: size.to_string(),
                cap,
            });
        }
        Ok(size as usize)
    };
    let mut factors: Vec<Factor> = Vec::with_capacity(csp.scopes().len());
    for s in csp.scopes() {
        let vars: Vec<usize> = s.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let size = size_of(vars.len())?;
        let mut table = Vec::with_capacity(size);
        let mut assign = vec![0usize; vars.len()];
        for code in 0..size {
            decode(code, q, &mut assign);
            let idx = scaled.index(s.iter().map(|v| assign[vars.binary_search(v).unwrap()]));
            table.push(scaled.table[idx].clone());
        }
        factors.push(Factor { vars, table });
    }
    let mut remaining: BTreeSet<usize> = (0..n).filter(|&v| in_scope[v]).collect();
    while !remaining.is_empty() {
        let (v, union) = remaining
            .iter()
            .map(|&v| {
                let union: BTreeSet<usize> = factors
                    .iter()
                    .filter(|f| f.vars.binary_search(&v).is_ok())
                    .flat_map(|f| f.vars.iter().copied())
                    .collect();
                (v, union)
            })
            .min_by_key(|(v, u)| (u.len(), *v))
            .expect("remaining is nonempty");
        remaining.remove(&v);
        let union: Vec<usize> = union.into_iter().collect();
        let (touching, rest): (Vec<Factor>, Vec<Factor>) =
            factors.into_iter().partition(|f| f.vars.binary_search(&v).is_ok());
        factors = rest;
        let size = size_of(union.len())?;
        let out_vars: Vec<usize> = union.iter().copied().filter(|&u| u != v).collect();
        let vpos = union.iter().position(|&u| u == v).unwrap();
        let positions: Vec<Vec<usize>> = touching
            .iter()
            .map(|f| f.vars.iter().map(|x| union.binary_search(x).unwrap()).collect())
            .collect();
        let mut out = vec![BigUint::zero(); size / q.max(1)];
        let mut assign = vec![0usize; union.len()];
        for code in 0..size {
            decode(code, q, &mut assign);
            let mut p = BigUint::one();
            for (f, pos) in touching.iter().zip(&positions) {
                let idx = pos.iter().fold(0, |acc, &k| acc * q + assign[k]);
                let w = &f.table[idx];
                if w.is_zero() {
                    p = BigUint::zero();
                    break;
                }
                p *= w;
            }
            if !p.is_zero() {
                let idx = (0..union.len())
                    .filter(|&k| k != vpos)
                    .fold(0, |acc, k| acc * q + assign[k]);
                out[idx] += p;
            }
        }
        factors.push(Factor {
            vars: out_vars,
            table: out,
        });
    }
    let total = factors.into_iter().fold(BigUint::one(), |acc, f| acc * &f.table[0]);
    Ok(scaled.unscale(total, csp.scopes().len()) * free_factor)
}

fn decode(mut code: usize, q: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = code % q;
        code /= q;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluator::{eval_bruteforce, DEFAULT_BRUTE_CAP};
    use crate::fixtures;
    use crate::model::{CspInstance, Hypergraph};

    #[test]
    fn agrees_with_brute_force() {
        let instances = [
            CspInstance::from(&Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap()),
            CspInstance::from(&Hypergraph::new(6, vec![vec![0, 1, 2], vec![2, 3, 4], vec![0, 4, 5]]).unwrap()),
            CspInstance::new(4, vec![vec![0, 0, 1], vec![1, 2, 3], vec![1, 2, 3]], vec![(0, 3)]).unwrap(),
            CspInstance::new(5, vec![vec![0, 1, 2]], vec![]).unwrap(),
        ];
        for g in [fixtures::geometric(), fixtures::mixed(), fixtures::not_all_zero(), fixtures::sts7()] {
            for inst in &instances {
                assert_eq!(
                    eval_elimination(&g, inst, DEFAULT_BRUTE_CAP).unwrap(),
                    eval_bruteforce(&g, inst, DEFAULT_BRUTE_CAP).unwrap()
                );
            }
        }
    }
}
