use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::exact::{snf, IntMatrix, SnfResult};
use crate::model::{to_csp, Instance};

use super::group::prime_powers;
use super::CyclicDecomposition;

/// Above this many matrix entries, counting switches from the integer Smith
/// form to per-prime modular elimination on sparse rows.
pub const SNF_ENTRY_LIMIT: usize = 10_000;

/// Number of `x in (Z_d)^n` with `M x = c (mod d)`, via the Smith normal form.
pub fn count_solutions_mod(m: &IntMatrix, c: &[BigInt], d: u64) -> BigUint {
    assert!(d >= 1, "modulus must be positive");
    assert_eq!(c.len(), m.rows());
    count_solutions_from_snf(&snf(m), c, d)
}

/// As [`count_solutions_mod`] with a precomputed `U M V = S`.
pub fn count_solutions_from_snf(f: &SnfResult, c: &[BigInt], d: u64) -> BigUint {
    let (m, n) = (f.s.rows(), f.s.cols());
    let dd = BigInt::from(d);
    let cp = f.u.mul_vec(c);
    let mut count = BigUint::one();
    for (i, ci) in cp.iter().enumerate() {
        if i < m.min(n) {
            let gi = f.diag(i).gcd(&dd);
            let gi = if gi.is_zero() { dd.clone() } else { gi };
            if !ci.mod_floor(&gi).is_zero() {
                return BigUint::zero();
            }
            count *= gi.to_biguint().expect("gcd is positive");
        } else if !ci.mod_floor(&dd).is_zero() {
            return BigUint::zero();
        }
    }
    if n > m {
        count *= BigUint::from(d).pow((n - m) as u32);
    }
    count
}

/// A linear system given by sparse rows `(column, coefficient)` over `n` unknowns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseSystem {
    pub n: usize,
    pub rows: Vec<Vec<(usize, u64)>>,
}

impl SparseSystem {
    /// Occurrence rows of an instance; equalities are ignored.
    pub fn occurrences<I: Instance + ?Sized>(inst: &I) -> Self {
        let rows = inst
            .scopes()
            .iter()
            .map(|s| {
                let mut row: Vec<(usize, u64)> = Vec::with_capacity(s.len());
                let mut vs = s.clone();
                vs.sort_unstable();
                for v in vs {
                    match row.last_mut() {
                        Some((w, k)) if *w == v => *k += 1,
                        _ => row.push((v, 1)),
                    }
                }
                row
            })
            .collect();
        SparseSystem {
            n: inst.num_vars(),
            rows,
        }
    }

    pub fn to_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows.len(), self.n);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, k) in row {
                m[(i, j)] += BigInt::from(k);
            }
        }
        m
    }
}

/// Counts solutions modulo `d` by splitting `d` into prime powers: sparse
/// Gaussian elimination for primes, dense local elimination for higher powers.
pub fn count_solutions_sparse(sys: &SparseSystem, c: &[u64], d: u64) -> BigUint {
    assert!(d >= 1, "modulus must be positive");
    assert_eq!(c.len(), sys.rows.len());
    let mut count = BigUint::one();
    for (p, e) in prime_powers(d) {
        let pe = p.pow(e);
        let log = if e == 1 {
            if p == 2 {
                rank_gf2(sys, c).map(|rank| (sys.n - rank) as u64)
            } else {
                rank_gfp(sys, c, p).map(|rank| (sys.n - rank) as u64)
            }
        } else {
            log_count_local(sys, c, p, e)
        };
        match log {
            Some(k) => count *= BigUint::from(p).pow(k as u32),
            None => return BigUint::zero(),
        }
        debug_assert!(pe > 1);
    }
    count
}

// Incremental reduced row echelon form over GF(2) on bitsets; the right-hand
// side is bit `n`. Every stored row is zero at every other stored pivot.
fn rank_gf2(sys: &SparseSystem, c: &[u64]) -> Option<usize> {
    let n = sys.n;
    let words = (n + 1).div_ceil(64);
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut pivot_row = vec![usize::MAX; n];
    for (row, &ci) in sys.rows.iter().zip(c) {
        let mut dense = vec![0u64; words];
        for &(j, k) in row {
            if k % 2 == 1 {
                dense[j / 64] ^= 1 << (j % 64);
            }
        }
        if ci % 2 == 1 {
            dense[n / 64] ^= 1 << (n % 64);
        }
        for &(j, k) in row {
            if k % 2 == 1 && pivot_row[j] != usize::MAX {
                let b = &basis[pivot_row[j]];
                for (x, y) in dense.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
        }
        let lead = (0..words).find_map(|w| {
            let mut bits = dense[w];
            if w == n / 64 {
                bits &= (1u64 << (n % 64)) - 1;
            }
            (bits != 0).then(|| w * 64 + bits.trailing_zeros() as usize)
        });
        let Some(pc) = lead.filter(|&j| j < n) else {
            if dense[n / 64] >> (n % 64) & 1 == 1 {
                return None;
            }
            continue;
        };
        for b in basis.iter_mut() {
            if b[pc / 64] >> (pc % 64) & 1 == 1 {
                for (x, y) in b.iter_mut().zip(&dense) {
                    *x ^= y;
                }
            }
        }
        pivot_row[pc] = basis.len();
        basis.push(dense);
    }
    Some(basis.len())
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let (g, x, _) = egcd(a as i128, m as i128);
    debug_assert_eq!(g, 1);
    x.rem_euclid(m as i128) as u64
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

// Same scheme as `rank_gf2` over GF(p) with dense rows; column `n` is the
// right-hand side and pivots are normalized to 1.
fn rank_gfp(sys: &SparseSystem, c: &[u64], p: u64) -> Option<usize> {
    let n = sys.n;
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut pivot_row = vec![usize::MAX; n];
    for (row, &ci) in sys.rows.iter().zip(c) {
        let mut dense = vec![0u64; n + 1];
        for &(j, k) in row {
            dense[j] = (dense[j] + k) % p;
        }
        dense[n] = ci % p;
        for &(j, _) in row {
            let f = dense[j];
            if f != 0 && pivot_row[j] != usize::MAX {
                let b = &basis[pivot_row[j]];
                for (x, y) in dense.iter_mut().zip(b) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        let Some(pc) = (0..n).find(|&j| dense[j] != 0) else {
            if dense[n] != 0 {
                return None;
            }
            continue;
        };
        let inv = inv_mod(dense[pc], p);
        for x in dense.iter_mut() {
            *x = *x * inv % p;
        }
        for b in basis.iter_mut() {
            let f = b[pc];
            if f != 0 {
                for (x, y) in b.iter_mut().zip(&dense) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        pivot_row[pc] = basis.len();
        basis.push(dense);
    }
    Some(basis.len())
}

fn valuation(x: u64, p: u64) -> u32 {
    let mut v = 0;
    let mut x = x;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

// Diagonalization over the local ring Z/p^e with minimal-valuation pivots.
// Returns log_p of the solution count, or None when inconsistent.
fn log_count_local(sys: &SparseSystem, c: &[u64], p: u64, e: u32) -> Option<u64> {
    let q = p.pow(e);
    let (m, n) = (sys.rows.len(), sys.n);
    let mut a = vec![vec![0u64; n]; m];
    for (i, row) in sys.rows.iter().enumerate() {
        for &(j, k) in row {
            a[i][j] = (a[i][j] + k) % q;
        }
    }
    let mut rhs: Vec<u64> = c.iter().map(|x| x % q).collect();
    let mut logs = 0u64;
    let mut t = 0;
    while t < m.min(n) {
        let mut best: Option<(u32, usize, usize)> = None;
        'scan: for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let v = valuation(x, p);
                    if best.is_none_or(|b| v < b.0) {
                        best = Some((v, i, j));
                        if v == 0 {
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        a.swap(t, pi);
        rhs.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let pv = p.pow(v);
        let unit = inv_mod(a[t][t] / pv, q);
        for x in a[t].iter_mut() {
            *x = ((*x as u128 * unit as u128) % q as u128) as u64;
        }
        rhs[t] = ((rhs[t] as u128 * unit as u128) % q as u128) as u64;
        let pivot_row = a[t].clone();
        for i in t + 1..m {
            let f = a[i][t] / pv;
            if f == 0 {
                continue;
            }
            let neg = q - f % q;
            for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                *x = ((*x as u128 + neg as u128 * *y as u128) % q as u128) as u64;
            }
            rhs[i] = ((rhs[i] as u128 + neg as u128 * rhs[t] as u128) % q as u128) as u64;
        }
        // column operations only change variables, never the right-hand side
        for x in a[t].iter_mut().skip(t + 1) {
            *x = 0;
        }
        if !rhs[t].is_multiple_of(pv) {
            return None;
        }
        logs += v as u64;
        t += 1;
    }
    if rhs[t..].iter().any(|&x| x != 0) {
        return None;
    }
    Some(logs + e as u64 * (n - t) as u64)
}

/// `M x = b` over a finite Abelian group, with `M` the occurrence matrix of an
/// instance and every target equal to one group element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupLinearSystem {
    pub matrix: IntMatrix,
    pub targets: Vec<usize>,
}

impl GroupLinearSystem {
    pub fn new<I: Instance + ?Sized>(inst: &I, a: usize) -> Self {
        let matrix = SparseSystem::occurrences(inst).to_matrix();
        let targets = vec![a; matrix.rows()];
        GroupLinearSystem { matrix, targets }
    }

    /// Solutions in `A^n`, one cyclic factor at a time.
    pub fn count(&self, dec: &CyclicDecomposition) -> BigUint {
        let f = snf(&self.matrix);
        let mut total = BigUint::one();
        for (i, &d) in dec.factors().iter().enumerate() {
            let c: Vec<BigInt> = self.targets.iter().map(|&b| BigInt::from(dec.iso(b)[i])).collect();
            total *= count_solutions_from_snf(&f, &c, d);
        }
        total
    }
}

/// `|{σ : V -> A : every scope sums (with multiplicity) to a}|`.
///
/// Equalities are contracted first. Small systems share one integer Smith
/// form across all cyclic factors; large ones go through [`count_solutions_sparse`].
pub fn count_homs<I: Instance + ?Sized>(dec: &CyclicDecomposition, a: usize, inst: &I) -> BigUint {
    let sys = if inst.equalities().is_empty() {
        SparseSystem::occurrences(inst)
    } else {
        SparseSystem::occurrences(&to_csp(inst).contract_equalities())
    };
    let target = dec.iso(a);
    if sys.rows.len().saturating_mul(sys.n) <= SNF_ENTRY_LIMIT {
        let f = snf(&sys.to_matrix());
        let mut total = BigUint::one();
        for (&d, &b) in dec.factors().iter().zip(target) {
            let c = vec![BigInt::from(b); sys.rows.len()];
            total *= count_solutions_from_snf(&f, &c, d);
            if total.is_zero() {
                break;
            }
        }
        total
    } else {
        let mut total = BigUint::one();
        for (&d, &b) in dec.factors().iter().zip(target) {
            let c = vec![b; sys.rows.len()];
            total *= count_solutions_sparse(&sys, &c, d);
            if total.is_zero() {
                break;
            }
        }
        total
    }
}

/// Exhaustive count of `x in (Z_d)^n` with `M x = c (mod d)`.
pub fn count_solutions_enumerate(m: &IntMatrix, c: &[BigInt], d: u64) -> BigUint {
    let n = m.cols();
    let dd = BigInt::from(d);
    let mut x = vec![BigInt::zero(); n];
    let mut count = BigUint::zero();
    loop {
        let mx = m.mul_vec(&x);
        if mx.iter().zip(c).all(|(a, b)| (a - b).mod_floor(&dd).is_zero()) {
            count += 1u32;
        }
        let Some(pos) = (0..n).rev().find(|&i| x[i].to_u64().unwrap() + 1 < d) else {
            break;
        };
        x[pos] += 1;
        for v in &mut x[pos + 1..] {
            *v = BigInt::zero();
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{decompose, AbelianGroup};
    use crate::model::Hypergraph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn count_examples() {
        let m = IntMatrix::from_rows(&[vec![1i64, 1]]);
        assert_eq!(count_solutions_mod(&m, &big(&[0]), 2), BigUint::from(2u32));
        let m = IntMatrix::from_rows(&[vec![0i64]]);
        assert_eq!(count_solutions_mod(&m, &big(&[1]), 2), BigUint::zero());
        let m = IntMatrix::from_rows(&[vec![1i64, 1, 1]]);
        assert_eq!(count_solutions_mod(&m, &big(&[0]), 4), BigUint::from(16u32));
        assert_eq!(count_solutions_enumerate(&m, &big(&[0]), 4), BigUint::from(16u32));
    }

    #[test]
    fn hom_count_examples() {
        let z2 = decompose(&AbelianGroup::cyclic(2)).unwrap();
        let edge = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(count_homs(&z2, 0, &edge), BigUint::from(4u32));
        let two = Hypergraph::new(4, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        assert_eq!(count_homs(&z2, 0, &two), BigUint::from(4u32));

        let add = (0..4).map(|x| (0..4).map(|y| (x + y + 3) % 4).collect()).collect();
        let shifted = decompose(&AbelianGroup::new(add, 1).unwrap()).unwrap();
        assert_eq!(count_homs(&shifted, 2, &edge), BigUint::from(16u32));
    }

    #[test]
    fn sparse_paths_agree_with_snf() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let m = rng.gen_range(0..6);
            let n = rng.gen_range(1..6);
            let d = rng.gen_range(1..=12u64);
            let rows: Vec<Vec<(usize, u64)>> = (0..m)
                .map(|_| (0..n).filter_map(|j| {
                    let k = rng.gen_range(0..4u64);
                    (k > 0).then_some((j, k))
                }).collect())
                .collect();
            let sys = SparseSystem { n, rows };
            let c: Vec<u64> = (0..m).map(|_| rng.gen_range(0..d)).collect();
            let cb: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
            let want = count_solutions_mod(&sys.to_matrix(), &cb, d);
            assert_eq!(count_solutions_sparse(&sys, &c, d), want, "{sys:?} {c:?} {d}");
        }
    }

    #[test]
    fn group_system_matches_count_homs() {
        let z4 = decompose(&AbelianGroup::cyclic(4)).unwrap();
        let h = Hypergraph::new(4, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let sys = GroupLinearSystem::new(&h, 1);
        assert_eq!(sys.count(&z4), count_homs(&z4, 1, &h));
    }
}
