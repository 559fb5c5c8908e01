//! Smith normal form over the integers with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::IntMatrix;

/// `u * m * v == s` with `u`, `v` unimodular and `s` diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub s: IntMatrix,
    pub rank: usize,
}

impl SnfResult {
    /// The nonzero invariant factors s_1 | s_2 | ... | s_rank.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Diagonal entry `i`, zero past the rank or the matrix bounds.
    pub fn diag(&self, i: usize) -> BigInt {
        if i < self.s.rows().min(self.s.cols()) {
            self.s[(i, i)].clone()
        } else {
            BigInt::zero()
        }
    }
}

// Smallest |entry| in the trailing block, ties by lowest (row, col).
fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some(b) if x.abs() >= a[b].abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn snf(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;

    while t < rows.min(cols) {
        let Some((pi, pj)) = find_pivot(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let mut dirty = false;
        for i in t + 1..rows {
            if a[(i, t)].is_zero() {
                continue;
            }
            let q = -a[(i, t)].div_floor(&a[(t, t)]);
            a.add_row_multiple(i, t, &q);
            u.add_row_multiple(i, t, &q);
            dirty |= !a[(i, t)].is_zero();
        }
        for j in t + 1..cols {
            if a[(t, j)].is_zero() {
                continue;
            }
            let q = -a[(t, j)].div_floor(&a[(t, t)]);
            a.add_col_multiple(j, t, &q);
            v.add_col_multiple(j, t, &q);
            dirty |= !a[(t, j)].is_zero();
        }
        if dirty {
            // A smaller remainder appeared; repivot on it.
            continue;
        }

        let p = a[(t, t)].clone();
        let offender = (t + 1..rows)
            .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
        if let Some(i) = offender {
            a.add_row_multiple(t, i, &BigInt::from(1));
            u.add_row_multiple(t, i, &BigInt::from(1));
            continue;
        }

        if p.is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    SnfResult { u, v, s: a, rank: t }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(m: &IntMatrix) -> SnfResult {
        let r = snf(m);
        assert_eq!(&(&r.u * m) * &r.v, r.s, "U*M*V != S for {m:?}");
        assert!(r.s.is_diagonal());
        assert!(r.u.determinant().abs().is_one());
        assert!(r.v.determinant().abs().is_one());
        let f = r.invariant_factors();
        assert!(f.iter().all(|x| x.is_positive()));
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        for i in r.rank..m.rows().min(m.cols()) {
            assert!(r.s[(i, i)].is_zero());
        }
        r
    }

    #[test]
    fn one_by_one() {
        let r = check(&IntMatrix::from_rows(&[vec![2]]));
        assert_eq!(r.s, IntMatrix::from_rows(&[vec![2]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn unit_pivot_row() {
        let r = check(&IntMatrix::from_rows(&[vec![1, 1]]));
        assert_eq!(r.s, IntMatrix::from_rows(&[vec![1, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn divisibility_chain_enforced() {
        let r = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(r.s, IntMatrix::from_rows(&[vec![1, 0], vec![0, 6]]));
    }

    #[test]
    fn empty_and_zero() {
        let r = check(&IntMatrix::zeros(0, 3));
        assert_eq!(r.rank, 0);
        let r = check(&IntMatrix::zeros(2, 2));
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn negative_entries() {
        let r = check(&IntMatrix::from_rows(&[vec![-4, 6], vec![10, -14], vec![2, 2]]));
        assert_eq!(r.invariant_factors(), vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn deterministic() {
        let m = IntMatrix::from_rows(&[vec![3, 5, 7], vec![2, -4, 6], vec![9, 1, 1]]);
        assert_eq!(snf(&m), snf(&m));
    }
}
