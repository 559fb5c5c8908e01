//! Named weight functions used by tests, the self-test and the benches.

use crate::exact::Rational;
use crate::model::SymFunc;

fn indicator(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// Weight 1 everywhere.
pub fn all_ones(q: usize, r: usize) -> SymFunc {
    SymFunc::from_fn(q, r, |_| Rational::one())
}

/// `q = 2, r = 3`, weight 1 iff the sum is even.
pub fn parity() -> SymFunc {
    sum_mod(2, 3, 0)
}

/// Weight 1 iff `z_1 + ... + z_r = a (mod m)`, over `q = m`.
pub fn sum_mod(m: usize, r: usize, a: usize) -> SymFunc {
    SymFunc::from_fn(m, r, |z| indicator(z.iter().sum::<usize>() % m == a % m))
}

/// `q = 2, r = 3`, weights 1, 2, 4, 8 on `000, 001, 011, 111`.
pub fn geometric() -> SymFunc {
    SymFunc::from_fn(2, 3, |z| Rational::from(1u64 << z.iter().sum::<usize>()))
}

/// `q = 2, r = 3`, weight 1 except on `000`.
pub fn not_all_zero() -> SymFunc {
    SymFunc::from_fn(2, 3, |z| indicator(z.iter().any(|&x| x != 0)))
}

/// Element `2α + i` of `Z_2 x [2]`; weight `3^#(i = 1)` when the α-sum is even.
pub fn mixed() -> SymFunc {
    SymFunc::from_fn(4, 3, |z| {
        if z.iter().map(|x| x / 2).sum::<usize>() % 2 != 0 {
            return Rational::zero();
        }
        Rational::from(3u64.pow(z.iter().filter(|&&x| x % 2 == 1).count() as u32))
    })
}

/// [`mixed`] with element 3 deleted.
pub fn mixed_restricted() -> SymFunc {
    mixed().restrict(&[0, 1, 2])
}

/// [`mixed`] with the weight at `{0, 0, 1}` changed from 3 to 5.
pub fn mixed_perturbed() -> SymFunc {
    let mut g = mixed();
    g.set(&[0, 0, 1], Rational::from(5i64));
    g
}

/// Lines of the Fano plane.
pub const FANO_BLOCKS: [[usize; 3]; 7] =
    [[0, 1, 3], [1, 2, 4], [2, 3, 5], [3, 4, 6], [0, 4, 5], [1, 5, 6], [0, 2, 6]];

/// Steiner quasigroup of STS(7) as a symmetric ternary relation: blocks and
/// the diagonal `(x, x, x)`.
pub fn sts7() -> SymFunc {
    SymFunc::from_fn(7, 3, |z| {
        let diag = z[0] == z[1] && z[1] == z[2];
        let block = FANO_BLOCKS.iter().any(|b| {
            let mut b = b.to_vec();
            b.sort_unstable();
            b == z
        });
        indicator(diag || block)
    })
}

/// Parity on `{0, 1}` next to all-ones on `{2, 3}`, zero across.
pub fn parity_plus_ones() -> SymFunc {
    direct_sum(&[parity(), all_ones(2, 3)])
}

/// Block-diagonal sum: part `t` lives on its own shifted copy of the domain.
pub fn direct_sum(parts: &[SymFunc]) -> SymFunc {
    let r = parts.first().map_or(3, SymFunc::arity);
    assert!(parts.iter().all(|p| p.arity() == r), "parts must share the arity");
    let q: usize = parts.iter().map(SymFunc::q).sum();
    let mut g = SymFunc::zero(q, r);
    let mut offset = 0;
    for p in parts {
        for (key, w) in p.support() {
            let shifted: Vec<usize> = key.iter().map(|z| z + offset).collect();
            g.set(&shifted, w.clone());
        }
        offset += p.q();
    }
    g
}

/// A tractable function built from its structure: group `Z_{d_1} x ... x Z_{d_t}`,
/// `s` indices with ratios `mu`, constant `c`, target `a`.
///
/// Element `α * s + i` where `α` is the mixed-radix index of the group element
/// (first factor most significant); weight `c * Π mu[i_j]` when `Σ α_j = a`.
#[derive(Debug, Clone)]
pub struct Family {
    pub factors: Vec<usize>,
    pub s: usize,
    pub mu: Vec<Rational>,
    pub c: Rational,
    pub a: Vec<usize>,
    pub r: usize,
}

impl Family {
    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn q(&self) -> usize {
        self.order() * self.s
    }

    /// Residue tuple of group index `alpha`.
    pub fn coords(&self, alpha: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        let mut rest = alpha;
        for (t, &d) in self.factors.iter().enumerate().rev() {
            out[t] = rest % d;
            rest /= d;
        }
        out
    }

    pub fn index_of(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&x, &d)| acc * d + x % d)
    }

    pub fn build(&self) -> SymFunc {
        assert_eq!(self.mu.len(), self.s);
        assert_eq!(self.a.len(), self.factors.len());
        SymFunc::from_fn(self.q(), self.r, |z| {
            let mut sum = vec![0usize; self.factors.len()];
            let mut w = self.c.clone();
            for &e in z {
                let (alpha, i) = (e / self.s, e % self.s);
                for (acc, x) in sum.iter_mut().zip(self.coords(alpha)) {
                    *acc += x;
                }
                w *= &self.mu[i];
            }
            let hit = sum
                .iter()
                .zip(&self.factors)
                .zip(&self.a)
                .all(|((&x, &d), &a)| x % d == a % d);
            if hit {
                w
            } else {
                Rational::zero()
            }
        })
    }
}
