use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite Abelian group given by its Cayley table on `0..order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    add: Vec<Vec<usize>>,
    zero: usize,
    neg: Vec<usize>,
}

impl AbelianGroup {
    /// Validates the table exhaustively; any failed axiom is an internal error.
    pub fn new(add: Vec<Vec<usize>>, zero: usize) -> Result<Self> {
        let n = add.len();
        if n == 0 || zero >= n {
            return Err(Error::Internal("empty group or zero out of range".into()));
        }
        if add.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::Internal("Cayley table is not closed".into()));
        }
        let mut neg = vec![usize::MAX; n];
        for (x, slot) in neg.iter_mut().enumerate() {
            if add[zero][x] != x {
                return Err(Error::Internal(format!("{zero} is not an identity at {x}")));
            }
            match (0..n).find(|&y| add[x][y] == zero) {
                Some(y) => *slot = y,
                None => return Err(Error::Internal(format!("{x} has no inverse"))),
            }
        }
        let g = AbelianGroup { add, zero, neg };
        if let Some((x, y)) = g.commutativity_failure() {
            return Err(Error::Internal(format!("{x} + {y} != {y} + {x}")));
        }
        if let Some((x, y, z)) = g.associativity_failure() {
            return Err(Error::Internal(format!("associativity fails at ({x}, {y}, {z})")));
        }
        Ok(g)
    }

    /// `Z_{d_1} x ... x Z_{d_t}` on mixed-radix codes, first factor most significant.
    pub fn product(factors: &[usize]) -> Self {
        let n: usize = factors.iter().product();
        let code = |v: &[usize]| v.iter().zip(factors).fold(0, |acc, (&x, &d)| acc * d + x % d);
        let decode = |mut x: usize| {
            let mut v = vec![0; factors.len()];
            for (t, &d) in factors.iter().enumerate().rev() {
                v[t] = x % d;
                x /= d;
            }
            v
        };
        let add = (0..n)
            .map(|x| {
                let a = decode(x);
                (0..n)
                    .map(|y| {
                        let b = decode(y);
                        let s: Vec<usize> = a.iter().zip(&b).map(|(p, q)| p + q).collect();
                        code(&s)
                    })
                    .collect()
            })
            .collect();
        AbelianGroup::new(add, 0).expect("direct products of cyclic groups are Abelian")
    }

    pub fn cyclic(n: usize) -> Self {
        Self::product(&[n])
    }

    pub fn order(&self) -> usize {
        self.add.len()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x][y]
    }

    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add[x][self.neg[y]]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn neg_table(&self) -> &[usize] {
        &self.neg
    }

    /// `k * x`.
    pub fn times(&self, k: u64, x: usize) -> usize {
        let mut acc = self.zero;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add[acc][base];
            }
            base = self.add[base][base];
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut k = 1;
        let mut y = x;
        while y != self.zero {
            y = self.add[y][x];
            k += 1;
        }
        k
    }

    fn commutativity_failure(&self) -> Option<(usize, usize)> {
        let n = self.order();
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.add[x][y] != self.add[y][x])
    }

    /// First `(x, y, z)` in lexicographic order with `(x + y) + z != x + (y + z)`.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        for x in 0..n {
            for y in 0..n {
                let xy = self.add[x][y];
                for z in 0..n {
                    if self.add[xy][z] != self.add[x][self.add[y][z]] {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }
}

/// Invariant-factor form `Z_{d_1} x ... x Z_{d_t}` with `d_i | d_{i+1}` and an
/// explicit isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicDecomposition {
    factors: Vec<u64>,
    generators: Vec<usize>,
    iso: Vec<Vec<u64>>,
    #[serde(skip)]
    iso_inv: BTreeMap<Vec<u64>, usize>,
}

impl CyclicDecomposition {
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// `generators[i]` has order `factors[i]`.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn iso(&self, x: usize) -> &[u64] {
        &self.iso[x]
    }

    pub fn iso_table(&self) -> &[Vec<u64>] {
        &self.iso
    }

    pub fn iso_inv(&self, coords: &[u64]) -> Option<usize> {
        self.iso_inv.get(coords).copied()
    }

    /// The same factors refined into prime powers, ascending.
    pub fn prime_power_factors(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .factors
            .iter()
            .flat_map(|&d| prime_powers(d).into_iter().map(|(p, e)| p.pow(e)))
            .collect();
        out.sort_unstable();
        out
    }
}

/// `(p, e)` pairs of the prime factorization, ascending in `p`.
pub(crate) fn prime_powers(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Invariant factors read off from element-order counts, then generators found
/// by backtracking so that each new cyclic factor meets the previous span trivially.
pub fn decompose(g: &AbelianGroup) -> Result<CyclicDecomposition> {
    AbelianGroup::new(g.add.clone(), g.zero)?;
    let n = g.order();
    let mut per_prime: Vec<Vec<u32>> = Vec::new();
    for (p, e) in prime_powers(n as u64) {
        // n_k = log_p |{x : p^k x = 0}|
        let mut logs = vec![0u32];
        let mut k = 1;
        loop {
            let pk = p.pow(k);
            let killed = (0..n).filter(|&x| g.times(pk, x) == g.zero).count() as u64;
            let mut log = 0;
            let mut c = killed;
            while c.is_multiple_of(p) && c > 1 {
                c /= p;
                log += 1;
            }
            logs.push(log);
            if log == e {
                break;
            }
            k += 1;
        }
        // at_least[k] = number of cyclic p-factors with exponent >= k
        let at_least: Vec<u32> = (1..logs.len()).map(|k| logs[k] - logs[k - 1]).collect();
        let mut exps = Vec::new();
        for k in 0..at_least.len() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            for _ in 0..at_least[k] - next {
                exps.push(k as u32 + 1);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push(exps);
    }
    let primes: Vec<u64> = prime_powers(n as u64).into_iter().map(|(p, _)| p).collect();
    let t = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    // descending: factor j takes the j-th largest exponent of every prime
    let mut desc: Vec<u64> = (0..t)
        .map(|j| {
            primes
                .iter()
                .zip(&per_prime)
                .map(|(&p, exps)| exps.get(j).map_or(1, |&e| p.pow(e)))
                .product()
        })
        .collect();
    if desc.iter().product::<u64>() != n as u64 {
        return Err(Error::Internal("invariant factors do not multiply to the order".into()));
    }
    let mut span = vec![false; n];
    span[g.zero] = true;
    let mut gens = Vec::with_capacity(t);
    if !find_generators(g, &desc, &mut span, &mut gens) {
        return Err(Error::Internal("no generating set matches the invariant factors".into()));
    }
    desc.reverse();
    gens.reverse();

    let mut iso = vec![Vec::new(); n];
    let mut filled = vec![false; n];
    let mut iso_inv = BTreeMap::new();
    let mut coords = vec![0u64; t];
    loop {
        let x = coords
            .iter()
            .zip(&gens)
            .fold(g.zero, |acc, (&c, &gen)| g.add(acc, g.times(c, gen)));
        if std::mem::replace(&mut filled[x], true) {
            return Err(Error::Internal("decomposition map is not injective".into()));
        }
        iso[x] = coords.clone();
        iso_inv.insert(coords.clone(), x);
        let Some(pos) = (0..t).rev().find(|&i| coords[i] + 1 < desc[i]) else {
            break;
        };
        coords[pos] += 1;
        for c in &mut coords[pos + 1..] {
            *c = 0;
        }
    }
    let dec = CyclicDecomposition {
        factors: desc,
        generators: gens,
        iso,
        iso_inv,
    };
    for x in 0..n {
        for y in 0..n {
            let lhs = dec.iso(g.add(x, y));
            let ok = lhs
                .iter()
                .zip(dec.iso(x).iter().zip(dec.iso(y)))
                .zip(&dec.factors)
                .all(|((&s, (&a, &b)), &d)| s == (a + b) % d);
            if !ok {
                return Err(Error::Internal(format!("decomposition map not additive at ({x}, {y})")));
            }
        }
    }
    Ok(dec)
}

fn find_generators(g: &AbelianGroup, desc: &[u64], span: &mut Vec<bool>, gens: &mut Vec<usize>) -> bool {
    let Some(&d) = desc.get(gens.len()) else {
        return true;
    };
    let n = g.order();
    for x in 0..n {
        if g.element_order(x) != d {
            continue;
        }
        // <x> must meet the current span only in zero
        if (1..d).any(|k| span[g.times(k, x)]) {
            continue;
        }
        let saved = span.clone();
        let members: Vec<usize> = (0..n).filter(|&y| saved[y]).collect();
        for k in 0..d {
            let kx = g.times(k, x);
            for &y in &members {
                span[g.add(y, kx)] = true;
            }
        }
        gens.push(x);
        if find_generators(g, desc, span, gens) {
            return true;
        }
        gens.pop();
        *span = saved;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shifted_z4() -> AbelianGroup {
        // x +' y = x + y - 1, identity 1
        let add = (0..4).map(|x| (0..4).map(|y| (x + y + 3) % 4).collect()).collect();
        AbelianGroup::new(add, 1).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(decompose(&AbelianGroup::cyclic(2)).unwrap().factors(), &[2]);
        assert_eq!(decompose(&AbelianGroup::product(&[2, 2])).unwrap().factors(), &[2, 2]);
        let g = shifted_z4();
        let mut orders: Vec<u64> = (0..4).map(|x| g.element_order(x)).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 4, 4]);
        let dec = decompose(&g).unwrap();
        assert_eq!(dec.factors(), &[4]);
        assert_eq!(dec.iso(1), &[0]);
    }

    #[test]
    fn invariant_factor_chains() {
        for (input, want) in [
            (vec![6], vec![6]),
            (vec![2, 3], vec![6]),
            (vec![4, 2], vec![2, 4]),
            (vec![2, 2, 2], vec![2, 2, 2]),
            (vec![3, 9], vec![3, 9]),
            (vec![2, 6], vec![2, 6]),
            (vec![1], vec![]),
        ] {
            let dec = decompose(&AbelianGroup::product(&input)).unwrap();
            assert_eq!(dec.factors(), want.as_slice(), "{input:?}");
            assert_eq!(dec.prime_power_factors().iter().product::<u64>(), input.iter().product::<usize>() as u64);
        }
    }

    #[test]
    fn rejects_non_groups() {
        let not_assoc = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 0]];
        assert!(AbelianGroup::new(not_assoc, 0).is_err());
        let no_identity = vec![vec![1, 0], vec![0, 1]];
        assert!(AbelianGroup::new(no_identity, 0).is_err());
    }
}
