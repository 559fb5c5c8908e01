use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::model::{to_csp, CspInstance, Instance, SymFunc};

/// Default guard on `q^n` for exhaustive evaluation.
pub const DEFAULT_BRUTE_CAP: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_BRUTE_CAP`].
pub const BRUTE_CAP_ENV: &str = "HYPERHOM_BRUTE_CAP";

/// The cap from the environment, falling back to the default.
pub fn brute_cap_from_env() -> u64 {
    std::env::var(BRUTE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BRUTE_CAP)
}

/// Integer form of `g`: `g = table / denom`, dense over ordered tuples.
pub(crate) struct ScaledTable {
    pub q: usize,
    pub denom: BigUint,
    pub table: Vec<BigUint>,
}

const DENSE_LIMIT: usize = 1 << 24;

impl ScaledTable {
    pub fn new(g: &SymFunc) -> Result<Self> {
        let (q, r) = (g.q(), g.arity());
        let size = (q as u128).pow(r as u32);
        if size > DENSE_LIMIT as u128 {
            return Err(Error::InvalidArgument(format!("dense table of {size} entries is too large")));
        }
        let denom = g
            .support()
            .fold(<BigUint as One>::one(), |acc, (_, w)| acc.lcm(w.denom().magnitude()));
        let d = Rational::from(denom.clone());
        let table = g
            .dense()
            .into_iter()
            .map(|w| (&w * &d).to_biguint().expect("scaled weights are integers"))
            .collect();
        Ok(ScaledTable { q, denom, table })
    }

    pub fn index(&self, tuple: impl IntoIterator<Item = usize>) -> usize {
        tuple.into_iter().fold(0, |acc, z| acc * self.q + z)
    }

    /// `total / denom^m`.
    pub fn unscale(&self, total: BigUint, m: usize) -> Rational {
        Rational::from_parts(total.into(), Pow::pow(&self.denom, m).into())
    }
}

pub(crate) fn check_arity<I: Instance + ?Sized>(g: &SymFunc, inst: &I) -> Result<()> {
    if let Some(s) = inst.scopes().iter().find(|s| s.len() != g.arity()) {
        return Err(Error::InvalidArgument(format!(
            "scope {s:?} has {} variables but g has arity {}",
            s.len(),
            g.arity()
        )));
    }
    Ok(())
}

/// Order in which scopes complete early: start at a highest-degree vertex,
/// then always take the vertex sharing the most scopes with those placed.
fn vertex_order(csp: &CspInstance, used: &[usize]) -> Vec<usize> {
    let n = csp.n();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, s) in csp.scopes().iter().enumerate() {
        for &v in s {
            adj[v].push(k);
        }
    }
    let mut placed = vec![false; n];
    let mut scope_hits = vec![0usize; csp.scopes().len()];
    let mut order = Vec::with_capacity(used.len());
    while order.len() < used.len() {
        let next = used
            .iter()
            .copied()
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let shared: usize = adj[v].iter().map(|&k| scope_hits[k]).sum();
                (shared, adj[v].len(), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex remains");
        placed[next] = true;
        for &k in &adj[next] {
            scope_hits[k] += 1;
        }
        order.push(next);
    }
    order
}

trait Acc: Clone + Sized {
    fn from_big(x: &BigUint) -> Option<Self>;
    fn one() -> Self;
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn times(&self, w: &Self) -> Option<Self>;
    fn plus(&mut self, x: &Self) -> Option<()>;
    fn into_big(self) -> BigUint;
}

impl Acc for u128 {
    fn from_big(x: &BigUint) -> Option<Self> {
        x.to_u128()
    }
    fn one() -> Self {
        1
    }
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn times(&self, w: &Self) -> Option<Self> {
        self.checked_mul(*w)
    }
    fn plus(&mut self, x: &Self) -> Option<()> {
        *self = self.checked_add(*x)?;
        Some(())
    }
    fn into_big(self) -> BigUint {
        BigUint::from(self)
    }
}

impl Acc for BigUint {
    fn from_big(x: &BigUint) -> Option<Self> {
        Some(x.clone())
    }
    fn one() -> Self {
        One::one()
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn times(&self, w: &Self) -> Option<Self> {
        Some(self * w)
    }
    fn plus(&mut self, x: &Self) -> Option<()> {
        *self += x;
        Some(())
    }
    fn into_big(self) -> BigUint {
        self
    }
}

struct Search<'a, T> {
    table: &'a [T],
    q: usize,
    order: &'a [usize],
    // scopes whose last variable in `order` sits at each level, as order positions
    closing: Vec<Vec<Vec<usize>>>,
    value: Vec<usize>,
}

impl<T: Acc> Search<'_, T> {
    fn run(&mut self, level: usize, prod: T, total: &mut T) -> Option<()> {
        if level == self.order.len() {
            return total.plus(&prod);
        }
        for z in 0..self.q {
            self.value[level] = z;
            let mut p = prod.clone();
            for scope in &self.closing[level] {
                let idx = scope.iter().fold(0, |acc, &pos| acc * self.q + self.value[pos]);
                p = p.times(&self.table[idx])?;
                if p.is_zero() {
                    break;
                }
            }
            if !p.is_zero() {
                self.run(level + 1, p, total)?;
            }
        }
        Some(())
    }
}

/// `Σ_σ Π_scopes g(σ(scope))` by exhaustive search with zero pruning.
///
/// Equalities are contracted first; variables in no scope contribute a factor
/// `q` each and are not enumerated. Refuses when `q^(enumerated variables)`
/// exceeds `cap`.
pub fn eval_bruteforce<I: Instance + ?Sized>(g: &SymFunc, inst: &I, cap: u64) -> Result<Rational> {
    check_arity(g, inst)?;
    let csp = to_csp(inst).contract_equalities();
    let n = csp.n();
    let mut in_scope = vec![false; n];
    for s in csp.scopes() {
        for &v in s {
            in_scope[v] = true;
        }
    }
    let used: Vec<usize> = (0..n).filter(|&v| in_scope[v]).collect();
    let free = n - used.len();
    let q = g.q();
    let needed = Pow::pow(BigUint::from(q), used.len());
    if needed > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            needed: needed.to_string(),
            cap,
        });
    }
    let free_factor = Rational::from(Pow::pow(BigUint::from(q), free));
    if used.is_empty() {
        // only scope-free instances reach here
        return Ok(free_factor);
    }
    let scaled = ScaledTable::new(g)?;
    let order = vertex_order(&csp, &used);
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut closing: Vec<Vec<Vec<usize>>> = vec![Vec::new(); order.len()];
    for s in csp.scopes() {
        let ps: Vec<usize> = s.iter().map(|&v| pos[v]).collect();
        let last = *ps.iter().max().expect("scopes are nonempty");
        closing[last].push(ps);
    }
    let m = csp.scopes().len();
    let total = match run_search::<u128>(&scaled, &order, &closing) {
        Some(t) => t,
        None => run_search::<BigUint>(&scaled, &order, &closing).expect("big integers do not overflow"),
    };
    Ok(scaled.unscale(total, m) * free_factor)
}

fn run_search<T: Acc>(scaled: &ScaledTable, order: &[usize], closing: &[Vec<Vec<usize>>]) -> Option<BigUint> {
    let table: Vec<T> = scaled.table.iter().map(T::from_big).collect::<Option<_>>()?;
    let mut search = Search {
        table: &table,
        q: scaled.q,
        order,
        closing: closing.to_vec(),
        value: vec![0; order.len()],
    };
    let mut total = T::zero();
    search.run(0, T::one(), &mut total)?;
    Some(total.into_big())
}
