#![allow(dead_code)]

use std::collections::BTreeSet;

use hyperhom::fixtures::Family;
use hyperhom::model::multisets;
use hyperhom::{Hypergraph, Rational, SymFunc};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `1 <= p <= max_num`, `1 <= q <= 3`.
pub fn positive_rational(rng: &mut impl Rng, max_num: i64) -> Rational {
    Rational::new(rng.gen_range(1..=max_num), rng.gen_range(1..=3i64))
}

/// Each sorted tuple is zero with probability `zero_prob`, else a small
/// positive rational.
pub fn random_symfunc(rng: &mut impl Rng, q: usize, r: usize, zero_prob: f64) -> SymFunc {
    let entries: Vec<(Vec<usize>, Rational)> = multisets(q, r)
        .filter_map(|t| {
            if rng.gen_bool(zero_prob) {
                None
            } else {
                Some((t, positive_rational(rng, 5)))
            }
        })
        .collect();
    SymFunc::from_weights(q, r, entries).unwrap()
}

/// Up to `m` distinct random r-edges on `n` vertices.
pub fn random_hypergraph(rng: &mut impl Rng, n: usize, m: usize, r: usize) -> Hypergraph {
    let verts: Vec<usize> = (0..n).collect();
    let mut edges = BTreeSet::new();
    let mut tries = 0;
    while edges.len() < m && n >= r && tries < 50 * (m + 1) {
        tries += 1;
        let mut e: Vec<usize> = verts.choose_multiple(rng, r).copied().collect();
        e.sort_unstable();
        edges.insert(e);
    }
    Hypergraph::new(n, edges.into_iter().collect()).unwrap()
}

/// Connected r-uniform hypergraph with exactly `m` distinct edges.
pub fn random_connected_hypergraph(rng: &mut impl Rng, n: usize, m: usize, r: usize) -> Hypergraph {
    assert!(n >= r);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = BTreeSet::new();
    let mut first = order[..r].to_vec();
    first.sort_unstable();
    edges.insert(first);
    for idx in r..n {
        let mut e: Vec<usize> = order[..idx].choose_multiple(rng, r - 1).copied().collect();
        e.push(order[idx]);
        e.sort_unstable();
        edges.insert(e);
    }
    assert!(edges.len() <= m, "m too small to connect {n} vertices");
    let verts: Vec<usize> = (0..n).collect();
    while edges.len() < m {
        let mut e: Vec<usize> = verts.choose_multiple(rng, r).copied().collect();
        e.sort_unstable();
        edges.insert(e);
    }
    Hypergraph::new(n, edges.into_iter().collect()).unwrap()
}

/// Product family over the group `Π Z_d` with random weights and target.
pub fn random_family(rng: &mut impl Rng, factors: &[usize], s: usize, r: usize) -> Family {
    Family {
        factors: factors.to_vec(),
        s,
        mu: (0..s).map(|_| positive_rational(rng, 6)).collect(),
        c: positive_rational(rng, 4),
        a: factors.iter().map(|&d| rng.gen_range(0..d)).collect(),
        r,
    }
}

/// `g` with its domain relabelled by a random permutation.
pub fn shuffled(rng: &mut impl Rng, g: &SymFunc) -> SymFunc {
    let mut perm: Vec<usize> = (0..g.q()).collect();
    perm.shuffle(rng);
    g.permute(&perm)
}
