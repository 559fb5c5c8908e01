//! Seeded workloads shared by the benchmarks.

use std::collections::BTreeSet;

use hyperhom::fixtures::Family;
use hyperhom::{Hypergraph, IntMatrix, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected r-uniform hypergraph with `m` distinct edges: a random spanning
/// chain of edges, then uniform extra edges.
pub fn connected_hypergraph(rng: &mut impl Rng, n: usize, m: usize, r: usize) -> Hypergraph {
    assert!(n >= r && m > n - r);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = BTreeSet::new();
    let sorted = |mut e: Vec<usize>| {
        e.sort_unstable();
        e
    };
    edges.insert(sorted(order[..r].to_vec()));
    for idx in r..n {
        let mut e: Vec<usize> = order[..idx].choose_multiple(rng, r - 1).copied().collect();
        e.push(order[idx]);
        edges.insert(sorted(e));
    }
    let verts: Vec<usize> = (0..n).collect();
    while edges.len() < m {
        edges.insert(sorted(verts.choose_multiple(rng, r).copied().collect()));
    }
    Hypergraph::new(n, edges.into_iter().collect()).expect("distinct sorted edges")
}

/// Tractable ternary function over `Z_d x [s]` with weights `1..=s`.
pub fn family(d: usize, s: usize) -> Family {
    Family {
        factors: vec![d],
        s,
        mu: (1..=s as i64).map(Rational::from).collect(),
        c: Rational::one(),
        a: vec![0],
        r: 3,
    }
}

pub fn int_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntMatrix::from_rows(&data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperhom::model::instance_components;

    #[test]
    fn generated_hypergraphs_are_connected() {
        let mut rng = rng(3);
        for (n, m) in [(3, 1), (10, 8), (50, 200)] {
            let h = connected_hypergraph(&mut rng, n, m, 3);
            assert_eq!(h.num_edges(), m);
            let parts = instance_components(&h);
            assert_eq!((parts.parts.len(), parts.isolated.len()), (1, 0));
        }
    }
}
