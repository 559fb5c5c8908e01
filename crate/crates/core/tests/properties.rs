mod common;

use hyperhom::dichotomy::classify;
use hyperhom::evaluator::{eval_bruteforce, eval_elimination, eval_tractable, Method};
use hyperhom::model::{
    components_over, degrees, domain_components, load_csp, load_hypergraph, load_symfunc, marginalize, prune_domain,
};
use hyperhom::{CspInstance, Rational, SymFunc};
use proptest::prelude::*;
use rand::Rng;

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..50).prop_map(|(n, d)| Rational::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_text_round_trip(x in rational()) {
        let back: Rational = x.to_string().parse().unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert!(back.denom() > &0.into());
    }

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a);
        }
    }

    #[test]
    fn marginals_compose(seed in any::<u64>(), q in 2usize..4, r in 3usize..5) {
        let mut rng = common::rng(seed);
        let g = common::random_symfunc(&mut rng, q, r, 0.3);
        for k in 1..r {
            let direct = marginalize(&g, k).unwrap();
            let stepwise = marginalize(&marginalize(&g, k + 1).unwrap(), k).unwrap();
            prop_assert_eq!(direct, stepwise);
        }
    }

    #[test]
    fn binary_support_stays_inside_components(seed in any::<u64>(), q in 2usize..6) {
        let mut rng = common::rng(seed);
        let g = common::random_symfunc(&mut rng, q, 3, 0.6);
        let pruned = prune_domain(&g).func;
        let comps = domain_components(&pruned).unwrap();
        let f2 = marginalize(&pruned, 2).unwrap();
        let which = |z: usize| comps.iter().position(|c| c.contains(&z));
        for (t, _) in f2.support() {
            prop_assert!(which(t[0]).is_some());
            prop_assert_eq!(which(t[0]), which(t[1]));
        }
        let covered: usize = comps.iter().map(Vec::len).sum();
        prop_assert_eq!(covered, components_over(&pruned, &hyperhom::model::active_elements(&pruned)).iter().map(Vec::len).sum::<usize>());
    }

    #[test]
    fn degree_sum_is_r_times_m(seed in any::<u64>(), n in 3usize..20, m in 0usize..30, r in 2usize..5) {
        let mut rng = common::rng(seed);
        let h = common::random_hypergraph(&mut rng, n.max(r), m, r);
        prop_assert_eq!(degrees(&h).iter().sum::<usize>(), r * h.num_edges());
    }

    #[test]
    fn classification_ignores_domain_labels(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::random_symfunc(&mut rng, 3, 3, 0.4);
        let p = common::shuffled(&mut rng, &g);
        prop_assert_eq!(classify(&g).unwrap().is_tractable(), classify(&p).unwrap().is_tractable());
        let h = common::random_hypergraph(&mut rng, 5, 4, 3);
        prop_assert_eq!(eval_bruteforce(&g, &h, u64::MAX).unwrap(), eval_bruteforce(&p, &h, u64::MAX).unwrap());
    }

    #[test]
    fn hard_witnesses_replay(seed in any::<u64>(), q in 2usize..5) {
        let mut rng = common::rng(seed);
        let g = common::random_symfunc(&mut rng, q, 3, 0.3);
        if let Some(w) = classify(&g).unwrap().witness() {
            prop_assert!(w.replay(&g).is_ok(), "{} does not replay", w);
        }
    }

    #[test]
    fn elimination_matches_brute_force(seed in any::<u64>(), q in 2usize..4) {
        let mut rng = common::rng(seed);
        let g = common::random_symfunc(&mut rng, q, 3, 0.3);
        let h = common::random_hypergraph(&mut rng, 7, 6, 3);
        prop_assert_eq!(eval_elimination(&g, &h, u64::MAX).unwrap(), eval_bruteforce(&g, &h, u64::MAX).unwrap());
    }

    #[test]
    fn structured_handles_csp_scopes(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let groups: [&[usize]; 3] = [&[2], &[3], &[2, 2]];
        let (group, s) = (groups[rng.gen_range(0..3)], rng.gen_range(1..=2));
        let fam = common::random_family(&mut rng, group, s, 3);
        let g = common::shuffled(&mut rng, &fam.build());
        let ts = classify(&g).unwrap().tractable().cloned().unwrap();
        let n = rng.gen_range(1..=5);
        let scopes = (0..rng.gen_range(0..=4))
            .map(|_| (0..3).map(|_| rng.gen_range(0..n)).collect())
            .collect();
        let eqs = (0..rng.gen_range(0..=2)).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let inst = CspInstance::new(n, scopes, eqs).unwrap();
        let fast = eval_tractable(&ts, &inst, Method::StructuredDp).unwrap().value;
        prop_assert_eq!(fast, eval_bruteforce(&g, &inst, u64::MAX).unwrap());
    }

    #[test]
    fn text_formats_round_trip(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::random_symfunc(&mut rng, 3, 3, 0.3);
        prop_assert_eq!(load_symfunc(&g.to_text()).unwrap(), g);
        let h = common::random_hypergraph(&mut rng, 6, 5, 3);
        prop_assert_eq!(load_hypergraph(&h.to_text()).unwrap(), h);
        let c = CspInstance::new(3, vec![vec![0, 0, 1], vec![2, 1, 2]], vec![(0, 2)]).unwrap();
        prop_assert_eq!(load_csp(&c.to_text()).unwrap(), c);
    }
}

#[test]
fn pruning_drops_dead_elements() {
    let g = SymFunc::from_weights(3, 3, [(vec![0, 0, 0], Rational::one()), (vec![0, 1, 2], Rational::zero())]).unwrap();
    let p = prune_domain(&g);
    assert_eq!(p.removed, vec![1, 2]);
}
