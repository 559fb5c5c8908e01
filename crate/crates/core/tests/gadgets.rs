mod common;

use hyperhom::dichotomy::classify;
use hyperhom::evaluator::{eval_bruteforce, eval_elimination};
use hyperhom::fixtures;
use hyperhom::gadgets::{
    component_homs, component_separator, eliminator_scale, equality_eliminator, recover_via_interpolation,
    separator_eta, support_indicator, InterpolationPlan,
};
use hyperhom::{CspInstance, Rational};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn separator_recovers_every_component(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let groups: [&[usize]; 3] = [&[1], &[2], &[3]];
        let parts: Vec<_> = (0..2)
            .map(|_| {
                let (group, s) = (groups[rng.gen_range(0..3)], rng.gen_range(1..=2));
                common::random_family(&mut rng, group, s, 3).build()
            })
            .collect();
        let g = fixtures::direct_sum(&parts);
        let ts = classify(&g).unwrap().tractable().cloned().unwrap();
        prop_assert_eq!(ts.components.len(), 2);
        let n = rng.gen_range(3..=4);
        let h = common::random_connected_hypergraph(&mut rng, n, n - 2, 3);
        let etas: Vec<Rational> = ts.components.iter().map(|c| separator_eta(&c.factor, &h)).collect();
        let observations = (1..=2)
            .map(|p| eval_elimination(&g, &component_separator(&h, p).unwrap().instance, u64::MAX).unwrap())
            .collect();
        let rec = recover_via_interpolation(&InterpolationPlan { etas: etas.clone(), observations }).unwrap();
        let homs = component_homs(&ts, &h);
        for eta in &etas {
            let merged: Rational = etas
                .iter()
                .zip(&homs)
                .filter(|(e, _)| *e == eta)
                .map(|(_, h)| Rational::from(h.clone()))
                .sum();
            let at = rec.etas.iter().position(|e| e == eta).unwrap();
            prop_assert_eq!(&rec.gammas[at], &merged);
        }
        let total: Rational = homs.into_iter().map(Rational::from).sum();
        prop_assert_eq!(rec.z0, total);
    }

    #[test]
    fn eliminator_identity_on_tractable_support(seed in any::<u64>(), p in 1usize..=3) {
        let mut rng = common::rng(seed);
        let groups: [&[usize]; 3] = [&[2], &[3], &[2, 2]];
        let group = groups[rng.gen_range(0..3)];
        let fam = common::random_family(&mut rng, group, 1, 3);
        let s = support_indicator(&fam.build());
        let scopes = vec![vec![0, 1, 2], vec![1, 2, 3]];
        let eq = (rng.gen_range(0..4), rng.gen_range(0..4));
        let inst = CspInstance::new(4, scopes, vec![eq]).unwrap();
        let big = equality_eliminator(&inst, p).unwrap();
        let lhs = eval_elimination(&s, &big.instance, u64::MAX).unwrap();
        let rhs = eval_bruteforce(&s, &inst, u64::MAX).unwrap()
            * Rational::from(eliminator_scale(s.q(), 3, p, 1));
        prop_assert_eq!(lhs, rhs);
    }
}
