use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperhom::dichotomy::classify;
use hyperhom::evaluator::{eval_bruteforce, eval_tractable, lambda_monomial_dp, Method};
use hyperhom::fixtures;
use hyperhom_bench::{connected_hypergraph, family, rng};

fn structured(c: &mut Criterion) {
    let ts = classify(&fixtures::mixed()).unwrap().tractable().cloned().unwrap();
    let mut group = c.benchmark_group("structured_mixed");
    group.sample_size(10);
    for n in [100, 1000] {
        let h = connected_hypergraph(&mut rng(n as u64), n, 10 * n, 3);
        group.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| {
            b.iter(|| eval_tractable(&ts, black_box(h), Method::Structured).unwrap())
        });
    }
    group.finish();
}

fn lambda_dp(c: &mut Criterion) {
    let mut group = c.benchmark_group("lambda_dp");
    group.sample_size(10);
    for s in [1, 2, 3] {
        let ts = classify(&family(3, s).build()).unwrap().tractable().cloned().unwrap();
        let fs = ts.components[0].factor.clone();
        let h = connected_hypergraph(&mut rng(7), 100, 200, 3);
        group.bench_with_input(BenchmarkId::new("s", s), &h, |b, h| {
            b.iter(|| lambda_monomial_dp(&fs, black_box(h)).unwrap())
        });
    }
    group.finish();
}

fn brute(c: &mut Criterion) {
    let g = fixtures::mixed();
    let h = connected_hypergraph(&mut rng(11), 8, 10, 3);
    c.bench_function("brute_mixed_n8", |b| b.iter(|| eval_bruteforce(&g, black_box(&h), u64::MAX).unwrap()));
}

fn classification(c: &mut Criterion) {
    for (name, g) in [("mixed", fixtures::mixed()), ("sts7", fixtures::sts7()), ("z2xz2_s3", {
        let mut f = family(2, 3);
        f.factors = vec![2, 2];
        f.a = vec![0, 0];
        f.build()
    })] {
        c.bench_function(&format!("classify_{name}"), |b| b.iter(|| classify(black_box(&g)).unwrap()));
    }
}

criterion_group!(benches, structured, lambda_dp, brute, classification);
criterion_main!(benches);
