use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use secrograph::lattice::{
    build_lattice_graph, crossing_probability, gen_config, CrossDirection, EdgeRule, Placement,
};
use secrograph::SeedSpec;

fn bench_gen_config(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice_gen_config");
    for n in [64usize, 256] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| {
                gen_config(n, 0.5, Placement::EdgeMidpoints, SeedSpec::new(1, 0)).unwrap()
            })
        });
    }
    group.finish();
}

fn bench_crossing(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice_crossing");
    for n in [64usize, 256] {
        let cfg = gen_config(n, 0.5, Placement::EdgeMidpoints, SeedSpec::new(2, 0)).unwrap();
        let g = build_lattice_graph(&cfg, EdgeRule::Analogy);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| crossing_probability(black_box(&g), CrossDirection::Horizontal))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_gen_config, bench_crossing);
criterion_main!(benches);
