use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use tunnelbp::analytic::{bp_single_ris, bp_two_ris};
use tunnelbp::geometry::{oracle_bp, RisPlacement};
use tunnelbp::montecarlo::estimate_bp;
use tunnelbp::placement::{even_placement, optimize_single_ris};
use tunnelbp::{McConfig, ObstacleModel};
use tunnelbp_bench::{case_fixtures, symmetric};

fn closed_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("single_ris");
    for (case, g, z) in case_fixtures() {
        group.bench_with_input(BenchmarkId::new("closed_form", case), &z, |b, &z| {
            b.iter(|| bp_single_ris(black_box(&g), black_box(z)).unwrap())
        });
        let ris = RisPlacement::single(z).unwrap();
        group.bench_with_input(BenchmarkId::new("oracle", case), &ris, |b, ris| {
            b.iter(|| oracle_bp(black_box(&g), black_box(ris)))
        });
    }
    group.finish();

    let g = symmetric();
    c.bench_function("two_ris/closed_form", |b| {
        b.iter(|| bp_two_ris(black_box(&g), black_box(0.0), black_box(100.0)).unwrap())
    });
}

fn monte_carlo(c: &mut Criterion) {
    const N: u64 = 100_000;
    let g = symmetric();
    let mut group = c.benchmark_group("monte_carlo");
    group.throughput(Throughput::Elements(N));
    group.sample_size(20);
    for n_ris in [1, 4, 8] {
        let ris = even_placement(n_ris, 12.5, 0.0).unwrap();
        group.bench_with_input(BenchmarkId::new("uniform", n_ris), &ris, |b, ris| {
            b.iter(|| {
                let cfg = McConfig {
                    n_samples: N,
                    seed: 1,
                };
                estimate_bp(&g, ris, &ObstacleModel::UniformSingle, cfg).unwrap()
            })
        });
    }
    let ris = RisPlacement::single(100.0).unwrap();
    group.bench_function("iid_5", |b| {
        let model = ObstacleModel::iid(5).unwrap();
        b.iter(|| {
            estimate_bp(
                &g,
                &ris,
                &model,
                McConfig {
                    n_samples: N,
                    seed: 1,
                },
            )
            .unwrap()
        })
    });
    group.finish();
}

fn placement(c: &mut Criterion) {
    let g = symmetric();
    c.bench_function("optimize_single_ris", |b| {
        b.iter(|| optimize_single_ris(black_box(&g), 120.0, 1.0).unwrap())
    });
}

criterion_group!(benches, closed_form, monte_carlo, placement);
criterion_main!(benches);
