//! Criterion benchmarks for the hot paths: special-function evaluation,
//! density/CDF evaluation in the series and tail regimes, variate
//! generation, path simulation, and the KS statistic.
//!
//! Run with `cargo bench -p mllp-bench`.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use mllp_core::analytics::{mllp_cdf, mllp_density, mllp_levy_density};
use mllp_core::process::{simulate_mllp_path, TimeGrid};
use mllp_core::specfun::mittag_leffler;
use mllp_core::verify::ks_two_sample;
use mllp_core::{ProcessParams, RandomSource, SeriesConfig};

fn bench_specfun(c: &mut Criterion) {
    let cfg = SeriesConfig::default();
    c.bench_function("mittag_leffler alpha=0.7 z=-3", |b| {
        b.iter(|| mittag_leffler(black_box(0.7), 1.0, black_box(-3.0), &cfg).unwrap())
    });
    c.bench_function("mittag_leffler alpha=0.3 z=-40 (expansion)", |b| {
        b.iter(|| mittag_leffler(black_box(0.3), 1.0, black_box(-40.0), &cfg).unwrap())
    });
}

fn bench_density(c: &mut Criterion) {
    let cfg = SeriesConfig::default();
    let p = ProcessParams::new(0.5, 1.0).unwrap();
    c.bench_function("mllp_density series x=1", |b| {
        b.iter(|| mllp_density(black_box(1.0), 1.0, &p, &cfg).unwrap())
    });
    c.bench_function("mllp_density tail x=50", |b| {
        b.iter(|| mllp_density(black_box(50.0), 1.0, &p, &cfg).unwrap())
    });
    c.bench_function("mllp_levy_density x=1", |b| {
        b.iter(|| mllp_levy_density(black_box(1.0), &p, &cfg).unwrap())
    });
    c.bench_function("mllp_cdf x=2", |b| {
        b.iter(|| mllp_cdf(black_box(2.0), 1.0, &p, &cfg).unwrap())
    });
}

fn bench_variates(c: &mut Criterion) {
    c.bench_function("ml_variate alpha=0.5", |b| {
        let mut src = RandomSource::from_seed(1);
        b.iter(|| src.ml_variate(black_box(0.5), 1.0).unwrap())
    });
    c.bench_function("stable_variate alpha=0.7", |b| {
        let mut src = RandomSource::from_seed(2);
        b.iter(|| src.stable_variate(black_box(0.7)).unwrap())
    });
    c.bench_function("gamma_variate shape=0.01", |b| {
        let mut src = RandomSource::from_seed(3);
        b.iter(|| src.gamma_variate(1.0, black_box(0.01)).unwrap())
    });
    c.bench_function("tempered_stable_variate alpha=0.5 mu=0.5", |b| {
        let mut src = RandomSource::from_seed(4);
        b.iter(|| {
            src.tempered_stable_variate(0.5, 0.5, black_box(1.0))
                .unwrap()
        })
    });
}

fn bench_paths(c: &mut Criterion) {
    let p = ProcessParams::new(0.7, 1.0).unwrap();
    let grid = TimeGrid::new(1.0, 1000).unwrap();
    c.bench_function("simulate_mllp_path 1000 steps", |b| {
        let mut src = RandomSource::from_seed(5);
        b.iter(|| simulate_mllp_path(&mut src, &p, &grid).unwrap())
    });
}

fn bench_ks(c: &mut Criterion) {
    let mut src = RandomSource::from_seed(6);
    let a: Vec<f64> = (0..10_000).map(|_| src.uniform01()).collect();
    let b2: Vec<f64> = (0..10_000).map(|_| src.uniform01()).collect();
    c.bench_function("ks_two_sample n=10^4", |b| {
        b.iter(|| ks_two_sample("bench", black_box(&a), black_box(&b2), 0.01, 0).unwrap())
    });
}

criterion_group!(
    benches,
    bench_specfun,
    bench_density,
    bench_variates,
    bench_paths,
    bench_ks
);
criterion_main!(benches);
