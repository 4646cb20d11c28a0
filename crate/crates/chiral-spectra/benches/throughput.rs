//! Throughput benches for the data-parallel stages.
//!
//! Run twice to compare the rayon fan-out against the sequential fallback:
//!
//! ```text
//! cargo bench -p chiral-spectra
//! cargo bench -p chiral-spectra --no-default-features
//! ```
//!
//! Both builds produce identical results; only wall-clock changes.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use chiral_spectra::graph::builtin;
use chiral_spectra::spectral::verify_mapping;
use chiral_spectra::walks::{
    correlated_sweep, grover_positive_support, mko_sample_grid, MkoParams,
};
use chiral_spectra::zeta::nb_walk_counts;

fn momentum_grid(c: &mut Criterion) {
    let params = MkoParams::new(0.5, 0.0, std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_4)
        .unwrap();
    c.bench_function("momentum_grid/4096", |b| {
        b.iter(|| black_box(mko_sample_grid(&params, 4096)));
    });
}

fn parameter_sweep(c: &mut Criterion) {
    let g = builtin("k4").unwrap();
    let ps: Vec<f64> = (0..16).map(|i| 0.02 + i as f64 * 0.06).collect();
    c.bench_function("parameter_sweep/correlated-k4-16pts", |b| {
        b.iter(|| black_box(correlated_sweep(&g, &ps, 1e-8).unwrap()));
    });
}

fn walk_counts(c: &mut Criterion) {
    let g = builtin("k33").unwrap();
    c.bench_function("walk_counts/k33-L10", |b| {
        b.iter(|| black_box(nb_walk_counts(&g, 10).unwrap()));
    });
}

fn spectrum_pipeline(c: &mut Criterion) {
    let pair = grover_positive_support(&builtin("petersen").unwrap()).unwrap();
    c.bench_function("spectrum_pipeline/grover-petersen", |b| {
        b.iter(|| black_box(verify_mapping(&pair, "grover", 1e-8).unwrap()));
    });
}

criterion_group!(benches, momentum_grid, parameter_sweep, walk_counts, spectrum_pipeline);
criterion_main!(benches);
