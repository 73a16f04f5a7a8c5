//! Sequential versus parallel execution of the three data-parallel kernels.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ggp_core::enumeration::enumerate_small_spectra_with;
use ggp_core::{
    find_preimage, sample_projection_experiment, Execution, Lattice, SampleConfig, SearchConfig, SignedSpectrum,
    ValueWindow, DEFAULT_TOL,
};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn spectrum(values: &[f64], signs: &[i64]) -> SignedSpectrum {
    SignedSpectrum::from_ints(values, signs).unwrap()
}

fn sampling(c: &mut Criterion) {
    let big = spectrum(&[4.0, 2.0, 1.0, -1.0], &[1, -1, 1, -1]);
    let mut group = c.benchmark_group("sample_projection_1000");
    group.sample_size(20);
    for (name, execution) in MODES {
        let cfg = SampleConfig { trials: 1000, seed: 1, execution, ..SampleConfig::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| sample_projection_experiment(black_box(&big), &cfg).unwrap())
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let big = spectrum(&[5.0, 3.0, 1.0, -1.0, -3.0, -5.0], &[1, -1, 1, -1, 1, -1]);
    let window = ValueWindow::new(-12.0, 12.0).unwrap();
    let mut group = c.benchmark_group("enumerate_u33");
    group.sample_size(20);
    for (name, execution) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| enumerate_small_spectra_with(black_box(&big), Lattice::Integer, &window, DEFAULT_TOL, execution).unwrap())
        });
    }
    group.finish();
}

fn preimage(c: &mut Criterion) {
    let big = spectrum(&[3.0, 1.0, 0.0], &[1, 1, -1]);
    // A non-member runs every restart to completion.
    let target = spectrum(&[2.0, 0.5], &[1, 1]);
    let mut group = c.benchmark_group("find_preimage_not_found");
    group.sample_size(10);
    for (name, execution) in MODES {
        let cfg = SearchConfig { restarts: 8, max_iters: 1000, execution, ..SearchConfig::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| find_preimage(black_box(&big), &target, &cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, sampling, enumeration, preimage);
criterion_main!(benches);
