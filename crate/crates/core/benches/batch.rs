//! Batch classification and directive sweeps, data-parallel against a plain
//! loop. With `--no-default-features` both sides run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use svm_cosim::host::{batch_classify, run_software_reference};
use svm_cosim::model_io::make_synthetic_with;
use svm_cosim::par::*;
use svm_cosim::synth::{explore, Regime};
use svm_cosim::CalibrationSet;

fn classify(c: &mut Criterion) {
    let mut group = c.benchmark_group("batch_classify");
    group.sample_size(20);
    for (s, n) in [(61usize, 4096usize), (346, 2048)] {
        let (model, data) = make_synthetic_with(s, 27, 7, n).unwrap();
        group.bench_with_input(BenchmarkId::new("par_iter", format!("S{s}x{n}")), &(), |b, _| {
            b.iter(|| batch_classify(black_box(&model), black_box(&data), 0.0).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential_loop", format!("S{s}x{n}")), &(), |b, _| {
            b.iter(|| {
                data.instances
                    .iter()
                    .filter(|(x, label)| run_software_reference(&model, x, 0.0).unwrap().label == *label)
                    .count()
            })
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let cal = CalibrationSet::shipped();
    let mut group = c.benchmark_group("explore_sweep");
    let sizes: Vec<usize> = (1..=2000).step_by(7).collect();
    let front_size = |s: usize| explore(&cal, s, 27, Regime::MHZ_100, None).unwrap().len();
    group.bench_function("par_iter", |b| {
        b.iter(|| sizes.par_iter().map(|&s| front_size(s)).collect::<Vec<_>>())
    });
    group.bench_function("sequential_loop", |b| b.iter(|| sizes.iter().map(|&s| front_size(s)).collect::<Vec<_>>()));
    group.finish();
}

criterion_group!(benches, classify, sweep);
criterion_main!(benches);
