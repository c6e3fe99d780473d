//! Criterion benches comparing the rayon-parallel batch verification with
//! the sequential fallback, plus the two single-divide pipelines.

use criterion::{criterion_group, criterion_main, Criterion};
use divide_core::corpus::{self, GenParams};
use divide_core::hirasawa;
use divide_core::verify;
use std::hint::black_box;

fn bench_verify_batch(c: &mut Criterion) {
    let params = GenParams { max_crossings: 6, ..GenParams::default() };
    let batch = verify::random_batch(42, 16, &params);
    let mut group = c.benchmark_group("verify_batch_16");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            let results = verify::verify_batch(black_box(&batch), false);
            assert!(results.iter().all(|r| r.as_ref().map(|c| c.ok()).unwrap_or(false)));
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let results = verify::verify_batch_seq(black_box(&batch), false);
            assert!(results.iter().all(|r| r.as_ref().map(|c| c.ok()).unwrap_or(false)));
        })
    });
    group.finish();
}

fn bench_single_pipelines(c: &mut Criterion) {
    let d4 = corpus::standard_divide(4).unwrap();
    let mut group = c.benchmark_group("standard_divide_4");
    group.sample_size(10);
    group.bench_function("casson_formula", |b| {
        b.iter(|| black_box(&d4).casson_formula().unwrap())
    });
    group.bench_function("alexander_oracle", |b| {
        b.iter(|| hirasawa::casson_oracle(black_box(&d4)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_verify_batch, bench_single_pipelines);
criterion_main!(benches);
