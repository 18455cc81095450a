use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use uqgl21::scan::{scan_sequential, ScanSpec};
use uqgl21::{DeformationParameter, Normalization};

fn spec() -> ScanSpec {
    let m13: Vec<i64> = (0..=6).collect();
    let m33: Vec<f64> = (-3..=3).map(|x| x as f64 + 0.5).collect();
    let q = [
        DeformationParameter::generic(0.5).unwrap(),
        DeformationParameter::generic(1.7).unwrap(),
    ];
    ScanSpec::grid(&m13, &[0], &m33, &q, &[Normalization::default()], 1e-9)
}

fn bench_scan(c: &mut Criterion) {
    let spec = spec();
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(|| scan_sequential(black_box(&spec))));
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| uqgl21::scan::scan_parallel(black_box(&spec)))
    });
    group.finish();
}

criterion_group!(benches, bench_scan);
criterion_main!(benches);
