use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use karaflat_bench::prefixes;
use karaflat_core::series::{convolve_series_flat, convolve_series_partial};
use karaflat_core::MulCounter;

fn series(c: &mut Criterion) {
    let mut group = c.benchmark_group("series");
    group.sample_size(10);
    for order in [16usize, 100, 256] {
        let (f, g) = prefixes(order);
        group.bench_with_input(BenchmarkId::new("partial", order), &order, |bench, &order| {
            bench.iter(|| convolve_series_partial(black_box(&f), black_box(&g), order, &mut MulCounter::new()).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("flat", order), &order, |bench, &order| {
            bench.iter(|| convolve_series_flat(black_box(&f), black_box(&g), order, &mut MulCounter::new()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, series);
criterion_main!(benches);
