use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use karaflat_bench::operands;
use karaflat_core::{Algorithm, MulCounter};

fn multiply(c: &mut Criterion) {
    let mut group = c.benchmark_group("multiply");
    group.sample_size(10);
    for d in [4u32, 6, 8, 10] {
        let n = 1usize << d;
        let (a, b) = operands(n);
        for algo in Algorithm::ALL {
            group.bench_with_input(BenchmarkId::new(algo.name(), n), &n, |bench, _| {
                bench.iter(|| {
                    let mut counter = MulCounter::new();
                    black_box(algo.multiply(black_box(&a), black_box(&b), &mut counter).unwrap())
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, multiply);
criterion_main!(benches);
