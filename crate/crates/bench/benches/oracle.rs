use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ffpnt_core::ffpoly::{build_field, count_irreducible_bruteforce, RabinKernel};
use ffpnt_core::DEFAULT_ORACLE_BUDGET;

fn count(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_irreducible");
    group.sample_size(10);
    for (p, e, n) in [(2, 1, 16), (3, 1, 10), (2, 2, 8), (5, 1, 7), (3, 2, 5)] {
        let ctx = build_field(p, e).unwrap();
        let label = format!("q={}^{e},n={n}", p);
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| count_irreducible_bruteforce(&ctx, n, DEFAULT_ORACLE_BUDGET).unwrap())
        });
    }
    group.finish();
}

fn kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("rabin_kernel");
    for (p, e, n) in [(2, 1, 20), (7, 1, 6), (2, 3, 6)] {
        let ctx = build_field(p, e).unwrap();
        let q = ctx.order() as u32;
        let low: Vec<u32> = (0..n as u32).map(|i| (i * 7 + 3) % q).collect();
        group.bench_function(BenchmarkId::from_parameter(format!("q={p}^{e},n={n}")), |b| {
            let mut k = RabinKernel::new(&ctx, n);
            b.iter(|| k.is_irreducible(black_box(&low)))
        });
    }
    group.finish();
}

criterion_group!(benches, count, kernel);
criterion_main!(benches);
