use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use indec_core::census::enumerate_fields;
use indec_core::exactalg::BiquadField;
use indec_core::indecenum::indecomposables;
use indec_core::indecenum::oracle::oracle_indecomposables;
use indec_core::par;

fn cone_method(c: &mut Criterion) {
    let mut group = c.benchmark_group("indecomposables");
    group.sample_size(10);
    for (a, b) in [(5u64, 17u64), (2, 13)] {
        let k = BiquadField::new(a, b).unwrap();
        group.bench_with_input(BenchmarkId::new("parallel", k.label()), &k, |bench, k| {
            bench.iter(|| indecomposables(k).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", k.label()), &k, |bench, k| {
            bench.iter(|| par::sequential(|| indecomposables(k).unwrap()))
        });
    }
    group.finish();
}

fn oracle_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    let k = BiquadField::new(5, 13).unwrap();
    let units = indecomposables(&k).unwrap().units;
    group.bench_function("parallel", |bench| {
        bench.iter(|| oracle_indecomposables(&k, &units, None, u64::MAX).unwrap())
    });
    group.bench_function("sequential", |bench| {
        bench.iter(|| {
            par::sequential(|| oracle_indecomposables(&k, &units, None, u64::MAX).unwrap())
        })
    });
    group.finish();
}

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_fields");
    group.sample_size(10);
    for (n, x) in [(2u32, 10_000_000u128), (3, 1_000_000_000_000)] {
        let id = format!("n={n} X={x}");
        group.bench_function(BenchmarkId::new("parallel", &id), |bench| {
            bench.iter(|| enumerate_fields(n, x).unwrap())
        });
        group.bench_function(BenchmarkId::new("sequential", &id), |bench| {
            bench.iter(|| par::sequential(|| enumerate_fields(n, x).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, cone_method, oracle_scan, census);
criterion_main!(benches);
