use std::hint::black_box;

use atanforge_core::registry::lookup;
use atanforge_core::{par, sweep, PrecisionContext};
use criterion::{criterion_group, criterion_main, Criterion};

fn axes(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

fn sweep_th1(c: &mut Criterion) {
    let ctx = PrecisionContext::default();
    let info = lookup("th1").unwrap();
    let points = sweep::expand(info, &axes(&[("n", "0:10"), ("m", "0:10"), ("alpha", "0.1,1,10")]), &ctx).unwrap();
    let mut group = c.benchmark_group("th1 sweep, 363 points, 60 digits");
    group.sample_size(10);
    group.bench_function("parallel", |b| b.iter(|| black_box(par::map(&points, |p| info.evaluate(p, &ctx)))));
    group.bench_function("sequential", |b| b.iter(|| black_box(par::map_sequential(&points, |p| info.evaluate(p, &ctx)))));
    group.finish();
}

fn sweep_dirichlet(c: &mut Criterion) {
    let ctx = PrecisionContext::default();
    let info = lookup("dirichlet").unwrap();
    let points = sweep::expand(info, &axes(&[("n", "8"), ("m", "8"), ("x", "1:8"), ("y", "1:8"), ("a", "0.5,1.6")]), &ctx).unwrap();
    let mut group = c.benchmark_group("dirichlet sweep, 128 points, 60 digits");
    group.sample_size(10);
    group.bench_function("parallel", |b| b.iter(|| black_box(par::map(&points, |p| info.evaluate(p, &ctx)))));
    group.bench_function("sequential", |b| b.iter(|| black_box(par::map_sequential(&points, |p| info.evaluate(p, &ctx)))));
    group.finish();
}

criterion_group!(benches, sweep_th1, sweep_dirichlet);
criterion_main!(benches);
