use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use smallspan::equivalence::{bucket_key, equivalent};
use smallspan::grow::{grow_all, grow_level, GrowConfig};
use smallspan::ring::Ring;
use smallspan::{char_poly, spectral_verdict, EmbeddingCheck};
use smallspan_bench::{octagon_pair, path, PATH_SIZES};

fn charpoly(c: &mut Criterion) {
    let mut group = c.benchmark_group("char_poly");
    for n in PATH_SIZES {
        let g = path(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| char_poly(black_box(g)))
        });
    }
    group.finish();
}

fn verdict(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectral_verdict");
    for n in PATH_SIZES {
        let g = path(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| spectral_verdict(black_box(g), EmbeddingCheck::Both).unwrap())
        });
    }
    group.finish();
}

fn equivalence(c: &mut Criterion) {
    let (g, h) = octagon_pair();
    c.bench_function("bucket_key/frakC8", |b| b.iter(|| bucket_key(black_box(&g))));
    c.bench_function("equivalent/frakC8", |b| {
        b.iter(|| equivalent(black_box(&g), black_box(&h)))
    });
}

fn grow(c: &mut Criterion) {
    let cfg = GrowConfig::new(Ring::new(-7).unwrap(), 4);
    let lists = grow_all(&cfg).unwrap();
    let four = lists.level(4).unwrap().clone();
    let mut next = cfg.clone();
    next.max_n = 5;
    next.workers = 1;
    let mut group = c.benchmark_group("grow");
    group.sample_size(10);
    group.bench_function("level_5/d-7", |b| b.iter(|| grow_level(black_box(&four), &next).unwrap()));
    group.finish();
}

criterion_group!(benches, charpoly, verdict, equivalence, grow);
criterion_main!(benches);
