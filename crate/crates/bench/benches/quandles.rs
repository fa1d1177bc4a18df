use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use quandle_core::catalog::entry;
use quandle_core::cocycle2::{connected_binary_extensions, f2_cocycles};
use quandle_core::enumerate::{connected_tables, EnumerateOptions};
use quandle_core::iso::canonical_form;

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("connected_tables");
    group.sample_size(10);
    let options = EnumerateOptions {
        jobs: Some(1),
        ..EnumerateOptions::default()
    };
    for n in [6, 8, 9, 10] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| connected_tables(n, &options).unwrap())
        });
    }
    group.finish();
}

fn canonical(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical_form");
    for name in ["Q8", "case1", "case7", "Q12"] {
        let q = &entry(name).unwrap().table;
        group.bench_function(name, |b| b.iter(|| canonical_form(black_box(q))));
    }
    group.finish();
}

fn inner_group(c: &mut Criterion) {
    let mut group = c.benchmark_group("inner_group_order");
    for name in ["Q10", "case1", "Q12"] {
        let q = &entry(name).unwrap().table;
        group.bench_function(name, |b| b.iter(|| black_box(q).inner_group().order()));
    }
    group.finish();
}

fn cohomology(c: &mut Criterion) {
    let q4 = &entry("Q4").unwrap().table;
    let q6 = &entry("Q6_2").unwrap().table;
    c.bench_function("f2_cocycles/Q6_2", |b| b.iter(|| f2_cocycles(black_box(q6))));
    c.bench_function("connected_binary_extensions/Q4", |b| {
        b.iter(|| connected_binary_extensions(black_box(q4)).unwrap())
    });
}

criterion_group!(benches, enumeration, canonical, inner_group, cohomology);
criterion_main!(benches);
