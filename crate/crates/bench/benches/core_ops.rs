use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use isoclinic_bench::fixture;
use isoclinic_core::aut::automorphism_group;
use isoclinic_core::isoclinism::find_n_isoclinism;
use isoclinic_core::series::CentralSeries;
use isoclinic_core::subgroup::Subgroup;
use isoclinic_core::{hom_group, quotient};

fn bench_automorphism_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("automorphism_group");
    for name in ["Q8", "D8", "C2xC2xC2xC2", "Heis3"] {
        let g = fixture(name);
        group.bench_function(name, |b| {
            b.iter(|| automorphism_group(black_box(&g)).unwrap().len())
        });
    }
    group.finish();
}

fn bench_isoclinism_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_n_isoclinism");
    for (a, b_name, n) in [("D4", "Q8", 1usize), ("D16", "Q32", 1), ("D8", "Q16", 2)] {
        let g = fixture(a);
        let h = fixture(b_name);
        group.bench_function(format!("{a}-{b_name}-n{n}"), |b| {
            b.iter(|| find_n_isoclinism(black_box(&g), black_box(&h), n).unwrap().is_some())
        });
    }
    group.finish();
}

fn bench_central_series(c: &mut Criterion) {
    let d4xd4 = fixture("D4xD4");
    c.bench_function("central_series/D4xD4", |b| {
        b.iter(|| {
            let lower = CentralSeries::lower(black_box(&d4xd4));
            let upper = CentralSeries::upper(black_box(&d4xd4));
            lower.stabilized_at + upper.stabilized_at
        })
    });
}

fn bench_hom_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("hom_group");
    for (a, b_name) in [("C4xC4", "C4xC4"), ("C2xC2xC2", "C2xC2xC2xC2")] {
        let src = fixture(a);
        let tgt = fixture(b_name);
        group.bench_function(format!("{a}-to-{b_name}"), |b| {
            b.iter(|| hom_group(black_box(&src), black_box(&tgt)).unwrap().len())
        });
    }
    group.finish();
}

fn bench_quotient(c: &mut Criterion) {
    let d4xd4 = fixture("D4xD4");
    let center = Subgroup::center(&d4xd4);
    c.bench_function("quotient/D4xD4-by-center", |b| {
        b.iter(|| quotient(black_box(&d4xd4), black_box(&center)).unwrap().quotient.order())
    });
}

criterion_group!(
    benches,
    bench_automorphism_enumeration,
    bench_isoclinism_search,
    bench_central_series,
    bench_hom_enumeration,
    bench_quotient
);
criterion_main!(benches);
