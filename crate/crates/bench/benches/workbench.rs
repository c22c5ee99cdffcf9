use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use ldp_core::diophantine::solve_preset;
use ldp_core::fixtures::run_fixture;
use ldp_core::planecurve::{intersection_multiplicity, special_config};
use ldp_core::{parse_dynkin, FieldSpec};

fn discrepancies(c: &mut Criterion) {
    let d = parse_dynkin("[3,2^6]+[2;[2],[2],[2^4,3]]+[2,3,2^4]+[3,2^3,3]").unwrap();
    c.bench_function("discrepancies", |b| {
        b.iter(|| {
            for g in black_box(&d).components() {
                black_box(g.gap().unwrap());
            }
        })
    });
}

fn searches(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("D2", |b| b.iter(|| solve_preset(black_box("D2"), false).unwrap()));
    group.bench_function("D2 parallel", |b| b.iter(|| solve_preset(black_box("D2"), true).unwrap()));
    group.bench_function("GEN-3", |b| b.iter(|| solve_preset(black_box("GEN-3"), false).unwrap()));
    group.finish();
}

fn fixtures(c: &mut Criterion) {
    c.bench_function("fixture char_any", |b| b.iter(|| run_fixture(black_box("char_any")).unwrap().unwrap()));
}

fn fulton(c: &mut Criterion) {
    let cfg = special_config(FieldSpec::Rationals).unwrap();
    c.bench_function("I_t(C, Q) over Q", |b| {
        b.iter(|| intersection_multiplicity(black_box(&cfg.c), black_box(&cfg.q), black_box(&cfg.t)).unwrap())
    });
    let f2 = special_config(FieldSpec::Prime(2)).unwrap();
    c.bench_function("I_t(C, Q) over F2", |b| {
        b.iter(|| intersection_multiplicity(black_box(&f2.c), black_box(&f2.q), black_box(&f2.t)).unwrap())
    });
}

criterion_group!(benches, discrepancies, searches, fixtures, fulton);
criterion_main!(benches);
