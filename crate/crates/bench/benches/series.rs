use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use transfinite::ordinal::Ordinal;
use transfinite::permgroup::catalog;
use transfinite::series::{composition_series, jordan_holder_check, normal_series, schreier_refine};
use transfinite_bench::{cyclic_composition_pair, s4_normal_pair, tower_pair};

fn enumeration(c: &mut Criterion) {
    let s4 = catalog::symmetric(4).unwrap();
    c.bench_function("subgroups S4", |b| b.iter(|| black_box(&s4).subgroups().unwrap()));
    c.bench_function("composition series S4", |b| b.iter(|| composition_series(black_box(&s4)).unwrap()));
    c.bench_function("normal series S4", |b| b.iter(|| normal_series(black_box(&s4)).unwrap()));
}

fn refinement(c: &mut Criterion) {
    let (a, b) = s4_normal_pair();
    c.bench_function("schreier refine S4", |bench| bench.iter(|| schreier_refine(black_box(&a), black_box(&b)).unwrap()));
    let (a, b) = cyclic_composition_pair(24);
    c.bench_function("jordan-holder C24", |bench| bench.iter(|| jordan_holder_check(black_box(&a), black_box(&b)).unwrap()));
    let (a, b) = tower_pair("w^2+1", 5);
    c.bench_function("schreier refine tower w^2+1", |bench| {
        bench.iter(|| schreier_refine(black_box(&a), black_box(&b)).unwrap())
    });
}

fn ordinals(c: &mut Criterion) {
    let x: Ordinal = "w^3*2+w^2*4+w+7".parse().unwrap();
    let y: Ordinal = "w^2*3+w*2+1".parse().unwrap();
    c.bench_function("ordinal add", |b| b.iter(|| black_box(&x).checked_add(black_box(&y)).unwrap()));
    c.bench_function("ordinal mul", |b| b.iter(|| black_box(&x).checked_mul(black_box(&y)).unwrap()));
}

criterion_group!(benches, enumeration, refinement, ordinals);
criterion_main!(benches);
