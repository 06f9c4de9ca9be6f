use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tilecohom_bench::{field_operands, generic, half_axis, origin};
use tilecohom_core::homalg::{beta_matrix, smith};
use tilecohom_core::report::compute;
use tilecohom_core::window::{build_window, enumerate_cubes, slice, verify_counts};
use tilecohom_core::{GammaParam, LatticeId};

fn field(c: &mut Criterion) {
    let (a, b) = field_operands();
    c.bench_function("quadrat mul", |bch| bch.iter(|| black_box(&a) * black_box(&b)));
    c.bench_function("quadrat signum", |bch| bch.iter(|| black_box(&a).signum()));
    c.bench_function("quadrat floor", |bch| bch.iter(|| black_box(&a).floor()));
    c.bench_function("quadrat canon", |bch| bch.iter(|| black_box(&a).canon(LatticeId::InvTwoSqrt3G)));
}

fn window(c: &mut Criterion) {
    c.bench_function("window census", |bch| {
        bch.iter(|| {
            let w = build_window().unwrap();
            let cubes = enumerate_cubes(&w).unwrap();
            verify_counts(&w, &cubes)
        })
    });
    let w = build_window().unwrap();
    let cubes = enumerate_cubes(&w).unwrap();
    let (g1, g2) = generic();
    let gamma = GammaParam::reduce(&g1, &g2);
    c.bench_function("slice generic", |bch| bch.iter(|| slice(black_box(&gamma), &cubes)));
}

fn homology(c: &mut Criterion) {
    let beta = beta_matrix();
    c.bench_function("smith beta", |bch| bch.iter(|| smith(black_box(&beta))));
}

fn reports(c: &mut Criterion) {
    let mut group = c.benchmark_group("report");
    group.sample_size(10);
    for (name, (g1, g2)) in [("origin", origin()), ("half axis", half_axis()), ("generic", generic())] {
        group.bench_function(name, |bch| bch.iter(|| compute(black_box(&g1), black_box(&g2)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, field, window, homology, reports);
criterion_main!(benches);
