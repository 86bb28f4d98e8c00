use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rack_collapse::ffield::FieldCtx;
use rack_collapse::permgrp::{conjugacy_classes, PermGroup};
use rack_collapse::suzuki::build_sz;

fn field(c: &mut Criterion) {
    let f = FieldCtx::suzuki(2).unwrap();
    let elems: Vec<_> = f.units().collect();
    c.bench_function("gf32_mul_all_pairs", |b| {
        b.iter(|| {
            let mut acc = f.one();
            for x in &elems {
                for y in &elems {
                    acc = &acc * &(x * y);
                }
            }
            black_box(acc)
        })
    });
    c.bench_function("gf32_phi_all_units", |b| {
        b.iter(|| {
            elems.iter().for_each(|k| {
                black_box(k.phi().unwrap());
            })
        })
    });
}

fn schreier_sims(c: &mut Criterion) {
    let ctx = build_sz(1).unwrap();
    let gens = ctx.group().generators().to_vec();
    c.bench_function("sz8_schreier_sims", |b| {
        b.iter(|| PermGroup::new(65, gens.iter().cloned()).unwrap().order())
    });
    let mut g = c.benchmark_group("classes");
    g.sample_size(10);
    g.bench_function("sz8_conjugacy_classes", |b| {
        b.iter(|| conjugacy_classes(ctx.group(), 1_000_000).unwrap().len())
    });
    g.finish();
}

criterion_group!(benches, field, schreier_sims);
criterion_main!(benches);
