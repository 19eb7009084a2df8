use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use coxred_core::coxdiagram::{delta3, euler_characteristic};
use coxred_core::finred::{classify_form, DEFAULT_ISOTROPIC_CAP};
use coxred_core::groupengine::DEFAULT_CAP;
use coxred_core::pipeline::{davis_homology, Limits, Reduction};
use coxred_core::vinberg::VinbergLattice;

fn lattice_and_reduction(c: &mut Criterion) {
    let d = delta3();
    c.bench_function("vinberg lattice [5,3,3,5]", |b| b.iter(|| VinbergLattice::build(black_box(&d)).unwrap()));
    c.bench_function("reduce mod sqrt 5", |b| b.iter(|| Reduction::new(black_box(&d), 5).unwrap()));
    c.bench_function("euler characteristic", |b| b.iter(|| euler_characteristic(black_box(&d)).unwrap()));
    let red = Reduction::new(&d, 5).unwrap();
    c.bench_function("classify quotient form", |b| {
        b.iter(|| classify_form(black_box(&red.rep.quotient.form), DEFAULT_ISOTROPIC_CAP).unwrap())
    });
}

fn enumeration(c: &mut Criterion) {
    let red = Reduction::new(&delta3(), 5).unwrap();
    let mut g = c.benchmark_group("enumeration");
    g.sample_size(10);
    g.bench_function("image order 14400", |b| b.iter(|| red.image_order(DEFAULT_CAP).unwrap()));
    g.bench_function("torsion certificate", |b| b.iter(|| red.torsion(DEFAULT_CAP).unwrap()));
    g.finish();
}

fn homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("homology");
    g.sample_size(10);
    g.bench_function("davis H1", |b| b.iter(|| davis_homology(Limits::default()).unwrap()));
    g.finish();
}

criterion_group!(benches, lattice_and_reduction, enumeration, homology);
criterion_main!(benches);
