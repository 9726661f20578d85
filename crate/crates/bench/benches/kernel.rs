use criterion::{black_box, criterion_group, criterion_main, Criterion};
use elevatum_core::claims::{run_claim, ClaimSpec};
use elevatum_core::predicates::apex_deviation;
use elevatum_core::{build_seed, elevate, HeightRule, PrecisionPolicy, Real, SeedId};

fn eval(c: &mut Criterion) {
    let x = &(&Real::from_int(2).sqrt() + &Real::from_int(3).sqrt()) / &Real::from_int(7).sqrt();
    let mut g = c.benchmark_group("eval");
    for bits in [64, 256, 1024, 4096] {
        g.bench_function(format!("{bits} bits"), |b| b.iter(|| black_box(&x).eval(bits).unwrap()));
    }
    g.finish();
}

fn seeds(c: &mut Criterion) {
    c.bench_function("build_seed icosidodecahedron", |b| {
        b.iter(|| build_seed(black_box(SeedId::Icosidodecahedron)))
    });
    let base = build_seed(SeedId::Icosidodecahedron);
    c.bench_function("elevate equilateral", |b| {
        b.iter(|| elevate(black_box(&base), &HeightRule::Equilateral).unwrap())
    });
}

fn deviation(c: &mut Criterion) {
    let base = build_seed(SeedId::Icosidodecahedron);
    let e = elevate(&base, &HeightRule::Equilateral).unwrap();
    let p = base.faces_of_arity(5)[0];
    c.bench_function("apex deviation at 256 bits", |b| {
        b.iter(|| apex_deviation(black_box(&e), p).unwrap().eval(256).unwrap())
    });
}

fn claim(c: &mut Criterion) {
    let spec = ClaimSpec::pacioli();
    let policy = PrecisionPolicy::default();
    let mut g = c.benchmark_group("claim");
    g.sample_size(10);
    g.bench_function("run_claim pacioli-lii", |b| b.iter(|| run_claim(black_box(&spec), &policy).unwrap()));
    g.finish();
}

criterion_group!(benches, eval, seeds, deviation, claim);
criterion_main!(benches);
