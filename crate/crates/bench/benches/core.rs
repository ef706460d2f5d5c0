use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use thermolam::polar::DEFAULT_TOL;
use thermolam::search::Dedup;
use thermolam::{
    classify, compliance, enumerate, full_inverse_oracle, polar_homogenize, stiffness_tensors,
    MaterialCatalog, Predicate, SearchSpec,
};
use thermolam_bench::cross_ply;

fn homogenization(c: &mut Criterion) {
    let cat = MaterialCatalog::builtin();
    let mut g = c.benchmark_group("homogenize");
    for n in [12, 48, 192] {
        let lam = cross_ply(n);
        g.bench_with_input(BenchmarkId::new("cartesian", n), &lam, |b, lam| {
            b.iter(|| stiffness_tensors(black_box(lam), &cat).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("polar", n), &lam, |b, lam| {
            b.iter(|| polar_homogenize(black_box(lam), &cat).unwrap())
        });
    }
    g.finish();
}

fn inversion(c: &mut Criterion) {
    let cat = MaterialCatalog::builtin();
    let s = stiffness_tensors(&cross_ply(12), &cat).unwrap();
    let k = compliance(&s).unwrap();
    c.bench_function("compliance/blocks", |b| {
        b.iter(|| compliance(black_box(&s)).unwrap())
    });
    c.bench_function("compliance/dense", |b| {
        b.iter(|| full_inverse_oracle(black_box(&s)).unwrap())
    });
    c.bench_function("classify", |b| {
        b.iter(|| classify(black_box(&s), &k, DEFAULT_TOL).unwrap())
    });
}

fn search(c: &mut Criterion) {
    let cat = MaterialCatalog::builtin();
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    for n in [10, 12, 14] {
        let spec = SearchSpec {
            n,
            orientations_deg: vec![0.0, 90.0],
            predicates: vec![
                Predicate::BalancedCrossply,
                Predicate::CZero,
                Predicate::BNonzero,
            ],
            max_results: None,
            dedup: Dedup::None,
            material: "T300/5208".into(),
            skip_verify: true,
        };
        g.bench_with_input(BenchmarkId::new("crossply_tqhcl", n), &spec, |b, spec| {
            b.iter(|| enumerate(black_box(spec), &cat).unwrap())
        });
    }
    let spec = SearchSpec {
        n: 8,
        orientations_deg: vec![0.0, 90.0, 45.0, -45.0],
        predicates: vec![Predicate::WarpFree],
        max_results: None,
        dedup: Dedup::None,
        material: "T300/5208".into(),
        skip_verify: true,
    };
    g.bench_function("warp_free_4_orientations/8", |b| {
        b.iter(|| enumerate(black_box(&spec), &cat).unwrap())
    });
    g.finish();
}

criterion_group!(benches, homogenization, inversion, search);
criterion_main!(benches);
