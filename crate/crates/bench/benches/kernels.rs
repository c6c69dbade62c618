use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ha_core::derham::h_dr;
use ha_core::graphs::{ha_leavitt, smith_normal_form, DirectedGraph};
use ha_core::groebner::{strong_gb, IntPoly};
use ha_core::lift::{lift_idempotent, psi_cocycle_check, Connection, LiftingRecursion, ModMatrix};
use ha_core::sample::{random_form, MonomialPool};
use ha_core::{AlgebraPresentation, PrimeConfig};

fn fedosov(c: &mut Criterion) {
    let alg = AlgebraPresentation::polynomial(&["x", "y"]).unwrap();
    let pool = MonomialPool::new(&alg, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let pairs: Vec<_> = (0..64)
        .map(|_| (random_form(&mut rng, &pool, 2, 3), random_form(&mut rng, &pool, 2, 3)))
        .collect();
    c.bench_function("fedosov/poly2/64 pairs", |b| {
        b.iter(|| {
            for (x, y) in &pairs {
                black_box(x.fedosov(y, &alg).unwrap());
            }
        })
    });
}

fn derham(c: &mut Criterion) {
    let mut g = c.benchmark_group("h_dr");
    g.sample_size(10);
    let cfg = PrimeConfig::new(7, 16).unwrap();
    let laurent = AlgebraPresentation::laurent("t").unwrap();
    let curve = AlgebraPresentation::plane_curve(&[0, -1, 0, 1]).unwrap();
    for d in [10u32, 20] {
        g.bench_with_input(BenchmarkId::new("laurent", d), &d, |b, &d| {
            b.iter(|| h_dr(&laurent, &cfg, d).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("curve", d), &d, |b, &d| {
            b.iter(|| h_dr(&curve, &cfg, d).unwrap())
        });
    }
    g.finish();
}

fn graphs(c: &mut Criterion) {
    let cfg = PrimeConfig::new(5, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let graphs: Vec<_> = (0..16).map(|_| DirectedGraph::random(&mut rng, 8, 0.4, 3)).collect();
    c.bench_function("ha_leavitt/16 graphs on 8 vertices", |b| {
        b.iter(|| {
            for g in &graphs {
                black_box(ha_leavitt(g, &cfg));
            }
        })
    });
    let m = ha_core::graphs::int_matrix(&[vec![4, 6, 8, 2], vec![6, 9, 12, 5], vec![1, 0, 3, 7], vec![2, 2, 2, 2]]);
    c.bench_function("snf/4x4", |b| b.iter(|| smith_normal_form(black_box(&m))));
}

fn groebner(c: &mut Criterion) {
    let gens = vec![
        IntPoly::from_terms(2, &[(&[2, 1], 2), (&[1, 0], 1)]),
        IntPoly::from_terms(2, &[(&[0, 2], 3), (&[0, 0], -1)]),
    ];
    c.bench_function("strong_gb/2x^2y+x, 3y^2-1", |b| b.iter(|| strong_gb(black_box(&gens)).unwrap()));
}

fn lifting(c: &mut Criterion) {
    let mut g = c.benchmark_group("lift");
    g.sample_size(10);
    let alg = AlgebraPresentation::laurent("t").unwrap();
    g.bench_function("psi cocycle laurent n=2 cap 6", |b| {
        b.iter(|| {
            let rec = LiftingRecursion::new(Connection::standard(&alg).unwrap(), 6).unwrap();
            psi_cocycle_check(&rec, 2, 6).unwrap()
        })
    });
    let cfg = PrimeConfig::new(5, 16).unwrap();
    let e = ModMatrix::from_i64(&[vec![1, 1, 0], vec![0, 0, 0], vec![0, 2, 1]], &cfg.modulus(16)).unwrap();
    g.bench_function("idempotent 3x3 N=16", |b| b.iter(|| lift_idempotent(&e, &cfg, 16).unwrap()));
    g.finish();
}

criterion_group!(benches, fedosov, derham, graphs, groebner, lifting);
criterion_main!(benches);
