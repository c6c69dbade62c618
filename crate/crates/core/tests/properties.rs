use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ha_core::derham::{reduce_laurent_form, OverconvergentSeries};
use ha_core::graphs::{ha_leavitt, incidence_ne, regular_vertices, smith_normal_form, DirectedGraph, IntMatrix};
use ha_core::groebner::{random_poly, strong_divide, strong_gb, IntPoly};
use ha_core::ncforms::{hochschild_b1, CommutatorQuotient};
use ha_core::sample::{random_element, random_form, scalar_with_valuation, MonomialPool};
use ha_core::tube::{dm_member, random_tube_element, tube_member, EvenForm, TubeParams};
use ha_core::{AlgebraPresentation, Form, GrowthProfile, PrimeConfig, Scalar};

fn presentations() -> Vec<AlgebraPresentation> {
    vec![
        AlgebraPresentation::free(&["x", "y"]).unwrap(),
        AlgebraPresentation::polynomial(&["x", "y"]).unwrap(),
        AlgebraPresentation::laurent("t").unwrap(),
        AlgebraPresentation::plane_curve(&[0, -1, 0, 1]).unwrap(),
    ]
    .into_iter()
    .map(|a| a.with_cap(64))
    .collect()
}

fn sign(k: usize) -> Scalar {
    if k % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn form_identities(seed in any::<u64>(), which in 0usize..4, i in 0usize..3, j in 0usize..3) {
        let alg = &presentations()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool = MonomialPool::new(alg, 2);
        let a = random_form(&mut rng, &pool, i, 2);
        let b = random_form(&mut rng, &pool, j, 2);
        let c = random_form(&mut rng, &pool, 1, 2);

        let da = a.differential(alg).unwrap();
        prop_assert!(da.differential(alg).unwrap().is_zero());

        let lhs = a.mul(&b, alg).unwrap().mul(&c, alg).unwrap();
        let rhs = a.mul(&b.mul(&c, alg).unwrap(), alg).unwrap();
        prop_assert_eq!(lhs, rhs);

        let lhs = a.mul(&b, alg).unwrap().differential(alg).unwrap();
        let db = b.differential(alg).unwrap();
        let rhs = da.mul(&b, alg).unwrap().add(&a.mul(&db, alg).unwrap().scale(&sign(i)));
        prop_assert_eq!(lhs, rhs);

        // associative on even forms only
        let (x, y, z) = (
            random_form(&mut rng, &pool, 2 * (i % 2), 2),
            random_form(&mut rng, &pool, 2 * (j % 2), 2),
            random_form(&mut rng, &pool, 2, 2),
        );
        let lhs = x.fedosov(&y, alg).unwrap().fedosov(&z, alg).unwrap();
        let rhs = x.fedosov(&y.fedosov(&z, alg).unwrap(), alg).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn x_complex_boundary_squares_to_zero(seed in any::<u64>(), which in 0usize..4) {
        let alg = &presentations()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool = MonomialPool::new(alg, 2);
        let q = CommutatorQuotient::new(alg, 6).unwrap();
        let x = random_element(&mut rng, &pool, 3);
        prop_assert!(hochschild_b1(&Form::exact(&x, alg), alg).unwrap().is_zero());
        let w = random_form(&mut rng, &pool, 1, 3);
        let bw = hochschild_b1(&w, alg).unwrap();
        prop_assert!(q.is_zero_class(&Form::exact(&bw, alg)).unwrap());
    }

    #[test]
    fn snf_rank_matches_fraction_free_rank(seed in any::<u64>(), r in 1usize..5, c in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m: IntMatrix = (0..r)
            .map(|_| (0..c).map(|_| BigInt::from(rng.gen_range(-4i64..=4))).collect())
            .collect();
        prop_assert_eq!(smith_normal_form(&m).rank(), bareiss_rank(m));
    }

    #[test]
    fn leavitt_euler_characteristic(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = DirectedGraph::random(&mut rng, n, 0.3, 2);
        let r = ha_leavitt(&g, &PrimeConfig::new(5, 4).unwrap());
        let reg = regular_vertices(&g).len();
        prop_assert_eq!(r.dim_ha0 as i64 - r.dim_ha1 as i64, n as i64 - reg as i64);
        prop_assert_eq!(incidence_ne(&g).cols.len(), reg);
    }

    #[test]
    fn division_certificates_reconstruct(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<IntPoly> = (0..2).map(|_| random_poly(&mut rng, 2, 3, 3, 6)).collect();
        prop_assume!(gens.iter().all(|g| !g.is_zero()));
        let gb = strong_gb(&gens).unwrap();
        for f in &gens {
            prop_assert!(gb.is_member(f));
        }
        let g = random_poly(&mut rng, 2, 4, 5, 9);
        let cert = strong_divide(&g, &gb);
        prop_assert_eq!(cert.reconstruct(&gb), g);
    }

    #[test]
    fn laurent_reduction_is_exact(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = 5;
        let window = 12u32;
        let mut coeffs = BTreeMap::new();
        for _ in 0..6 {
            let n: i64 = rng.gen_range(-(window as i64)..=window as i64);
            let v = (n.unsigned_abs() as i64 + 1) / 2;
            coeffs.insert(n, scalar_with_valuation(&mut rng, p, v));
        }
        let g = OverconvergentSeries::new(p, true, window, coeffs.clone(), 2, 0).unwrap();
        let red = reduce_laurent_form(&g).unwrap();
        // d(Σ aₙ tⁿ) = Σ n aₙ t^{n−1} dt
        let mut back: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (&n, a) in red.primitive.coeffs() {
            back.insert(n - 1, a * &Scalar::from(n));
        }
        if !red.residue.is_zero() {
            back.insert(-1, red.residue.clone());
        }
        coeffs.retain(|_, c| !c.is_zero());
        prop_assert_eq!(back, coeffs);
    }

    #[test]
    fn tube_levels_nest_and_contain_dm(seed in any::<u64>(), m in 1u32..5) {
        let cfg = PrimeConfig::new(5, 8).unwrap();
        let alg = AlgebraPresentation::polynomial(&["t"]).unwrap().with_cap(64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool = MonomialPool::new(&alg, 3);
        let x = random_tube_element(&mut rng, &pool, m + 1, 4, 3, &cfg);
        prop_assert!(tube_member(&x, m + 1, &cfg));
        prop_assert!(tube_member(&x, m, &cfg));

        let profile = GrowthProfile::filtration(1, 6);
        let params = TubeParams::new(m, Scalar::ratio(1, 2 * m as i64 + 1), 1, profile).unwrap();
        let mut f = Form::zero();
        for _ in 0..3 {
            let n = rng.gen_range(0..3usize);
            let t = pool.tuple(&mut rng, 2 * n);
            let v: i64 = rng.gen_range(-2..3);
            f.add_term(t, scalar_with_valuation(&mut rng, cfg.p(), v));
        }
        let y = EvenForm::new(f).unwrap();
        if dm_member(&y, &params, &cfg) {
            prop_assert!(tube_member(&y, m, &cfg));
        }
    }
}

/// Rank over `Q` by fraction-free elimination.
fn bareiss_rank(mut m: IntMatrix) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = &m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}
