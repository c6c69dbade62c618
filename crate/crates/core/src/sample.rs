//! Seeded random generators for property suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{AlgebraPresentation, Element, GrowthProfile, Monomial};
use crate::ncforms::{Form, Tuple};
use crate::scalars::Scalar;

/// A small nonzero integer times `p^v`.
pub fn scalar_with_valuation<R: Rng>(rng: &mut R, p: u64, v: i64) -> Scalar {
    let mut u: i64 = rng.gen_range(1..=(p as i64 - 1).max(1) * 3);
    while u % p as i64 == 0 {
        u += 1;
    }
    if rng.gen_bool(0.5) {
        u = -u;
    }
    Scalar::from(u) * Scalar::prime_power(p, v)
}

pub fn small_scalar<R: Rng>(rng: &mut R) -> Scalar {
    let n: i64 = rng.gen_range(1..=9);
    let d: i64 = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        Scalar::ratio(n, d)
    } else {
        Scalar::ratio(-n, d)
    }
}

/// Monomials of degree at most `d`, split into (all, non-unit).
pub struct MonomialPool {
    pub all: Vec<Monomial>,
    pub nonunit: Vec<Monomial>,
}

impl MonomialPool {
    pub fn new(alg: &AlgebraPresentation, d: u32) -> Self {
        let all = alg.monomials_up_to(d);
        let nonunit = all.iter().filter(|m| !m.is_unit()).cloned().collect();
        MonomialPool { all, nonunit }
    }

    /// Monomials admitted by a profile (non-unit, finite weight).
    pub fn admitted(alg: &AlgebraPresentation, profile: &GrowthProfile) -> Self {
        let all: Vec<Monomial> = alg
            .monomials_up_to(profile.cap())
            .into_iter()
            .filter(|m| m.is_unit() || profile.weight(m.degree()).is_some())
            .collect();
        let nonunit = all
            .iter()
            .filter(|m| !m.is_unit() && profile.weight(m.degree()).is_some())
            .cloned()
            .collect();
        MonomialPool { all, nonunit }
    }

    pub fn tuple<R: Rng>(&self, rng: &mut R, n: usize) -> Tuple {
        let mut t = Tuple::new();
        t.push(self.all.choose(rng).unwrap().clone());
        for _ in 0..n {
            t.push(self.nonunit.choose(rng).unwrap().clone());
        }
        t
    }
}

pub fn random_element<R: Rng>(rng: &mut R, pool: &MonomialPool, terms: usize) -> Element {
    let mut e = Element::zero();
    for _ in 0..terms {
        e.add_term(pool.all.choose(rng).unwrap().clone(), small_scalar(rng));
    }
    e
}

/// A random homogeneous `n`-form with at most `terms` basis tuples.
pub fn random_form<R: Rng>(rng: &mut R, pool: &MonomialPool, n: usize, terms: usize) -> Form {
    let mut f = Form::zero();
    for _ in 0..terms {
        f.add_term(pool.tuple(rng, n), small_scalar(rng));
    }
    f
}

/// A random form with components in several degrees.
pub fn random_mixed_form<R: Rng>(
    rng: &mut R,
    pool: &MonomialPool,
    max_degree: usize,
    terms: usize,
) -> Form {
    let mut f = Form::zero();
    for _ in 0..terms {
        let n = rng.gen_range(0..=max_degree);
        f.add_term(pool.tuple(rng, n), small_scalar(rng));
    }
    f
}
