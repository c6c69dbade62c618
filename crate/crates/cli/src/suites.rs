//! Seeded property suites behind `ha check`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use ha_core::algebra::{check_diam_laws, DiamLaw, Letter};
use ha_core::derham::{h_dr, reduce_laurent_form, OverconvergentSeries};
use ha_core::graphs::{ha_leavitt, matmul, regular_vertices, smith_normal_form, DirectedGraph, IntMatrix};
use ha_core::groebner::{filtered_noetherian_witness, random_poly, strong_divide, strong_gb, IntPoly};
use ha_core::lift::{
    lift_idempotent, psi_cocycle_check, section_curvature_check, Connection, LiftingRecursion, ModMatrix,
};
use ha_core::ncforms::{hochschild_b1, xcomplex_homology, CommutatorQuotient};
use ha_core::sample::{random_element, random_form, scalar_with_valuation, small_scalar, MonomialPool};
use ha_core::scalars::{floor_log, reduce_mod};
use ha_core::tube::{
    dm_member, fedosov_growth_check, floor_estimates, random_tube_element, tube_closure_check, tube_member,
    TubeParams,
};
use ha_core::{AlgebraKind, AlgebraPresentation, Form, GrowthProfile, PrimeConfig, Result, Scalar, Valuation};

pub const SUITES: &[&str] = &[
    "algebra", "derham", "diamond", "fedosov", "floors", "forms", "graphs", "groebner", "growth", "idem", "lift",
    "scalars", "tube", "xcomplex",
];

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub cfg: PrimeConfig,
    pub truncate: Option<u32>,
    pub seed: u64,
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOutcome {
    pub samples: usize,
    pub violations: usize,
    pub detail: Map<String, Value>,
    pub error: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.error.is_none()
    }

    pub fn to_value(&self) -> Value {
        let mut m = self.detail.clone();
        m.insert("samples".into(), self.samples.into());
        m.insert("violations".into(), self.violations.into());
        m.insert("passed".into(), self.passed().into());
        if let Some(e) = &self.error {
            m.insert("error".into(), e.clone().into());
        }
        Value::Object(m)
    }

    fn tally(&mut self, ok: bool) {
        self.samples += 1;
        if !ok {
            self.violations += 1;
        }
    }

    fn note(&mut self, key: &str, v: impl Into<Value>) {
        self.detail.insert(key.to_string(), v.into());
    }
}

/// Each suite draws from its own stream so results do not depend on order.
fn suite_rng(seed: u64, name: &str) -> ChaCha8Rng {
    let h = name
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

pub fn run_suite(name: &str, sc: &SuiteConfig) -> SuiteOutcome {
    let mut rng = suite_rng(sc.seed, name);
    let mut out = SuiteOutcome::default();
    let r = match name {
        "scalars" => scalars(sc, &mut rng, &mut out),
        "algebra" => algebra(sc, &mut rng, &mut out),
        "diamond" => diamond(sc, &mut rng, &mut out),
        "forms" => forms(sc, &mut rng, &mut out),
        "fedosov" => fedosov(sc, &mut rng, &mut out),
        "xcomplex" => xcomplex(sc, &mut rng, &mut out),
        "tube" => tube(sc, &mut rng, &mut out),
        "floors" => floors(sc, &mut out),
        "growth" => growth(sc, &mut rng, &mut out),
        "lift" => lift(sc, &mut out),
        "idem" => idem(sc, &mut rng, &mut out),
        "graphs" => graphs(sc, &mut rng, &mut out),
        "groebner" => groebner(sc, &mut rng, &mut out),
        "derham" => derham(sc, &mut rng, &mut out),
        other => Err(ha_core::Error::Unsupported(format!("unknown suite {other}"))),
    };
    if let Err(e) = r {
        out.error = Some(e.to_string());
    }
    out
}

/// Every suite, in name order.
pub fn check_all(sc: &SuiteConfig) -> Vec<(String, SuiteOutcome)> {
    SUITES.iter().map(|s| (s.to_string(), run_suite(s, sc))).collect()
}

/// The four presentation kinds the form suites range over.
pub fn presentations() -> Vec<AlgebraPresentation> {
    [
        AlgebraPresentation::free(&["x", "y"]),
        AlgebraPresentation::polynomial(&["x", "y"]),
        AlgebraPresentation::laurent("t"),
        AlgebraPresentation::plane_curve(&[0, -1, 0, 1]),
    ]
    .into_iter()
    .map(|a| a.expect("fixed presentations are valid").with_cap(64))
    .collect()
}

fn kind_name(a: &AlgebraPresentation) -> &'static str {
    match a.kind() {
        AlgebraKind::Free => "free",
        AlgebraKind::Polynomial => "polynomial",
        AlgebraKind::Laurent => "laurent",
        AlgebraKind::PlaneCurve => "plane_curve",
    }
}

fn random_scalar<R: Rng>(rng: &mut R, p: u64) -> Scalar {
    let v = rng.gen_range(-3..=3);
    &scalar_with_valuation(rng, p, v) * &small_scalar(rng)
}

fn scalars<R: Rng>(sc: &SuiteConfig, rng: &mut R, out: &mut SuiteOutcome) -> Result<()> {
    let cfg = &sc.cfg;
    let p = cfg.p();
    let n = sc.cfg.default_precision();
    let modulus = cfg.modulus(n);
    for _ in 0..sc.samples.unwrap_or(10_000) {
        let (a, b) = (random_scalar(rng, p), random_scalar(rng, p));
        let (va, vb) = (a.valuation(p), b.valuation(p));
        out.tally((&a * &b).valuation(p) == va + vb);
        let vs = (&a + &b).valuation(p);
        out.tally(vs >= va.min(vb) && (va == vb || vs == va.min(vb)));
        if va >= Valuation::Finite(0) && vb >= Valuation::Finite(0) {
            let ra = reduce_mod(&a, n, cfg)?.value().clone();
            let rb = reduce_mod(&b, n, cfg)?.value().clone();
            let sum = reduce_mod(&(&a + &b), n, cfg)?;
            let prod = reduce_mod(&(&a * &b), n, cfg)?;
            out.tally(*sum.value() == (&ra + &rb).mod_floor(&modulus));
            out.tally(*prod.value() == (&ra * &rb).mod_floor(&modulus));
        }
    }
    Ok(())
}

/// A raw word spelling `m`.
fn word_of(alg: &AlgebraPresentation, m: &ha_core::Monomial) -> Vec<Letter> {
    match alg.kind() {
        AlgebraKind::Free => m.exps().iter().map(|&g| Letter::new(g as usize, 1)).collect(),
        _ => m.exps().iter().enumerate().map(|(i, &e)| Letter::new(i, e)).collect(),
    }
}

fn random_word<R: Rng>(rng: &mut R, alg: &AlgebraPresentation, len: usize) -> Vec<Letter> {
    let gens = alg.generators().len();
    (0..len)
        .map(|_| {
            let power = if alg.kind() == AlgebraKind::Laurent {
                *[-2, -1, 1, 2].choose(rng).unwrap()
            } else {
                rng.gen_range(1..=2)
            };
            Letter::new(rng.gen_range(0..gens), power)
        })
        .collect()
}

fn algebra<R: Rng>(sc: &SuiteConfig, rng: &mut R, out: &mut SuiteOutcome) -> Result<()> {
    let samples = sc.samples.unwrap_or(1000);
    for alg in presentations() {
        for m in alg.monomials_up_to(6) {
            out.tally(alg.normalize(&word_of(&alg, &m))? == ha_core::Element::monomial(m.clone()));
        }
        for _ in 0..samples / 4 {
            let (lu, lv) = (rng.gen_range(0..4), rng.gen_range(0..4));
            let u = random_word(rng, &alg, lu);
            let v = random_word(rng, &alg, lv);
            let uv: Vec<Letter> = u.iter().chain(&v).cloned().collect();
            let whole = alg.normalize(&uv)?;
            out.tally(whole == alg.normalize(&u)?.mul(&alg.normalize(&v)?, &alg)?);
        }
    }
    // F_n·F_m spans F_{n+m}
    for alg in presentations().into_iter().take(2) {
        for n in 0..=4u32 {
            for m in 0..=4u32 {
                let left = alg.monomials_up_to(n);
                let right = alg.monomials_up_to(m);
                let mut span = BTreeSet::new();
                for a in &left {
                    for b in &right {
                        for (mono, _) in alg.mul(a, b)?.iter() {
                            span.insert(mono.clone());
                        }
                    }
                }
                let target: BTreeSet<_> = alg.monomials_up_to(n + m).into_iter().collect();
                out.tally(span == target);
            }
        }
    }
    for _ in 0..samples / 10 {
        let u = random_profile(rng, 20);
        out.tally(check_diam_laws(&u, &u, &[DiamLaw::Idempotent]).passed());
    }
    Ok(())
}

fn random_profile<R: Rng>(rng: &mut R, cap: u32) -> GrowthProfile {
    let top = rng.gen_range(1..=3);
    GrowthProfile::from_weights(
        (0..=cap)
            .map(|d| if d <= top || rng.gen_bool(0.3) { Some(rng.gen_range(0..3)) } else { None })
            .collect(),
    )
}

fn diamond<R: Rng>(sc: &SuiteConfig, rng: &mut R, out: &mut SuiteOutcome) -> Result<()> {
    let cap = sc.truncate.unwrap_or(20);
    for k in 1..=3 {
        let f = GrowthProfile::filtration(k, cap);
        out.tally(f.check_diam_laws(&f).passed());
    }
    let mut first = None;
    for _ in 0..sc.samples.unwrap_or(100) {
        let (u, v) = (random_profile(rng, cap), random_profile(rng, cap));
        let r = check_diam_laws(&u, &v, &DiamLaw::ALL);
        if first.is_none() && !r.passed() {
            first = Some(format!("{u} / {v}: {:?}", r.violation));
        }
        out.tally(r.passed());
    }
    out.note("cap", cap);
    if let Some(f) = first {
        out.note("first_violation", f);
    }
    Ok(())
}

fn sign(k: usize) -> Scalar {
    if k % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

fn forms<R: Rng>(sc: &SuiteConfig, rng: &mut R, out: &mut SuiteOutcome) -> Result<()> {
    let samples = sc.samples.unwrap_or(1000);
    let mut per_law = [0usize; 4];
    for alg in presentations() {
        let pool = MonomialPool::new(&alg, 3);
        for _ in 0..samples {
            let (i, j) = (rng.gen_range(0..3), rng.gen_range(0..3));
            let a = random_form(rng, &pool, i, 2);
            let b = random_form(rng, &pool, j, 2);
            let k = rng.gen_range(0..2);
            let c = random_form(rng, &pool, k, 2);
            let da = a.differential(&alg)?;
            let ok = [
                da.differential(&alg)?.is_zero(),
                a.mul(&b, &alg)?.mul(&c, &alg)? == a.mul(&b.mul(&c, &alg)?, &alg)?,
                a.mul(&b, &alg)?.differential(&alg)?
                    == da.mul(&b, &alg)?.add(&a.mul(&b.differential(&alg)?, &alg)?.scale(&sign(i))),
                fedosov_associates(rng, &pool, &alg)?,
            ];
            for (k, &o) in ok.iter().enumerate() {
                per_law[k] += usize::from(!o);
                out.tally(o);
            }
        }
    }
    out.note(
        "violations_by_law",
        json!({"d_squared": per_law[0], "associativity": per_law[1], "leibniz": per_law[2], "fedosov": per_law[3]}),
    );
    Ok(())
}

fn fedosov_associates<R: Rng>(rng: &mut R, pool: &MonomialPool, alg: &AlgebraPresentation) -> Result<bool> {
    let degrees: [usize; 3] = [0, 1, 2].map(|_| 2 * rng.gen_range(0..2));
    let x = random_form(rng, pool, degrees[0], 2);
    let y = random_form(rng, pool, degrees[1], 2);
    let z = random_form(rng, pool, degrees[2], 2);
    Ok(x.fedosov(&y, alg)?.fedosov(&z, alg)? == x.fedosov(&y.fedosov(&z, alg)?, alg)?)
}

fn fedosov<R: Rng>(sc: &SuiteConfig, rng: &mut R, out: &mut SuiteOutcome) -> Result<()> {
    let samples = sc.samples.unwrap_or(1000);
    for alg in presentations() {
        let pool = MonomialPool::new(&alg, 3);
        for _ in 0..samples / 4 {
            out.tally(fedosov_associates(rng, &pool, &alg)?);
            // x·y − x⊙y = dx dy
            let x = pool.all.choose(rng).unwrap();
            let y = pool.all.choose(rng).unwrap();
            let fx = Form::basis(&[x.clone()], Scalar::one());
            let fy = Form::basis(&[y.clone()], Scalar::one());
            let curv = fx.mul(&fy, &alg)?.sub(&fx.fedosov(&fy, &alg)?);
            out.tally(curv == Form::basis(&[alg.one(), x.clone(), y.clone()], Scalar::one()));
        }
    }
    Ok(())
}

fn xcomplex<R: Rng>(sc: &SuiteConfig, rng: &mut R, out: &mut SuiteOutcome) -> Result<()> {
    let samples = sc.samples.unwrap_or(1000);
    for alg in presentations() {
        let pool = MonomialPool::new(&alg, 2);
        let q = CommutatorQuotient::new(&alg, 6)?;
        for _ in 0..samples / 4 {
            let x = random_element(rng, &pool, 3);
            out.tally(hochschild_b1(&Form::exact(&x, &alg), &alg)?.is_zero());
            let w = random_form(rng, &pool, 1, 3);
            let bw = hochschild_b1(&w, &alg)?;
            out.tally(q.is_zero_class(&Form::exact(&bw, &alg))?);
        }
    }
    let expected = [(1usize, 0usize), (1, 1), (1, 2)];
    let mut dims = Map::new();
    for (alg, want) in presentations().into_iter().skip(1).zip(expected) {
        let alg = if alg.kind() == AlgebraKind::Polynomial {
            AlgebraPresentation::polynomial(&["t"])?
        } else {
            alg
        };
        let r = xcomplex_homology(&alg, &sc.cfg, 10)?;
        out.tally((r.h0, r.h1) == want);
        dims.insert(kind_name(&alg).into(), json!([r.h0, r.h1]));
    }
    out.note("homology", Value::Object(dims));
    Ok(())
}

fn tube<R: Rng>(sc: &SuiteConfig, rng: &mut R, out: &mut SuiteOutcome) -> Result<()> {
    let cfg = &sc.cfg;
    let pairs = sc.samples.unwrap_or(1000);
    let mut closure = 0;
    for alg in presentations() {
        for m in 1..=5 {
            let r = tube_closure_check(&alg, m, pairs, 2, cfg, rng)?;
            out.samples += r.pairs;
            out.violations += r.violations;
            closure += r.violations;
        }
    }
    out.note("closure_violations", closure);
    let alg = AlgebraPresentation::polynomial(&["t"])?.with_cap(64);
    let pool = MonomialPool::new(&alg, 3);
    for _ in 0..pairs {
        let m = rng.gen_range(1..=5);
        let x = random_tube_element(rng, &pool, m + 1, 4, 3, cfg);
        out.tally(tube_member(&x, m, cfg));
        // D_{m+1}(F_k, 1/(m+2), 0) ⊆ D_m(F_k, 1/(m+1), 0) ⊆ tube level m
        let k = rng.gen_range(1..=3);
        let prof = GrowthProfile::filtration(k, 3);
        let fine = TubeParams::new(m + 1, Scalar::ratio(1, m as i64 + 2), 0, prof.clone())?;
        let coarse = TubeParams::new(m, Scalar::ratio(1, m as i64 + 1), 0, prof)?;
        let y = random_tube_element(rng, &pool, m, 4, 3, cfg);
        if dm_member(&y, &fine, cfg) {
            out.tally(dm_member(&y, &coarse, cfg));
        }
        if dm_member(&y, &coarse, cfg) {
            out.tally(tube_member(&y, m, cfg));
        }
    }
    Ok(())
}

fn floors(sc: &SuiteConfig, out: &mut SuiteOutcome) -> Result<()> {
    let r = floor_estimates(sc.truncate.unwrap_or(200) as u64);
    out.samples = r.checked as usize;
    out.violations = usize::from(!r.passed());
    out.note("n_max", r.n_max);
    Ok(())
}

pub const DEGREE_PATTERNS: &[&[usize]] = &[&[1, 1], &[1, 2], &[2, 1], &[2, 2], &[1, 1, 1], &[1, 2, 1]];

/// `F_k` spanned by the generators and `p·F_{k+1}`.
pub fn growth_profiles(alg: &AlgebraPresentation) -> [GrowthProfile; 2] {
    // plane-curve generators have weights 2 and 3
    let k = if alg.kind() == AlgebraKind::PlaneCurve { 3 } else { 1 };
    [GrowthProfile::filtration(k, k + 1), GrowthProfile::filtration(k + 1, k + 1).shift(1)]
}

fn growth<R: Rng>(sc: &SuiteConfig, rng: &mut R, out: &mut SuiteOutcome) -> Result<()> {
    let samples = sc.samples.unwrap_or(100);
    for alg in presentations() {
        for profile in &growth_profiles(&alg) {
            for degrees in DEGREE_PATTERNS {
                let r = fedosov_growth_check(&alg, profile, degrees, samples, &sc.cfg, rng)?;
                out.samples += r.samples;
                out.violations += r.violations;
                if let Some(v) = r.first_violation {
                    out.note("first_violation", v);
                }
            }
        }
    }
    Ok(())
}

fn lift(sc: &SuiteConfig, out: &mut SuiteOutcome) -> Result<()> {
    let cap = sc.truncate.unwrap_or(6);
    let mut constants = Map::new();
    for alg in [AlgebraPresentation::polynomial(&["t"])?, AlgebraPresentation::laurent("t")?] {
        let rec = LiftingRecursion::new(Connection::standard(&alg)?, cap)?;
        for n in 1..=3 {
            let c = psi_cocycle_check(&rec, n, cap)?;
            out.samples += c.triples;
            out.violations += c.violations;
            let curv = section_curvature_check(&rec, n, cap)?;
            out.tally(curv.passed());
            if n == 3 {
                constants.insert(kind_name(&alg).into(), json!(curv.degree_constants));
            }
        }
    }
    out.note("degree_constants", Value::Object(constants));
    Ok(())
}

/// Inverse of a square matrix over `Z/p`.
fn inverse_mod_p(m: &[Vec<i64>], p: i64) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let mut a: Vec<Vec<i64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<i64> = r.iter().map(|x| x.rem_euclid(p)).collect();
            row.extend((0..n).map(|j| i64::from(i == j)));
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| a[r][c] != 0)?;
        a.swap(c, piv);
        let inv = (1..p).find(|&x| a[c][c] * x % p == 1)?;
        for x in a[c].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..n {
            if r != c && a[r][c] != 0 {
                let f = a[r][c];
                let pivot_row = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `P·diag(ε)·P⁻¹ mod p` for a random invertible `P` and `ε ∈ {0,1}ⁿ`.
pub fn random_idempotent_mod_p<R: Rng>(rng: &mut R, n: usize, p: u64) -> Vec<Vec<i64>> {
    let p = p as i64;
    loop {
        let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect()).collect();
        let Some(inv) = inverse_mod_p(&m, p) else {
            continue;
        };
        let eps: Vec<i64> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        let mut e = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                e[i][j] = (0..n).map(|k| m[i][k] * eps[k] * inv[k][j]).sum::<i64>().rem_euclid(p);
            }
        }
        return e;
    }
}

fn newton(e: &ModMatrix) -> ModMatrix {
    let mut e = e.clone();
    loop {
        let e2 = e.mul(&e);
        let next = e2.scale(&BigInt::from(3)).sub(&e2.mul(&e).scale(&BigInt::from(2)));
        if next == e {
            return e;
        }
        e = next;
    }
}

fn idem<R: Rng>(sc: &SuiteConfig, rng: &mut R, out: &mut SuiteOutcome) -> Result<()> {
    let cfg = &sc.cfg;
    let n = cfg.default_precision();
    let modulus = cfg.modulus(n);
    let p = BigInt::from(cfg.p());
    for k in 0..sc.samples.unwrap_or(100) {
        let e = random_idempotent_mod_p(rng, 2 + k % 2, cfg.p());
        let e = ModMatrix::from_i64(&e, &modulus)?;
        let l = lift_idempotent(&e, cfg, n)?;
        out.tally(l.is_idempotent() && l.reduce(&p) == e.reduce(&p) && l == newton(&e));
    }
    Ok(())
}

fn bareiss(mut m: IntMatrix) -> (usize, BigInt) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if piv != rank {
            m.swap(rank, piv);
            sign = -sign;
        }
        for i in rank + 1..rows {
            for j in c + 1..cols {
                m[i][j] = (&m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j]) / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    let det = if rank == rows && rows == cols { sign * prev } else { BigInt::zero() };
    (rank, det)
}

fn graphs<R: Rng>(sc: &SuiteConfig, rng: &mut R, out: &mut SuiteOutcome) -> Result<()> {
    for _ in 0..sc.samples.unwrap_or(1000) {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let m: IntMatrix = (0..r)
            .map(|_| (0..c).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect())
            .collect();
        let s = smith_normal_form(&m);
        let inv = s.invariants();
        let diagonal = s.d.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()));
        let chain = inv.windows(2).all(|w| w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        let unimodular = bareiss(s.u.clone()).1.abs().is_one() && bareiss(s.w.clone()).1.abs().is_one();
        out.tally(
            matmul(&matmul(&s.u, &m), &s.w) == s.d
                && diagonal
                && chain
                && unimodular
                && inv.iter().all(|x| !x.is_negative())
                && s.rank() == bareiss(m).0,
        );
    }
    let cfg = &sc.cfg;
    for _ in 0..100 {
        let n = rng.gen_range(1..=8);
        let g = DirectedGraph::random(rng, n, 0.3, 2);
        let h = ha_leavitt(&g, cfg);
        out.tally(h.dim_ha0 as i64 - h.dim_ha1 as i64 == n as i64 - regular_vertices(&g).len() as i64);
    }
    let line = DirectedGraph::from_json(r#"{"vertices":["v","w"],"edges":[{"s":"v","r":"w"}]}"#)?;
    let h = ha_leavitt(&line, cfg);
    out.tally((h.dim_ha0, h.dim_ha1) == (1, 0));
    Ok(())
}

/// Ten two-variable generator sets of degree at most 4.
pub fn groebner_corpus() -> Vec<Vec<IntPoly>> {
    let t = |terms: &[(&[u32], i64)]| IntPoly::from_terms(2, terms);
    vec![
        vec![t(&[(&[1, 0], 2)]), t(&[(&[0, 1], 3)])],
        vec![t(&[(&[0, 0], 6)]), t(&[(&[1, 0], 10)])],
        vec![t(&[(&[2, 0], 1), (&[0, 0], -2)]), t(&[(&[0, 1], 3)])],
        vec![t(&[(&[2, 0], 4), (&[0, 1], 2)]), t(&[(&[1, 1], 6)])],
        vec![t(&[(&[3, 0], 1), (&[0, 1], -1)]), t(&[(&[1, 0], 5)])],
        vec![t(&[(&[2, 1], 2), (&[1, 0], 1)]), t(&[(&[0, 2], 3), (&[0, 0], -1)])],
        vec![t(&[(&[4, 0], 1), (&[0, 0], 3)]), t(&[(&[1, 1], 9)])],
        vec![t(&[(&[1, 0], 12), (&[0, 0], -4)]), t(&[(&[0, 2], 18)])],
        vec![t(&[(&[2, 0], 1), (&[0, 2], 1)]), t(&[(&[1, 1], 2)]), t(&[(&[0, 0], 4)])],
        vec![t(&[(&[3, 1], 3), (&[0, 1], -1)]), t(&[(&[1, 0], 7), (&[0, 0], 1)])],
    ]
}

fn groebner<R: Rng>(sc: &SuiteConfig, rng: &mut R, out: &mut SuiteOutcome) -> Result<()> {
    let samples = sc.samples.unwrap_or(500);
    let mut basis_sizes = Vec::new();
    for gens in groebner_corpus() {
        let gb = strong_gb(&gens)?;
        basis_sizes.push(gb.basis().len());
        for f in &gens {
            out.tally(gb.is_member(f));
        }
        for _ in 0..samples / 10 {
            let g = random_poly(rng, 2, 5, 5, 9);
            let cert = strong_divide(&g, &gb);
            out.tally(cert.reconstruct(&gb) == g);
        }
        let w = filtered_noetherian_witness(&gens, samples, 6, rng)?;
        out.samples += w.samples;
        out.violations += w.nonmembers + w.strong_failures + usize::from(w.shift != 0);
    }
    out.note("basis_sizes", basis_sizes);
    Ok(())
}

fn derham<R: Rng>(sc: &SuiteConfig, rng: &mut R, out: &mut SuiteOutcome) -> Result<()> {
    let cfg = &sc.cfg;
    let p = cfg.p();
    let window = 16u32;
    let bound = floor_log(window as u64 + 1, p);
    let mut worst = 0;
    for _ in 0..sc.samples.unwrap_or(1000) {
        let mut coeffs = std::collections::BTreeMap::new();
        for _ in 0..5 {
            let n: i64 = rng.gen_range(-(window as i64)..=window as i64);
            let v = (n.unsigned_abs() as i64 + 1) / 2 + rng.gen_range(0..2);
            coeffs.insert(n, scalar_with_valuation(rng, p, v));
        }
        let g = OverconvergentSeries::new(p, true, window, coeffs, 2, 0)?;
        let red = reduce_laurent_form(&g)?;
        worst = worst.max(red.loss);
        // g − residue·t⁻¹ − d(primitive)/dt = 0
        let mut diff = g.coeffs().clone();
        for (&n, a) in red.primitive.coeffs() {
            let e = diff.entry(n - 1).or_insert_with(Scalar::zero);
            *e -= &(a * &Scalar::from(n));
        }
        let e = diff.entry(-1).or_insert_with(Scalar::zero);
        *e -= &red.residue;
        out.tally(diff.values().all(Scalar::is_zero) && red.loss <= bound);
    }
    out.note("max_loss", worst);
    let d = sc.truncate.unwrap_or(20);
    let mut dims = Map::new();
    let cases = [
        (AlgebraPresentation::polynomial(&["t"])?, (1usize, 0usize)),
        (AlgebraPresentation::laurent("t")?, (1, 1)),
        (AlgebraPresentation::plane_curve(&[0, -1, 0, 1])?, (1, 2)),
    ];
    for (alg, want) in cases {
        if alg.kind() == AlgebraKind::PlaneCurve && p < 5 {
            continue;
        }
        let r = h_dr(&alg, cfg, d)?;
        out.tally((r.h0, r.h1) == want && r.stable && r.valuation_loss <= r.loss_bound);
        dims.insert(kind_name(&alg).into(), json!([r.h0, r.h1]));
    }
    out.note("h_dr", Value::Object(dims));
    Ok(())
}
