//! Overconvergent de Rham reduction in relative dimension one.
//!
//! `H⁰` and `H¹` of `d: A → Ω¹_A` are read off a truncated window: the
//! domain holds monomials of degree at most `D`, the codomain forms of degree
//! at most `D + 1`. The answer is accepted only if it agrees at `D + 5`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraKind, AlgebraPresentation, Monomial};
use crate::error::{Error, Result};
use crate::graphs::{ha_leavitt, DirectedGraph};
use crate::linalg::{SparseEchelon, SparseVec};
use crate::scalars::{floor_log, u64_valuation, PrimeConfig, Scalar, Valuation};
use crate::univariate::UniPoly;

pub const STABILITY_PAD: u32 = 5;

/// A truncated series `Σ c_n tⁿ` with `val(c_n) ≥ ⌈|n|/m⌉ − f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverconvergentSeries {
    p: u64,
    laurent: bool,
    window: u32,
    coeffs: BTreeMap<i64, Scalar>,
    m: u32,
    f: i64,
}

fn ceil_div(a: u64, b: u64) -> i64 {
    a.div_ceil(b) as i64
}

impl OverconvergentSeries {
    /// Checks the window and the growth certificate `(m, f)`.
    pub fn new(
        p: u64,
        laurent: bool,
        window: u32,
        coeffs: BTreeMap<i64, Scalar>,
        m: u32,
        f: i64,
    ) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidPresentation("certificate slope m must be positive".into()));
        }
        let coeffs: BTreeMap<i64, Scalar> = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        for (&n, c) in &coeffs {
            let inside = if laurent {
                n.unsigned_abs() <= window as u64
            } else {
                (0..=window as i64).contains(&n)
            };
            if !inside {
                return Err(Error::DegreeOverflow {
                    degree: n.unsigned_abs() as u32,
                    cap: window,
                });
            }
            let bound = ceil_div(n.unsigned_abs(), m as u64) - f;
            if c.valuation(p) < Valuation::Finite(bound) {
                return Err(Error::CertificateViolated { index: n });
            }
        }
        Ok(OverconvergentSeries {
            p,
            laurent,
            window,
            coeffs,
            m,
            f,
        })
    }

    pub fn coeff(&self, n: i64) -> Scalar {
        self.coeffs.get(&n).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Scalar> {
        &self.coeffs
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn certificate(&self) -> (u32, i64) {
        (self.m, self.f)
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }
}

/// `Σ c_l t^l ↦ Σ c_l/(l+1) t^{l+1}` with the largest `val_p(l+1)` over the
/// support. The primitive carries the certificate `(m, f + ⌊log_p(D+1)⌋ + 1)`.
pub fn integrate_series(a: &OverconvergentSeries) -> Result<(OverconvergentSeries, u32)> {
    if a.laurent {
        return Err(Error::Unsupported("integration of a Laurent window; use reduce_laurent_form".into()));
    }
    let mut loss = 0;
    let mut out = BTreeMap::new();
    for (&l, c) in &a.coeffs {
        let k = (l + 1) as u64;
        loss = loss.max(u64_valuation(k, a.p));
        out.insert(l + 1, c / &Scalar::from(k as i64));
    }
    let f = a.f + floor_log(a.window as u64 + 1, a.p) as i64 + 1;
    let prim = OverconvergentSeries::new(a.p, false, a.window + 1, out, a.m, f)?;
    Ok((prim, loss))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentReduction {
    /// Coefficient of `dt/t`.
    pub residue: Scalar,
    pub primitive: OverconvergentSeries,
    pub loss: u32,
}

/// `g·dt = c₋₁·dt/t + d(primitive)` with primitive coefficient `c_{n−1}/n` at `tⁿ`.
pub fn reduce_laurent_form(g: &OverconvergentSeries) -> Result<LaurentReduction> {
    let mut loss = 0;
    let mut out = BTreeMap::new();
    for (&l, c) in &g.coeffs {
        if l == -1 {
            continue;
        }
        let n = l + 1;
        loss = loss.max(u64_valuation(n.unsigned_abs(), g.p));
        out.insert(n, c / &Scalar::from(n));
    }
    let f = g.f + floor_log(g.window as u64 + 1, g.p) as i64 + 1;
    let primitive = OverconvergentSeries::new(g.p, true, g.window + 1, out, g.m, f)?;
    Ok(LaurentReduction {
        residue: g.coeff(-1),
        primitive,
        loss,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub h0: usize,
    pub h1: usize,
    pub reps: Vec<String>,
    /// Largest `val_p` of a pivot divided by during the reduction.
    pub valuation_loss: u32,
    /// `⌊log_p(D + 1)⌋`, the logarithmic bound on the loss.
    pub loss_bound: u32,
    pub truncation: u32,
    pub stable: bool,
}

struct Window {
    h0: usize,
    h1: usize,
    reps: Vec<String>,
    loss: u32,
}

/// `d` on the window: domain monomials, images over codomain keys.
struct KahlerComplex {
    domain: Vec<Monomial>,
    images: Vec<SparseVec<Monomial>>,
    codomain: Vec<Monomial>,
}

fn laurent_or_line(alg: &AlgebraPresentation, d: u32) -> Result<KahlerComplex> {
    let laurent = alg.kind() == AlgebraKind::Laurent;
    let wide = alg.clone().with_cap(alg.cap().max(d + 2));
    let domain = wide.monomials_up_to(d);
    let codomain: Vec<Monomial> = if laurent {
        (-(d as i32) - 1..=d as i32 - 1)
            .map(|k| wide.monomial(&[k]))
            .collect::<Result<_>>()?
    } else {
        (0..d as i32).map(|k| wide.monomial(&[k])).collect::<Result<_>>()?
    };
    let mut images = Vec::new();
    for m in &domain {
        let k = m.exps()[0];
        let mut v = SparseVec::new();
        if k != 0 {
            v.insert(wide.monomial(&[k - 1])?, Scalar::from(k as i64));
        }
        images.push(v);
    }
    Ok(KahlerComplex {
        domain,
        images,
        codomain,
    })
}

/// `y² = f(x)` with `Ω¹` free on `ω = dx/y`: `dx = yω`, `dy = f′(x)/2·ω`.
fn curve(alg: &AlgebraPresentation, d: u32) -> Result<KahlerComplex> {
    let wide = alg.clone().with_cap(alg.cap().max(d + 8));
    let f = UniPoly::from_ints(alg.f_coeffs());
    let half_fp = f.derivative().scale(&Scalar::ratio(1, 2));
    let domain = wide.monomials_up_to(d);
    let codomain = wide.monomials_up_to(d + 1);
    let mut images = Vec::new();
    for m in &domain {
        let (i, j) = (m.exps()[0], m.exps()[1]);
        let mut v = SparseVec::new();
        let mut add = |e: [i32; 2], c: Scalar| -> Result<()> {
            if c.is_zero() {
                return Ok(());
            }
            let key = wide.monomial(&e)?;
            let entry = v.entry(key).or_insert_with(Scalar::zero);
            *entry += &c;
            Ok(())
        };
        if j == 0 {
            if i > 0 {
                add([i - 1, 1], Scalar::from(i as i64))?;
            }
        } else {
            // d(xⁱy) = i x^{i−1} f(x) ω + xⁱ f′(x)/2 ω
            for (k, c) in f.coeffs().iter().enumerate() {
                if i > 0 {
                    add([i - 1 + k as i32, 0], c * &Scalar::from(i as i64))?;
                }
            }
            for (k, c) in half_fp.coeffs().iter().enumerate() {
                add([i + k as i32, 0], c.clone())?;
            }
        }
        v.retain(|_, c| !c.is_zero());
        images.push(v);
    }
    Ok(KahlerComplex {
        domain,
        images,
        codomain,
    })
}

fn label(alg: &AlgebraPresentation, m: &Monomial) -> String {
    match alg.kind() {
        AlgebraKind::PlaneCurve => {
            if m.is_unit() {
                "dx/y".into()
            } else {
                format!("{}*dx/y", alg.format_monomial(m))
            }
        }
        _ => {
            let t = &alg.generators()[0];
            match m.exps()[0] {
                0 => format!("d{t}"),
                -1 => format!("d{t}/{t}"),
                _ => format!("{}*d{t}", alg.format_monomial(m)),
            }
        }
    }
}

fn window(alg: &AlgebraPresentation, cfg: &PrimeConfig, d: u32) -> Result<Window> {
    let cx = match alg.kind() {
        AlgebraKind::Laurent => laurent_or_line(alg, d)?,
        AlgebraKind::Polynomial if alg.generators().len() == 1 => laurent_or_line(alg, d)?,
        AlgebraKind::PlaneCurve => curve(alg, d)?,
        _ => {
            return Err(Error::Unsupported(
                "de Rham reduction needs a one-variable polynomial, Laurent or plane-curve presentation".into(),
            ))
        }
    };
    let mut ech: SparseEchelon<Monomial> = SparseEchelon::new();
    let mut loss = 0u32;
    for v in &cx.images {
        if let Some((_, c)) = v.iter().next_back() {
            if let Valuation::Finite(k) = c.valuation(cfg.p()) {
                loss = loss.max(k.max(0) as u32);
            }
        }
        ech.insert(v);
    }
    let rank = ech.rank();
    let mut reps = Vec::new();
    let mut span = ech;
    for m in &cx.codomain {
        let e: SparseVec<Monomial> = [(m.clone(), Scalar::one())].into_iter().collect();
        if span.insert(&e) {
            reps.push(label(alg, m));
        }
    }
    Ok(Window {
        h0: cx.domain.len() - rank,
        h1: cx.codomain.len() - rank,
        reps,
        loss,
    })
}

fn check_curve(alg: &AlgebraPresentation, cfg: &PrimeConfig) -> Result<()> {
    if alg.curve_degree() != 3 {
        return Err(Error::Unsupported("plane curves must have deg f = 3".into()));
    }
    if cfg.p() < 5 {
        return Err(Error::Unsupported("plane curves need p >= 5".into()));
    }
    let disc = UniPoly::from_ints(alg.f_coeffs()).discriminant();
    if disc.is_zero() || (disc.numer() % cfg.p()).is_zero() {
        return Err(Error::BadReduction { p: cfg.p() });
    }
    Ok(())
}

/// De Rham cohomology `(h0, h1)` at truncation `D`, certified against `D + 5`.
pub fn h_dr(alg: &AlgebraPresentation, cfg: &PrimeConfig, d: u32) -> Result<CohomologyReport> {
    if alg.kind() == AlgebraKind::PlaneCurve {
        check_curve(alg, cfg)?;
    }
    let w = window(alg, cfg, d)?;
    let padded = window(alg, cfg, d + STABILITY_PAD)?;
    if (w.h0, w.h1) != (padded.h0, padded.h1) {
        return Err(Error::Unstable {
            d,
            padded: d + STABILITY_PAD,
            at_d: (w.h0, w.h1),
            at_padded: (padded.h0, padded.h1),
        });
    }
    Ok(CohomologyReport {
        h0: w.h0,
        h1: w.h1,
        reps: w.reps,
        valuation_loss: w.loss,
        loss_bound: floor_log(d as u64 + 1, cfg.p()),
        truncation: d,
        stable: true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub leavitt: (usize, usize),
    pub derham: (usize, usize),
    pub matched: bool,
}

/// `HA` of the loop graph's Leavitt algebra against `H_dR(V[t, t⁻¹]†)`.
pub fn crosscheck_loop_graph(cfg: &PrimeConfig, d: u32) -> Result<CrosscheckReport> {
    let g = ha_leavitt(&DirectedGraph::rose(1), cfg);
    let h = h_dr(&AlgebraPresentation::laurent("t")?, cfg, d)?;
    let leavitt = (g.dim_ha0, g.dim_ha1);
    let derham = (h.h0, h.h1);
    if leavitt != derham {
        return Err(Error::Mismatch(format!(
            "loop graph gives {leavitt:?} but de Rham gives {derham:?}"
        )));
    }
    Ok(CrosscheckReport {
        leavitt,
        derham,
        matched: true,
    })
}
