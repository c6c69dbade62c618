//! Homology of the X-complex `S ⇄ Ω¹S/[,]` on a finite window.
//!
//! For a commutative presentation `b̃ = 0`, so the even homology is
//! `ker(q∘d)` and the odd homology is `coker(q∘d)`. Both are computed on the
//! degree-`D` slice with the quotient padded to degree `D + 1`, then
//! recomputed at `D + 5`; disagreement is reported as [`Error::Unstable`].

use serde::{Deserialize, Serialize};

use super::quotient::{to_vec, CommutatorQuotient, OneFormKey};
use super::Form;
use crate::algebra::{AlgebraKind, AlgebraPresentation, Element, Monomial};
use crate::error::{Error, Result};
use crate::linalg::SparseEchelon;
use crate::scalars::{PrimeConfig, Scalar};
use crate::univariate::UniPoly;

pub const STABILITY_PAD: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XComplexReport {
    pub h0: usize,
    pub h1: usize,
    /// Representatives of the `h1` classes.
    pub reps: Vec<String>,
    /// Representatives of the `h0` classes (cycles of `q∘d`).
    pub reps0: Vec<String>,
    pub truncation: u32,
    pub stable: bool,
}

/// Window computation: `(h0, h1, degree-0 cycles, odd representatives)`.
pub struct XWindow {
    pub h0: usize,
    pub h1: usize,
    pub cycles: Vec<Element>,
    pub reps: Vec<Form>,
    pub rep_labels: Vec<String>,
}

pub fn xcomplex_homology_at(alg: &AlgebraPresentation, d: u32) -> Result<XWindow> {
    if !alg.is_commutative() {
        return Err(Error::Unsupported(
            "X-complex homology is computed for commutative presentations".into(),
        ));
    }
    let q = CommutatorQuotient::new(alg, d + 1)?;
    let alg = q.algebra().clone();
    let domain = alg.monomials_up_to(d);

    // image of q∘d, and kernel vectors via the coefficient bookkeeping
    let mut image = q.relations().clone();
    let base_rank = image.rank();
    let mut cycles = Vec::new();
    let mut tracked: SparseEchelon<TrackedKey> = SparseEchelon::new();
    for m in &domain {
        let dm = Form::exact(&Element::monomial(m.clone()), &alg);
        let reduced = q.relations().reduce(&to_vec(&dm));
        image.insert(&reduced);
        // kernel: stack [q∘d(m) | e_m] and read off relations among images
        let mut row: std::collections::BTreeMap<TrackedKey, Scalar> = reduced
            .into_iter()
            .map(|(k, c)| (TrackedKey::Image(k), c))
            .collect();
        row.insert(TrackedKey::Source(m.clone()), Scalar::one());
        let r = tracked.reduce(&row);
        if r.keys().all(|k| matches!(k, TrackedKey::Source(_))) {
            let e: Element = r
                .into_iter()
                .filter_map(|(k, c)| match k {
                    TrackedKey::Source(m) => Some((m, c)),
                    TrackedKey::Image(_) => None,
                })
                .collect();
            cycles.push(e);
        } else {
            tracked.insert(&row);
        }
    }
    let rank_img = image.rank() - base_rank;
    let h0 = domain.len() - rank_img;
    debug_assert_eq!(cycles.len(), h0);

    // odd homology: classes of F_D Ω¹ modulo the image
    let mut reps = Vec::new();
    let mut span = image.clone();
    for key in q.basis_keys(d) {
        let v = [(key.clone(), Scalar::one())].into_iter().collect();
        if span.insert(&v) {
            reps.push(Form::basis(&[key.m0.clone(), key.m1.clone()], Scalar::one()));
        }
    }
    let h1 = reps.len();

    let mut rep_labels: Vec<String> = reps.iter().map(|r| r.format(&alg)).collect();
    if alg.kind() == AlgebraKind::PlaneCurve {
        if let Some(labels) = invariant_differential_reps(&alg, &q, &image, h1, d)? {
            rep_labels = labels;
        }
    }
    Ok(XWindow {
        h0,
        h1,
        cycles,
        reps,
        rep_labels,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum TrackedKey {
    Source(Monomial),
    Image(OneFormKey),
}

/// `dx/y = a(x)·y dx + 2b(x) dy` where `a f + b f′ = 1`.
pub(crate) fn invariant_differential(alg: &AlgebraPresentation, shift: i32) -> Result<Option<Form>> {
    let f = UniPoly::from_ints(alg.f_coeffs());
    let (g, a, b) = UniPoly::ext_gcd(&f, &f.derivative());
    if g.degree() != Some(0) {
        return Ok(None);
    }
    let x = alg.monomial(&[1, 0])?;
    let y = alg.monomial(&[0, 1])?;
    let mut w = Form::zero();
    for (i, c) in a.coeffs().iter().enumerate() {
        let m0 = alg.monomial(&[i as i32 + shift, 1])?;
        w = w.add(&Form::basis(&[m0, x.clone()], c.clone()));
    }
    for (i, c) in b.coeffs().iter().enumerate() {
        let m0 = alg.monomial(&[i as i32 + shift, 0])?;
        w = w.add(&Form::basis(&[m0, y.clone()], c * &Scalar::from(2)));
    }
    Ok(Some(w))
}

fn invariant_differential_reps(
    alg: &AlgebraPresentation,
    q: &CommutatorQuotient,
    image: &SparseEchelon<OneFormKey>,
    h1: usize,
    d: u32,
) -> Result<Option<Vec<String>>> {
    let mut span = image.clone();
    let mut labels = Vec::new();
    let mut k = 0;
    while labels.len() < h1 {
        let Some(w) = invariant_differential(alg, k)? else {
            return Ok(None);
        };
        if w.filtration_degree().unwrap_or(0) > d {
            return Ok(None);
        }
        if span.insert(&q.vector(&w)?) {
            labels.push(match k {
                0 => "dx/y".to_string(),
                1 => "x*dx/y".to_string(),
                _ => format!("x^{k}*dx/y"),
            });
        } else {
            return Ok(None);
        }
        k += 1;
    }
    Ok(Some(labels))
}

/// X-complex homology at truncation `D`, certified against `D + 5`.
pub fn xcomplex_homology(
    alg: &AlgebraPresentation,
    _cfg: &PrimeConfig,
    d: u32,
) -> Result<XComplexReport> {
    let w = xcomplex_homology_at(alg, d)?;
    let padded = xcomplex_homology_at(alg, d + STABILITY_PAD)?;
    if (w.h0, w.h1) != (padded.h0, padded.h1) {
        return Err(Error::Unstable {
            d,
            padded: d + STABILITY_PAD,
            at_d: (w.h0, w.h1),
            at_padded: (padded.h0, padded.h1),
        });
    }
    let a = alg.clone().with_cap(alg.cap().max(3 * (d + STABILITY_PAD) + 6));
    Ok(XComplexReport {
        h0: w.h0,
        h1: w.h1,
        reps: w.rep_labels,
        reps0: w.cycles.iter().map(|e| e.format(&a)).collect(),
        truncation: d,
        stable: true,
    })
}
