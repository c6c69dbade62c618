//! Presented algebras with a monomial normal-form basis.
//!
//! Four presentation kinds are supported: the free algebra on a finite set of
//! letters, the commutative polynomial ring, the Laurent ring `V[t, t⁻¹]` and
//! the coordinate ring of a plane curve `y² = f(x)`. Every monomial carries a
//! degree; products never raise it beyond the sum of the factors' degrees, so
//! the degree sublevel sets form the length filtration `F_n` of the
//! presentation's generating set.

mod element;
mod profile;

pub use element::Element;
pub use profile::{check_diam_laws, DiamLaw, DiamLawReport, GrowthProfile, Weight};

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalars::Scalar;

pub const DEFAULT_CAP: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraKind {
    Free,
    Polynomial,
    Laurent,
    PlaneCurve,
}

/// A normal-form basis element.
///
/// `exps` is the letter sequence for the free algebra and the exponent vector
/// otherwise (Laurent exponents may be negative; plane-curve monomials are
/// `x^i y^j` with `j ≤ 1`). The unit monomial has degree 0 and empty (free) or
/// all-zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: SmallVec<[i32; 4]>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exps(&self) -> &[i32] {
        &self.exps
    }

    pub fn is_unit(&self) -> bool {
        self.deg == 0
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Degree first; then lexicographic with entries compared by absolute value,
// a negative entry ranking after the positive entry of equal size.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            let key = |e: &i32| (e.unsigned_abs(), *e < 0);
            self.exps
                .iter()
                .map(key)
                .cmp(other.exps.iter().map(key))
        })
    }
}

/// One factor of a raw word: a generator index raised to a (nonzero) power.
/// Negative powers are only meaningful for the Laurent presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub generator: usize,
    pub power: i32,
}

impl Letter {
    pub fn new(generator: usize, power: i32) -> Self {
        Letter { generator, power }
    }
}

/// JSON form of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub kind: AlgebraKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_coeffs: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unital: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    kind: AlgebraKind,
    generators: Vec<String>,
    f_coeffs: Vec<i64>,
    unital: bool,
    cap: u32,
}

impl AlgebraPresentation {
    pub fn free(generators: &[&str]) -> Result<Self> {
        Self::build(AlgebraKind::Free, names(generators), Vec::new(), true, DEFAULT_CAP)
    }

    pub fn polynomial(generators: &[&str]) -> Result<Self> {
        Self::build(AlgebraKind::Polynomial, names(generators), Vec::new(), true, DEFAULT_CAP)
    }

    pub fn laurent(generator: &str) -> Result<Self> {
        Self::build(AlgebraKind::Laurent, names(&[generator]), Vec::new(), true, DEFAULT_CAP)
    }

    /// Coordinate ring of `y² = f(x)`, `f` given by ascending coefficients.
    pub fn plane_curve(f_coeffs: &[i64]) -> Result<Self> {
        Self::build(
            AlgebraKind::PlaneCurve,
            names(&["x", "y"]),
            f_coeffs.to_vec(),
            true,
            DEFAULT_CAP,
        )
    }

    pub fn from_spec(spec: &AlgebraSpec) -> Result<Self> {
        let generators = match (&spec.generators, spec.kind) {
            (Some(g), _) => g.clone(),
            (None, AlgebraKind::PlaneCurve) => names(&["x", "y"]),
            (None, AlgebraKind::Laurent) => names(&["t"]),
            (None, _) => {
                return Err(Error::InvalidPresentation(
                    "generators are required".to_string(),
                ))
            }
        };
        Self::build(
            spec.kind,
            generators,
            spec.f_coeffs.clone().unwrap_or_default(),
            spec.unital.unwrap_or(true),
            spec.cap.unwrap_or(DEFAULT_CAP),
        )
    }

    pub fn to_spec(&self) -> AlgebraSpec {
        AlgebraSpec {
            kind: self.kind,
            generators: Some(self.generators.clone()),
            f_coeffs: (self.kind == AlgebraKind::PlaneCurve).then(|| self.f_coeffs.clone()),
            unital: Some(self.unital),
            cap: Some(self.cap),
        }
    }

    fn build(
        kind: AlgebraKind,
        generators: Vec<String>,
        mut f_coeffs: Vec<i64>,
        unital: bool,
        cap: u32,
    ) -> Result<Self> {
        let invalid = |msg: &str| Err(Error::InvalidPresentation(msg.to_string()));
        if generators.is_empty() {
            return invalid("at least one generator is required");
        }
        let mut sorted = generators.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != generators.len() {
            return invalid("generator names must be distinct");
        }
        match kind {
            AlgebraKind::Laurent if generators.len() != 1 => {
                return invalid("laurent presentation takes exactly one generator")
            }
            AlgebraKind::PlaneCurve => {
                if generators.len() != 2 {
                    return invalid("plane curve takes exactly the generators (x, y)");
                }
                while f_coeffs.last() == Some(&0) {
                    f_coeffs.pop();
                }
                if f_coeffs.len() < 2 {
                    return invalid("plane curve needs deg f >= 1");
                }
            }
            _ => {}
        }
        if !unital && matches!(kind, AlgebraKind::Laurent | AlgebraKind::PlaneCurve) {
            return invalid("laurent and plane-curve presentations are unital");
        }
        if kind != AlgebraKind::PlaneCurve {
            f_coeffs.clear();
        }
        Ok(AlgebraPresentation {
            kind,
            generators,
            f_coeffs,
            unital,
            cap,
        })
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn f_coeffs(&self) -> &[i64] {
        &self.f_coeffs
    }

    pub fn unital(&self) -> bool {
        self.unital
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn is_commutative(&self) -> bool {
        match self.kind {
            AlgebraKind::Free => self.generators.len() == 1,
            _ => true,
        }
    }

    /// Degree of `f` for plane curves.
    pub fn curve_degree(&self) -> usize {
        self.f_coeffs.len().saturating_sub(1)
    }

    /// Weights of `x` and `y` for plane curves: `y²` and `x^{deg f}` weigh the same.
    fn curve_weights(&self) -> (u32, u32) {
        (2, self.curve_degree() as u32)
    }

    pub fn one(&self) -> Monomial {
        let exps = match self.kind {
            AlgebraKind::Free => SmallVec::new(),
            AlgebraKind::PlaneCurve => SmallVec::from_slice(&[0, 0]),
            _ => SmallVec::from_elem(0, self.generators.len()),
        };
        Monomial { deg: 0, exps }
    }

    /// Builds a monomial from exponents (or a letter sequence for the free
    /// algebra), checking normal form and the degree cap.
    pub fn monomial(&self, exps: &[i32]) -> Result<Monomial> {
        let deg = self.degree_of_exps(exps)?;
        if deg > self.cap {
            return Err(Error::DegreeOverflow { degree: deg, cap: self.cap });
        }
        Ok(Monomial {
            deg,
            exps: SmallVec::from_slice(exps),
        })
    }

    fn degree_of_exps(&self, exps: &[i32]) -> Result<u32> {
        let bad = |msg: &str| Err(Error::InvalidPresentation(msg.to_string()));
        let n = self.generators.len();
        match self.kind {
            AlgebraKind::Free => {
                if exps.iter().any(|&e| e < 0 || e as usize >= n) {
                    return bad("letter out of range");
                }
                Ok(exps.len() as u32)
            }
            AlgebraKind::Polynomial => {
                if exps.len() != n || exps.iter().any(|&e| e < 0) {
                    return bad("polynomial exponents must be nonnegative, one per generator");
                }
                Ok(exps.iter().map(|&e| e as u32).sum())
            }
            AlgebraKind::Laurent => {
                if exps.len() != 1 {
                    return bad("laurent monomial has one exponent");
                }
                Ok(exps[0].unsigned_abs())
            }
            AlgebraKind::PlaneCurve => {
                if exps.len() != 2 || exps[0] < 0 || !(0..=1).contains(&exps[1]) {
                    return bad("plane-curve monomial is x^i y^j with j in {0, 1}");
                }
                let (wx, wy) = self.curve_weights();
                Ok(wx * exps[0] as u32 + wy * exps[1] as u32)
            }
        }
    }

    /// The monomial of a single generator.
    pub fn generator(&self, index: usize) -> Monomial {
        self.letter_monomial(index, 1)
            .expect("generator index within range")
    }

    fn letter_monomial(&self, index: usize, power: i32) -> Result<Monomial> {
        let n = self.generators.len();
        if index >= n {
            return Err(Error::InvalidPresentation(format!("no generator {index}")));
        }
        let exps: Vec<i32> = match self.kind {
            AlgebraKind::Free => {
                if power < 0 {
                    return Err(Error::InvalidPresentation(
                        "negative powers need the laurent presentation".into(),
                    ));
                }
                vec![index as i32; power as usize]
            }
            AlgebraKind::Laurent => vec![power],
            AlgebraKind::Polynomial | AlgebraKind::PlaneCurve => {
                if power < 0 {
                    return Err(Error::InvalidPresentation(
                        "negative powers need the laurent presentation".into(),
                    ));
                }
                let mut v = vec![0; n];
                v[index] = power;
                v
            }
        };
        self.monomial(&exps)
    }

    /// Product of two normal-form monomials, rewritten into normal form.
    pub fn mul(&self, a: &Monomial, b: &Monomial) -> Result<Element> {
        let deg = a.deg + b.deg;
        if deg > self.cap {
            return Err(Error::DegreeOverflow { degree: deg, cap: self.cap });
        }
        match self.kind {
            AlgebraKind::Free => {
                let mut exps = a.exps.clone();
                exps.extend_from_slice(&b.exps);
                Ok(Element::monomial(Monomial { deg, exps }))
            }
            AlgebraKind::Polynomial | AlgebraKind::Laurent => {
                let exps: SmallVec<[i32; 4]> =
                    a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
                let m = self.monomial(&exps)?;
                Ok(Element::monomial(m))
            }
            AlgebraKind::PlaneCurve => {
                let i = a.exps[0] + b.exps[0];
                let j = a.exps[1] + b.exps[1];
                if j < 2 {
                    return Ok(Element::monomial(self.monomial(&[i, j])?));
                }
                // y² = f(x)
                let mut out = Element::zero();
                for (k, &c) in self.f_coeffs.iter().enumerate() {
                    if c != 0 {
                        out.add_term(self.monomial(&[i + k as i32, 0])?, Scalar::from(c));
                    }
                }
                Ok(out)
            }
        }
    }

    /// Normal form of a raw word `l₁ l₂ ⋯ l_k`.
    pub fn normalize(&self, word: &[Letter]) -> Result<Element> {
        let mut acc = Element::monomial(self.one());
        for letter in word {
            if letter.power == 0 {
                continue;
            }
            let factor = if self.kind == AlgebraKind::Laurent {
                Element::monomial(self.letter_monomial(letter.generator, letter.power)?)
            } else {
                if letter.power < 0 {
                    return Err(Error::InvalidPresentation(
                        "negative powers need the laurent presentation".into(),
                    ));
                }
                let g = Element::monomial(self.generator_checked(letter.generator)?);
                let mut f = Element::monomial(self.one());
                for _ in 0..letter.power {
                    f = f.mul(&g, self)?;
                }
                f
            };
            acc = acc.mul(&factor, self)?;
        }
        Ok(acc)
    }

    fn generator_checked(&self, index: usize) -> Result<Monomial> {
        if index >= self.generators.len() {
            return Err(Error::InvalidPresentation(format!("no generator {index}")));
        }
        Ok(self.generator(index))
    }

    /// Least `n` with `x ∈ F_n`.
    pub fn filtration_degree(&self, x: &Element) -> Result<u32> {
        x.degree().ok_or(Error::ZeroElement)
    }

    /// All normal-form monomials of degree at most `d`, in basis order.
    /// The unit monomial is included only for unital presentations.
    pub fn monomials_up_to(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let n = self.generators.len();
        match self.kind {
            AlgebraKind::Free => {
                let mut layer: Vec<Vec<i32>> = vec![Vec::new()];
                for len in 0..=d {
                    for w in &layer {
                        out.push(Monomial {
                            deg: len,
                            exps: SmallVec::from_slice(w),
                        });
                    }
                    if len == d {
                        break;
                    }
                    layer = layer
                        .iter()
                        .flat_map(|w| {
                            (0..n as i32).map(move |g| {
                                let mut w = w.clone();
                                w.push(g);
                                w
                            })
                        })
                        .collect();
                }
            }
            AlgebraKind::Polynomial => {
                let mut exps = vec![0i32; n];
                collect_compositions(&mut exps, 0, d as i32, &mut |e| {
                    let deg = e.iter().sum::<i32>() as u32;
                    out.push(Monomial {
                        deg,
                        exps: SmallVec::from_slice(e),
                    });
                });
            }
            AlgebraKind::Laurent => {
                for k in -(d as i32)..=(d as i32) {
                    out.push(Monomial {
                        deg: k.unsigned_abs(),
                        exps: SmallVec::from_slice(&[k]),
                    });
                }
            }
            AlgebraKind::PlaneCurve => {
                let (wx, wy) = self.curve_weights();
                for j in 0..=1u32 {
                    let mut i = 0u32;
                    while wx * i + wy * j <= d {
                        out.push(Monomial {
                            deg: wx * i + wy * j,
                            exps: SmallVec::from_slice(&[i as i32, j as i32]),
                        });
                        i += 1;
                    }
                }
            }
        }
        if !self.unital {
            out.retain(|m| !m.is_unit());
        }
        out.sort();
        out
    }

    /// Human-readable name of a monomial, e.g. `t^-2`, `x^2*y`, `a*b*a`.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_unit() {
            return "1".to_string();
        }
        match self.kind {
            AlgebraKind::Free => m
                .exps
                .iter()
                .map(|&g| self.generators[g as usize].clone())
                .collect::<Vec<_>>()
                .join("*"),
            _ => {
                let parts: Vec<String> = m
                    .exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            self.generators[i].clone()
                        } else {
                            format!("{}^{}", self.generators[i], e)
                        }
                    })
                    .collect();
                parts.join("*")
            }
        }
    }
}

fn names(gens: &[&str]) -> Vec<String> {
    gens.iter().map(|s| s.to_string()).collect()
}

fn collect_compositions(exps: &mut Vec<i32>, pos: usize, budget: i32, f: &mut impl FnMut(&[i32])) {
    if pos == exps.len() {
        f(exps);
        return;
    }
    for e in 0..=budget {
        exps[pos] = e;
        collect_compositions(exps, pos + 1, budget - e, f);
    }
    exps[pos] = 0;
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AlgebraKind::Free => "free",
            AlgebraKind::Polynomial => "polynomial",
            AlgebraKind::Laurent => "laurent",
            AlgebraKind::PlaneCurve => "plane_curve",
        };
        f.write_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(a: &AlgebraPresentation, terms: &[(&[i32], i64)]) -> Element {
        let mut e = Element::zero();
        for (exps, c) in terms {
            e.add_term(a.monomial(exps).unwrap(), Scalar::from(*c));
        }
        e
    }

    #[test]
    fn laurent_inverse_cancels() {
        let a = AlgebraPresentation::laurent("t").unwrap();
        let x = a.normalize(&[Letter::new(0, 1), Letter::new(0, -1)]).unwrap();
        assert_eq!(x, Element::monomial(a.one()));
    }

    #[test]
    fn plane_curve_relation() {
        let a = AlgebraPresentation::plane_curve(&[0, -1, 0, 1]).unwrap();
        let x = a.normalize(&[Letter::new(1, 1), Letter::new(1, 1)]).unwrap();
        assert_eq!(x, el(&a, &[(&[3, 0], 1), (&[1, 0], -1)]));
    }

    #[test]
    fn free_word_unchanged() {
        let a = AlgebraPresentation::free(&["a", "b"]).unwrap();
        let x = a.normalize(&[Letter::new(0, 1), Letter::new(1, 1)]).unwrap();
        assert_eq!(x, el(&a, &[(&[0, 1], 1)]));
        let y = a.normalize(&[Letter::new(1, 1), Letter::new(0, 1)]).unwrap();
        assert_ne!(x, y);
    }

    #[test]
    fn filtration_degree_examples() {
        let p = AlgebraPresentation::polynomial(&["t"]).unwrap();
        assert_eq!(p.filtration_degree(&el(&p, &[(&[3], 1), (&[1], 2)])).unwrap(), 3);
        let l = AlgebraPresentation::laurent("t").unwrap();
        assert_eq!(l.filtration_degree(&el(&l, &[(&[-2], 1)])).unwrap(), 2);
        let f = AlgebraPresentation::free(&["a", "b"]).unwrap();
        assert_eq!(f.filtration_degree(&el(&f, &[(&[0, 1], 1), (&[1, 0], 1)])).unwrap(), 2);
        assert_eq!(f.filtration_degree(&Element::zero()), Err(Error::ZeroElement));
    }

    #[test]
    fn degree_cap_is_enforced() {
        let a = AlgebraPresentation::polynomial(&["t"]).unwrap().with_cap(4);
        let t3 = a.monomial(&[3]).unwrap();
        assert!(matches!(a.mul(&t3, &t3), Err(Error::DegreeOverflow { degree: 6, cap: 4 })));
    }

    #[test]
    fn invalid_presentations() {
        assert!(AlgebraPresentation::plane_curve(&[3]).is_err());
        assert!(AlgebraPresentation::from_spec(&AlgebraSpec {
            kind: AlgebraKind::Laurent,
            generators: Some(vec!["s".into(), "t".into()]),
            f_coeffs: None,
            unital: None,
            cap: None,
        })
        .is_err());
    }

    #[test]
    fn spec_json_parses() {
        let spec: AlgebraSpec = serde_json::from_str(r#"{"kind":"plane_curve","f_coeffs":[0,-1,0,1]}"#).unwrap();
        let a = AlgebraPresentation::from_spec(&spec).unwrap();
        assert_eq!(a.curve_degree(), 3);
        assert_eq!(a.generators(), &["x".to_string(), "y".to_string()]);
        let spec: AlgebraSpec = serde_json::from_str(r#"{"kind":"laurent","generators":["t"]}"#).unwrap();
        assert_eq!(AlgebraPresentation::from_spec(&spec).unwrap().kind(), AlgebraKind::Laurent);
    }

    #[test]
    fn monomial_enumeration_counts() {
        let f = AlgebraPresentation::free(&["a", "b"]).unwrap();
        assert_eq!(f.monomials_up_to(3).len(), 1 + 2 + 4 + 8);
        let p = AlgebraPresentation::polynomial(&["x", "y"]).unwrap();
        assert_eq!(p.monomials_up_to(2).len(), 6);
        let l = AlgebraPresentation::laurent("t").unwrap();
        assert_eq!(l.monomials_up_to(3).len(), 7);
        let c = AlgebraPresentation::plane_curve(&[0, -1, 0, 1]).unwrap();
        // x^i (weight 2i) and x^i y (weight 2i + 3) up to 6: 1, x, x², x³, y, xy
        assert_eq!(c.monomials_up_to(6).len(), 6);
    }

    #[test]
    fn laurent_order_puts_inverse_after() {
        let l = AlgebraPresentation::laurent("t").unwrap();
        let t = l.monomial(&[1]).unwrap();
        let ti = l.monomial(&[-1]).unwrap();
        assert!(t < ti);
    }
}
