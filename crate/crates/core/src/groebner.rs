//! Strong Gröbner bases over the integers, degree-lexicographic order.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// `|α| < |β| ⇒ α ≺ β`; ties broken lexicographically, first variable largest.
pub fn deglex_compare(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Exponent vector ordered by deglex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exp(SmallVec<[u32; 4]>);

impl Exp {
    pub fn new(e: &[u32]) -> Self {
        Exp(SmallVec::from_slice(e))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Exp) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn sub(&self, other: &Exp) -> Exp {
        Exp(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn add(&self, other: &Exp) -> Exp {
        Exp(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn lcm(&self, other: &Exp) -> Exp {
        Exp(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

impl PartialOrd for Exp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exp {
    fn cmp(&self, other: &Self) -> Ordering {
        deglex_compare(&self.0, &other.0)
    }
}

/// Sparse integer polynomial in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Exp, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        IntPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(e: &[u32], c: impl Into<BigInt>) -> Self {
        let mut p = IntPoly::zero(e.len());
        p.add_term(Exp::new(e), c.into());
        p
    }

    pub fn from_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        let mut p = IntPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length must match the variable count");
            p.add_term(Exp::new(e), BigInt::from(*c));
        }
        p
    }

    fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading exponent and coefficient.
    pub fn lead(&self) -> Option<(&Exp, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.lead().map(|(e, _)| e.degree())
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect();
        out
    }

    /// `c·x^e·self`.
    pub fn mul_term(&self, e: &Exp, c: &BigInt) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(f, x)| (f.add(e), x * c)).collect();
        out
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars);
        for (e, c) in &other.terms {
            out = out.add(&self.mul_term(e, c));
        }
        out
    }

    pub fn format(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .0
                    .iter()
                    .zip(vars)
                    .filter(|(k, _)| **k > 0)
                    .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    mono.join("*")
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.format(&vars))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub e: Vec<u32>,
    pub c: i64,
}

/// Ideal file: `{"vars":["x","y"],"gens":[[{"e":[1,0],"c":2}], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSpec {
    pub vars: Vec<String>,
    pub gens: Vec<Vec<TermSpec>>,
}

impl IdealSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidPresentation(format!("ideal file: {e}")))
    }

    pub fn polys(&self) -> Result<Vec<IntPoly>> {
        let n = self.vars.len();
        self.gens
            .iter()
            .map(|g| {
                let mut p = IntPoly::zero(n);
                for t in g {
                    if t.e.len() != n {
                        return Err(Error::InvalidPresentation(format!(
                            "exponent {:?} does not match {} variables",
                            t.e, n
                        )));
                    }
                    p.add_term(Exp::new(&t.e), BigInt::from(t.c));
                }
                Ok(p)
            })
            .collect()
    }
}

/// `lt(b)` strongly divides `lt(g)` for some `b` whenever `g` is in the ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongGB {
    nvars: usize,
    basis: Vec<IntPoly>,
}

impl StrongGB {
    pub fn basis(&self) -> &[IntPoly] {
        &self.basis
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_member(&self, g: &IntPoly) -> bool {
        strong_divide(g, self).remainder.is_zero()
    }

    /// Index of the first basis element whose leading term strongly divides `lt(g)`.
    pub fn strong_divisor(&self, g: &IntPoly) -> Option<usize> {
        let (e, c) = g.lead()?;
        find_divisor(&self.basis, e, c)
    }
}

fn find_divisor(basis: &[IntPoly], e: &Exp, c: &BigInt) -> Option<usize> {
    basis.iter().position(|b| {
        let (be, bc) = b.lead().expect("basis elements are nonzero");
        be.divides(e) && c.is_multiple_of(bc)
    })
}

fn top_reduce(mut h: IntPoly, basis: &[IntPoly]) -> IntPoly {
    while let Some((e, c)) = h.lead() {
        let Some(i) = find_divisor(basis, e, c) else {
            break;
        };
        let (be, bc) = basis[i].lead().unwrap();
        let shift = e.sub(be);
        let q = c / bc;
        h = h.sub(&basis[i].mul_term(&shift, &q));
    }
    h
}

fn normalize_sign(p: IntPoly) -> IntPoly {
    match p.lead() {
        Some((_, c)) if c.is_negative() => p.scale(&-BigInt::one()),
        _ => p,
    }
}

/// `(S, G)` polynomials of a pair.
fn pair_polys(f: &IntPoly, g: &IntPoly) -> (IntPoly, IntPoly) {
    let (fe, fc) = f.lead().unwrap();
    let (ge, gc) = g.lead().unwrap();
    let l = fe.lcm(ge);
    let (sf, sg) = (l.sub(fe), l.sub(ge));
    let c = fc.lcm(gc);
    let s = f.mul_term(&sf, &(&c / fc)).sub(&g.mul_term(&sg, &(&c / gc)));
    let eg = fc.extended_gcd(gc);
    let gp = f.mul_term(&sf, &eg.x).add(&g.mul_term(&sg, &eg.y));
    (s, gp)
}

/// Buchberger over `Z` with S- and G-polynomials, pairs by smallest lcm.
pub fn strong_gb(gens: &[IntPoly]) -> Result<StrongGB> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidPresentation("empty generator list".into()));
    };
    let nvars = first.nvars();
    if gens.iter().any(|g| g.nvars() != nvars) {
        return Err(Error::InvalidPresentation("generators use different variable counts".into()));
    }
    let mut basis: Vec<IntPoly> = Vec::new();
    let mut pairs: Vec<(Exp, usize, usize)> = Vec::new();
    let push = |p: IntPoly, basis: &mut Vec<IntPoly>, pairs: &mut Vec<(Exp, usize, usize)>| {
        let k = basis.len();
        let le = p.lead().unwrap().0.clone();
        for (i, b) in basis.iter().enumerate() {
            pairs.push((b.lead().unwrap().0.lcm(&le), i, k));
        }
        basis.push(p);
    };
    for g in gens {
        let r = normalize_sign(top_reduce(g.clone(), &basis));
        if !r.is_zero() {
            push(r, &mut basis, &mut pairs);
        }
    }
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (la, ia, ja) = &pairs[a];
                let (lb, ib, jb) = &pairs[b];
                la.cmp(lb).then((ia, ja).cmp(&(ib, jb)))
            })
            .unwrap();
        let (_, i, j) = pairs.swap_remove(best);
        let (s, g) = pair_polys(&basis[i], &basis[j]);
        for h in [g, s] {
            let r = normalize_sign(top_reduce(h, &basis));
            if !r.is_zero() {
                push(r, &mut basis, &mut pairs);
            }
        }
    }
    // drop elements whose leading term another element strongly divides
    let mut keep: Vec<IntPoly> = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        let (e, c) = b.lead().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, o)| {
            if i == j {
                return false;
            }
            let (oe, oc) = o.lead().unwrap();
            let divides = oe.divides(e) && c.is_multiple_of(oc);
            let same = oe == e && oc.abs() == c.abs();
            divides && (!same || j < i)
        });
        if !redundant {
            keep.push(b.clone());
        }
    }
    keep.sort_by(|a, b| a.lead().unwrap().0.cmp(b.lead().unwrap().0).then_with(|| a.lead().unwrap().1.cmp(b.lead().unwrap().1)));
    Ok(StrongGB { nvars, basis: keep })
}

/// `g = Σ multiplierⱼ·basisⱼ + remainder`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionCertificate {
    pub multipliers: Vec<(IntPoly, usize)>,
    pub remainder: IntPoly,
}

impl DivisionCertificate {
    pub fn reconstruct(&self, gb: &StrongGB) -> IntPoly {
        let mut out = self.remainder.clone();
        for (m, j) in &self.multipliers {
            out = out.add(&m.mul(&gb.basis[*j]));
        }
        out
    }

    /// `max(0, deg(pⱼ fⱼ) − deg g)` over the multipliers.
    pub fn shift(&self, gb: &StrongGB, g: &IntPoly) -> u32 {
        let dg = g.degree().unwrap_or(0);
        self.multipliers
            .iter()
            .filter_map(|(m, j)| m.mul(&gb.basis[*j]).degree())
            .map(|d| d.saturating_sub(dg))
            .max()
            .unwrap_or(0)
    }
}

/// Division by leading terms; terms that no leading term strongly divides
/// go to the remainder.
pub fn strong_divide(g: &IntPoly, gb: &StrongGB) -> DivisionCertificate {
    let mut mult: BTreeMap<usize, IntPoly> = BTreeMap::new();
    let mut rem = IntPoly::zero(g.nvars());
    let mut h = g.clone();
    while let Some((e, c)) = h.lead() {
        let (e, c) = (e.clone(), c.clone());
        match find_divisor(&gb.basis, &e, &c) {
            Some(i) => {
                let (be, bc) = gb.basis[i].lead().unwrap();
                let shift = e.sub(be);
                let q = &c / bc;
                h = h.sub(&gb.basis[i].mul_term(&shift, &q));
                let m = mult.entry(i).or_insert_with(|| IntPoly::zero(g.nvars()));
                m.add_term(shift, q);
            }
            None => {
                h.add_term(e.clone(), -c.clone());
                rem.add_term(e, c);
            }
        }
    }
    DivisionCertificate {
        multipliers: mult.into_iter().filter(|(_, m)| !m.is_zero()).map(|(i, m)| (m, i)).collect(),
        remainder: rem,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub samples: usize,
    pub max_degree: u32,
    /// Largest observed `deg(pⱼ fⱼ) − deg g`, floored at 0.
    pub shift: u32,
    /// Sampled members with a nonzero remainder (expected none).
    pub nonmembers: usize,
    /// Sampled members whose leading term no basis element strongly divides.
    pub strong_failures: usize,
    pub basis_size: usize,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.shift == 0 && self.nonmembers == 0 && self.strong_failures == 0
    }
}

/// Random polynomial with total degree at most `deg`.
pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, deg: u32, terms: usize, coeff: i64) -> IntPoly {
    let mut p = IntPoly::zero(nvars);
    for _ in 0..terms {
        let total = rng.gen_range(0..=deg);
        let mut e = vec![0u32; nvars];
        if nvars > 0 {
            for _ in 0..total {
                e[rng.gen_range(0..nvars)] += 1;
            }
        }
        p.add_term(Exp::new(&e), BigInt::from(rng.gen_range(-coeff..=coeff)));
    }
    p
}

/// Samples ideal members `Σ rᵢ genᵢ` of degree at most `max_deg` and measures
/// the filtration shift of their strong-division certificates.
pub fn filtered_noetherian_witness<R: Rng>(
    gens: &[IntPoly],
    samples: usize,
    max_deg: u32,
    rng: &mut R,
) -> Result<WitnessReport> {
    let gb = strong_gb(gens)?;
    let nvars = gb.nvars();
    let mut shift = 0;
    let mut nonmembers = 0;
    let mut strong_failures = 0;
    for _ in 0..samples {
        let mut g = IntPoly::zero(nvars);
        for f in gens {
            let Some(df) = f.degree() else { continue };
            if df > max_deg {
                continue;
            }
            g = g.add(&random_poly(rng, nvars, max_deg - df, 3, 5).mul(f));
        }
        if g.is_zero() {
            continue;
        }
        if gb.strong_divisor(&g).is_none() {
            strong_failures += 1;
        }
        let cert = strong_divide(&g, &gb);
        if !cert.remainder.is_zero() {
            nonmembers += 1;
        }
        debug_assert_eq!(cert.reconstruct(&gb), g);
        shift = shift.max(cert.shift(&gb, &g));
    }
    Ok(WitnessReport {
        samples,
        max_degree: max_deg,
        shift,
        nonmembers,
        strong_failures,
        basis_size: gb.basis.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(terms: &[(&[u32], i64)]) -> IntPoly {
        IntPoly::from_terms(terms[0].0.len(), terms)
    }

    #[test]
    fn deglex() {
        assert_eq!(deglex_compare(&[2, 0], &[1, 1]), Ordering::Greater);
        assert_eq!(deglex_compare(&[1, 0], &[0, 2]), Ordering::Less);
        assert_eq!(deglex_compare(&[1, 1], &[1, 1]), Ordering::Equal);
    }

    #[test]
    fn two_x_three_y() {
        let gb = strong_gb(&[p(&[(&[1, 0], 2)]), p(&[(&[0, 1], 3)])]).unwrap();
        let leads: Vec<(Vec<u32>, BigInt)> = gb
            .basis()
            .iter()
            .map(|b| {
                let (e, c) = b.lead().unwrap();
                (e.as_slice().to_vec(), c.clone())
            })
            .collect();
        assert!(leads.contains(&(vec![1, 0], BigInt::from(2))));
        assert!(leads.contains(&(vec![0, 1], BigInt::from(3))));
        assert!(leads.contains(&(vec![1, 1], BigInt::from(1))));

        let g = p(&[(&[1, 1], 3)]);
        let cert = strong_divide(&g, &gb);
        assert!(cert.remainder.is_zero());
        assert_eq!(cert.reconstruct(&gb), g);
        assert_eq!(cert.shift(&gb, &g), 0);

        assert!(!gb.is_member(&p(&[(&[1, 0], 1)])));
        let zero = strong_divide(&IntPoly::zero(2), &gb);
        assert!(zero.multipliers.is_empty() && zero.remainder.is_zero());
    }

    #[test]
    fn constants_reduce_to_gcd() {
        let gb = strong_gb(&[p(&[(&[], 6)]), p(&[(&[], 10)])]).unwrap();
        assert_eq!(gb.basis(), &[p(&[(&[], 2)])]);
    }

    #[test]
    fn single_generator() {
        let gb = strong_gb(&[p(&[(&[1], 1)])]).unwrap();
        assert_eq!(gb.basis(), &[p(&[(&[1], 1)])]);
    }

    #[test]
    fn witnesses() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = filtered_noetherian_witness(&[p(&[(&[1, 0], 2)]), p(&[(&[0, 1], 3)])], 200, 6, &mut rng).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = filtered_noetherian_witness(
            &[p(&[(&[2, 0], 1), (&[0, 1], -1)]), p(&[(&[0, 2], 1), (&[0, 0], -1)])],
            200,
            6,
            &mut rng,
        )
        .unwrap();
        assert!(r.passed(), "{r:?}");
        let r = filtered_noetherian_witness(&[p(&[(&[1, 0], 1), (&[0, 1], 1)])], 200, 6, &mut rng).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn ideal_json() {
        let s = IdealSpec::from_json(r#"{"vars":["x","y"],"gens":[[{"e":[1,0],"c":2}],[{"e":[0,1],"c":3}]]}"#).unwrap();
        let gens = s.polys().unwrap();
        assert_eq!(gens[0], p(&[(&[1, 0], 2)]));
        let bad = IdealSpec::from_json(r#"{"vars":["x"],"gens":[[{"e":[1,0],"c":2}]]}"#).unwrap();
        assert!(bad.polys().is_err());
    }
}
