//! Noncommutative differential forms `Ω R`.
//!
//! A basis tuple `(m₀, m₁, …, m_n)` stands for `m₀ dm₁ ⋯ dm_n`; `m₀` may be the
//! unit and the remaining slots never are (`d1 = 0`). A [`Form`] may mix
//! degrees, so the same type carries homogeneous forms, mixed forms and the
//! even forms used by the Fedosov product.

mod quotient;
mod xcomplex;

pub use quotient::{commutator_quotient_rep, CommutatorQuotient, OneFormKey};
pub use xcomplex::{xcomplex_homology, xcomplex_homology_at, XComplexReport};

use std::collections::btree_map;
use std::collections::{BTreeMap, BTreeSet};

use smallvec::SmallVec;

use crate::algebra::{AlgebraPresentation, Element, Monomial};
use crate::error::{Error, Result};
use crate::scalars::{Scalar, Valuation};

pub type Tuple = SmallVec<[Monomial; 4]>;

/// Largest form degree any operation will produce.
pub const MAX_FORM_DEGREE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Form {
    terms: BTreeMap<Tuple, Scalar>,
}

/// Alias used where an inhomogeneous result is expected.
pub type MixedForm = Form;

fn sign(k: usize) -> Scalar {
    if k % 2 == 0 {
        Scalar::one()
    } else {
        Scalar::from(-1)
    }
}

/// Filtration degree of a tuple: the sum of its slot degrees.
pub fn tuple_degree(t: &[Monomial]) -> u32 {
    t.iter().map(Monomial::degree).sum()
}

impl Form {
    pub fn zero() -> Self {
        Form::default()
    }

    /// `m₀ dm₁ ⋯ dm_n` with coefficient `c`; zero if some `m_i` (`i ≥ 1`) is the unit.
    pub fn basis(tuple: &[Monomial], c: Scalar) -> Self {
        let mut f = Form::zero();
        if tuple[1..].iter().all(|m| !m.is_unit()) {
            f.add_term(tuple.iter().cloned().collect(), c);
        }
        f
    }

    /// The degree-0 form of an algebra element.
    pub fn from_element(x: &Element) -> Self {
        let mut f = Form::zero();
        for (m, c) in x.iter() {
            f.add_term(SmallVec::from_elem(m.clone(), 1), c.clone());
        }
        f
    }

    /// `dx` for an algebra element `x`.
    pub fn exact(x: &Element, alg: &AlgebraPresentation) -> Form {
        let mut f = Form::zero();
        for (m, c) in x.iter() {
            if !m.is_unit() {
                f.add_term(SmallVec::from_vec(vec![alg.one(), m.clone()]), c.clone());
            }
        }
        f
    }

    pub fn add_term(&mut self, t: Tuple, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Tuple, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &[Monomial]) -> Scalar {
        self.terms.get(t).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Form degrees present.
    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(|t| t.len() - 1).collect()
    }

    /// The common degree, if the form is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.degrees();
        (d.len() == 1).then(|| *d.iter().next().unwrap())
    }

    pub fn component(&self, n: usize) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.len() == n + 1)
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect(),
        }
    }

    /// Components split by degree.
    pub fn components(&self) -> BTreeMap<usize, Form> {
        let mut out: BTreeMap<usize, Form> = BTreeMap::new();
        for (t, c) in &self.terms {
            out.entry(t.len() - 1).or_default().add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Form) {
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Form) -> Form {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero();
        }
        Form {
            terms: self.terms.iter().map(|(t, x)| (t.clone(), x * c)).collect(),
        }
    }

    pub fn neg(&self) -> Form {
        self.scale(&Scalar::from(-1))
    }

    /// Minimum coefficient valuation, `+∞` for zero.
    pub fn min_valuation(&self, p: u64) -> Valuation {
        self.terms
            .values()
            .map(|c| c.valuation(p))
            .min()
            .unwrap_or(Valuation::Infinite)
    }

    /// Largest filtration degree of a tuple, `None` for zero.
    pub fn filtration_degree(&self) -> Option<u32> {
        self.terms.keys().map(|t| tuple_degree(t)).max()
    }

    /// `d(x₀ dx₁ ⋯ dx_n) = dx₀ dx₁ ⋯ dx_n`, and `d(1·ω) = 0`.
    pub fn differential(&self, alg: &AlgebraPresentation) -> Result<Form> {
        let mut out = Form::zero();
        for (t, c) in &self.terms {
            if t[0].is_unit() {
                continue;
            }
            if t.len() > MAX_FORM_DEGREE {
                return Err(Error::DegreeOverflow {
                    degree: t.len() as u32,
                    cap: MAX_FORM_DEGREE as u32,
                });
            }
            let mut nt: Tuple = SmallVec::with_capacity(t.len() + 1);
            nt.push(alg.one());
            nt.extend(t.iter().cloned());
            out.add_term(nt, c.clone());
        }
        Ok(out)
    }

    /// Product in the differential graded algebra `Ω R`.
    pub fn mul(&self, other: &Form, alg: &AlgebraPresentation) -> Result<Form> {
        let mut out = Form::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = ca * cb;
                mul_tuples(a, b, &c, alg, &mut out)?;
            }
        }
        Ok(out)
    }

    /// Fedosov product `ξ⊙η = ξη − (−1)^{|ξ||η|} dξ dη`, extended bilinearly.
    pub fn fedosov(&self, other: &Form, alg: &AlgebraPresentation) -> Result<Form> {
        let mut out = self.mul(other, alg)?;
        for (i, xi) in self.components() {
            let dxi = xi.differential(alg)?;
            if dxi.is_zero() {
                continue;
            }
            for (j, eta) in other.components() {
                let deta = eta.differential(alg)?;
                if deta.is_zero() {
                    continue;
                }
                let prod = dxi.mul(&deta, alg)?;
                out = out.sub(&prod.scale(&sign(i * j)));
            }
        }
        Ok(out)
    }

    pub fn format(&self, alg: &AlgebraPresentation) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(t, c)| {
                let mut parts = Vec::new();
                if !c.is_one() || t[0].is_unit() {
                    parts.push(c.to_string());
                }
                if !t[0].is_unit() {
                    parts.push(alg.format_monomial(&t[0]));
                }
                for m in &t[1..] {
                    parts.push(format!("d({})", alg.format_monomial(m)));
                }
                parts.join("*")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Adds `c · (a)(b)` to `out`, where `a = x₀ dx₁ ⋯ dx_n` and `b = y₀ dy₁ ⋯`:
/// `Σ_{j=0}^{n} (−1)^{n−j} x₀ dx₁ ⋯ d(x_j x_{j+1}) ⋯`, with `x_{n+1} = y₀`
/// and the `j = 0` term read as `(x₀x₁) dx₂ ⋯`.
fn mul_tuples(
    a: &[Monomial],
    b: &[Monomial],
    c: &Scalar,
    alg: &AlgebraPresentation,
    out: &mut Form,
) -> Result<()> {
    let n = a.len() - 1;
    let total = n + b.len() - 1;
    if total > MAX_FORM_DEGREE {
        return Err(Error::DegreeOverflow {
            degree: total as u32,
            cap: MAX_FORM_DEGREE as u32,
        });
    }
    let seq: SmallVec<[&Monomial; 8]> = a.iter().chain(b.iter()).collect();
    for j in 0..=n {
        let merged = alg.mul(seq[j], seq[j + 1])?;
        let s = sign(n - j);
        for (m, mc) in merged.iter() {
            if j >= 1 && m.is_unit() {
                continue;
            }
            let mut t: Tuple = SmallVec::with_capacity(total + 1);
            t.extend(seq[..j].iter().map(|&x| x.clone()));
            t.push(m.clone());
            t.extend(seq[j + 2..].iter().map(|&x| x.clone()));
            if t[1..].iter().any(Monomial::is_unit) {
                continue;
            }
            out.add_term(t, &(&s * mc) * c);
        }
    }
    Ok(())
}

/// `d` on a form.
pub fn differential(w: &Form, alg: &AlgebraPresentation) -> Result<Form> {
    w.differential(alg)
}

pub fn form_multiply(w: &Form, e: &Form, alg: &AlgebraPresentation) -> Result<Form> {
    w.mul(e, alg)
}

pub fn fedosov(w: &Form, e: &Form, alg: &AlgebraPresentation) -> Result<Form> {
    w.fedosov(e, alg)
}

/// `b(x dy) = xy − yx` on 1-forms.
pub fn hochschild_b1(w: &Form, alg: &AlgebraPresentation) -> Result<Element> {
    let mut out = Element::zero();
    for (t, c) in w.iter() {
        if t.len() != 2 {
            return Err(Error::WrongDegree {
                expected: 1,
                found: t.len() - 1,
            });
        }
        let xy = alg.mul(&t[0], &t[1])?;
        let yx = alg.mul(&t[1], &t[0])?;
        out = out.add(&xy.sub(&yx).scale(c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly() -> AlgebraPresentation {
        AlgebraPresentation::polynomial(&["t"]).unwrap()
    }

    fn m(a: &AlgebraPresentation, e: &[i32]) -> Monomial {
        a.monomial(e).unwrap()
    }

    fn b(a: &AlgebraPresentation, slots: &[&[i32]], c: i64) -> Form {
        let t: Vec<Monomial> = slots.iter().map(|e| m(a, e)).collect();
        Form::basis(&t, Scalar::from(c))
    }

    #[test]
    fn differential_examples() {
        let a = poly();
        let t = b(&a, &[&[1]], 1);
        assert_eq!(t.differential(&a).unwrap(), b(&a, &[&[0], &[1]], 1));
        let dt = b(&a, &[&[0], &[1]], 1);
        assert!(dt.differential(&a).unwrap().is_zero());
        let tdt = b(&a, &[&[1], &[1]], 1);
        assert_eq!(tdt.differential(&a).unwrap(), b(&a, &[&[0], &[1], &[1]], 1));
    }

    #[test]
    fn multiply_examples() {
        let a = poly();
        let tdt = b(&a, &[&[1], &[1]], 1);
        let t = b(&a, &[&[1]], 1);
        let expected = b(&a, &[&[1], &[2]], 1).sub(&b(&a, &[&[2], &[1]], 1));
        assert_eq!(tdt.mul(&t, &a).unwrap(), expected);
        let one = b(&a, &[&[0]], 1);
        assert_eq!(one.mul(&tdt, &a).unwrap(), tdt);
        let dt = b(&a, &[&[0], &[1]], 1);
        assert_eq!(dt.mul(&dt, &a).unwrap(), b(&a, &[&[0], &[1], &[1]], 1));
    }

    #[test]
    fn fedosov_examples() {
        let a = poly();
        let t = b(&a, &[&[1]], 1);
        let expected = b(&a, &[&[2]], 1).sub(&b(&a, &[&[0], &[1], &[1]], 1));
        assert_eq!(t.fedosov(&t, &a).unwrap(), expected);
        let one = b(&a, &[&[0]], 1);
        let tdt = b(&a, &[&[1], &[1]], 1);
        assert_eq!(one.fedosov(&tdt, &a).unwrap(), tdt);
        // (dt dt) ⊙ t = dt d(t²) − dt t dt, hand-expanded
        let dtdt = b(&a, &[&[0], &[1], &[1]], 1);
        let got = dtdt.fedosov(&t, &a).unwrap();
        let dt = b(&a, &[&[0], &[1]], 1);
        let hand = b(&a, &[&[0], &[1], &[2]], 1).sub(&dt.mul(&t, &a).unwrap().mul(&dt, &a).unwrap());
        assert_eq!(got, hand);
        // and in basis terms: dt·t = d(t²) − t dt
        let dt_t_dt = b(&a, &[&[0], &[2], &[1]], 1).sub(&b(&a, &[&[1], &[1], &[1]], 1));
        assert_eq!(got, b(&a, &[&[0], &[1], &[2]], 1).sub(&dt_t_dt));
    }

    #[test]
    fn hochschild_examples() {
        let a = poly();
        assert!(hochschild_b1(&b(&a, &[&[1], &[1]], 1), &a).unwrap().is_zero());
        assert!(hochschild_b1(&b(&a, &[&[0], &[1]], 1), &a).unwrap().is_zero());
        let f = AlgebraPresentation::free(&["a", "b"]).unwrap();
        let adb = b(&f, &[&[0], &[1]], 1);
        let got = hochschild_b1(&adb, &f).unwrap();
        let mut expected = Element::zero();
        expected.add_term(m(&f, &[0, 1]), Scalar::one());
        expected.add_term(m(&f, &[1, 0]), Scalar::from(-1));
        assert_eq!(got, expected);
        assert_eq!(
            hochschild_b1(&b(&a, &[&[0], &[1], &[1]], 1), &a),
            Err(Error::WrongDegree { expected: 1, found: 2 })
        );
    }

    #[test]
    fn curvature_of_inclusion_is_dx_dy() {
        let a = AlgebraPresentation::free(&["a", "b"]).unwrap();
        for x in a.monomials_up_to(2).into_iter().filter(|m| !m.is_unit()) {
            for y in a.monomials_up_to(2).into_iter().filter(|m| !m.is_unit()) {
                let fx = Form::basis(&[x.clone()], Scalar::one());
                let fy = Form::basis(&[y.clone()], Scalar::one());
                let curv = fx.mul(&fy, &a).unwrap().sub(&fx.fedosov(&fy, &a).unwrap());
                let dxdy = Form::basis(&[a.one(), x.clone(), y.clone()], Scalar::one());
                assert_eq!(curv, dxdy);
            }
        }
    }

    #[test]
    fn laurent_unit_products_drop_d1() {
        let a = AlgebraPresentation::laurent("t").unwrap();
        // dt · t⁻¹ = d(t t⁻¹) − t dt⁻¹ = −t dt⁻¹
        let dt = b(&a, &[&[0], &[1]], 1);
        let tinv = b(&a, &[&[-1]], 1);
        assert_eq!(dt.mul(&tinv, &a).unwrap(), b(&a, &[&[1], &[-1]], -1));
    }
}
