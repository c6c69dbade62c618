use smallvec::SmallVec;

use super::{tuple_degree, Form, Tuple};
use crate::algebra::{AlgebraKind, AlgebraPresentation, Monomial};
use crate::error::{Error, Result};
use crate::linalg::{SparseEchelon, SparseVec};
use crate::scalars::Scalar;

/// Column key for 1-forms `m₀ dm₁`: ordered by `m₁` first, so row reduction
/// eliminates tuples with large differentiated slots in favour of `g·dm`
/// with small `m`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OneFormKey {
    pub m1: Monomial,
    pub m0: Monomial,
}

impl OneFormKey {
    pub fn tuple(&self) -> Tuple {
        SmallVec::from_vec(vec![self.m0.clone(), self.m1.clone()])
    }

    pub fn degree(&self) -> u32 {
        self.m0.degree() + self.m1.degree()
    }
}

/// `Ω¹R / [R, Ω¹R]` restricted to 1-forms of filtration degree at most `k`.
///
/// The relations are the commutators `x·(y dz) − (y dz)·x` over monomials
/// `x, y, z` all of whose terms stay within degree `k`.
#[derive(Debug, Clone)]
pub struct CommutatorQuotient {
    alg: AlgebraPresentation,
    max_degree: u32,
    relations: SparseEchelon<OneFormKey>,
}

impl CommutatorQuotient {
    pub fn new(alg: &AlgebraPresentation, max_degree: u32) -> Result<Self> {
        let alg = alg.clone().with_cap(alg.cap().max(3 * max_degree + 3));
        let additive = matches!(alg.kind(), AlgebraKind::Free | AlgebraKind::Polynomial);
        let basis = alg.monomials_up_to(max_degree);
        let nonunit: Vec<&Monomial> = basis.iter().filter(|m| !m.is_unit()).collect();
        let one = alg.one();
        let mut with_unit: Vec<&Monomial> = vec![&one];
        with_unit.extend(nonunit.iter().copied());

        let mut relations = SparseEchelon::new();
        for &x in &nonunit {
            let fx = Form::basis(&[x.clone()], Scalar::one());
            for &y in &with_unit {
                if additive && x.degree() + y.degree() + 1 > max_degree {
                    continue;
                }
                for &z in &nonunit {
                    if additive && x.degree() + y.degree() + z.degree() > max_degree {
                        continue;
                    }
                    let ydz = Form::basis(&[y.clone(), z.clone()], Scalar::one());
                    let rel = fx.mul(&ydz, &alg)?.sub(&ydz.mul(&fx, &alg)?);
                    if rel.iter().any(|(t, _)| tuple_degree(t) > max_degree) {
                        continue;
                    }
                    relations.insert(&to_vec(&rel));
                }
            }
        }
        Ok(CommutatorQuotient {
            alg,
            max_degree,
            relations,
        })
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.alg
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn relations(&self) -> &SparseEchelon<OneFormKey> {
        &self.relations
    }

    /// All 1-form basis tuples of filtration degree at most `d`, ascending.
    pub fn basis_keys(&self, d: u32) -> Vec<OneFormKey> {
        let mons = self.alg.monomials_up_to(d);
        let one = self.alg.one();
        let mut m0s: Vec<&Monomial> = vec![&one];
        m0s.extend(mons.iter().filter(|m| !m.is_unit()));
        let mut keys = Vec::new();
        for m1 in mons.iter().filter(|m| !m.is_unit()) {
            for &m0 in &m0s {
                if m0.degree() + m1.degree() <= d {
                    keys.push(OneFormKey {
                        m1: m1.clone(),
                        m0: m0.clone(),
                    });
                }
            }
        }
        keys.sort();
        keys
    }

    pub fn vector(&self, w: &Form) -> Result<SparseVec<OneFormKey>> {
        for (t, _) in w.iter() {
            if t.len() != 2 {
                return Err(Error::WrongDegree {
                    expected: 1,
                    found: t.len() - 1,
                });
            }
            let d = tuple_degree(t);
            if d > self.max_degree {
                return Err(Error::DegreeOverflow {
                    degree: d,
                    cap: self.max_degree,
                });
            }
        }
        Ok(to_vec(w))
    }

    /// Canonical coset representative of a 1-form.
    pub fn rep(&self, w: &Form) -> Result<Form> {
        let v = self.relations.reduce(&self.vector(w)?);
        Ok(from_vec(&v))
    }

    pub fn is_zero_class(&self, w: &Form) -> Result<bool> {
        Ok(self.relations.contains(&self.vector(w)?))
    }
}

pub(crate) fn to_vec(w: &Form) -> SparseVec<OneFormKey> {
    w.iter()
        .map(|(t, c)| {
            (
                OneFormKey {
                    m1: t[1].clone(),
                    m0: t[0].clone(),
                },
                c.clone(),
            )
        })
        .collect()
}

pub(crate) fn from_vec(v: &SparseVec<OneFormKey>) -> Form {
    let mut f = Form::zero();
    for (k, c) in v {
        f.add_term(k.tuple(), c.clone());
    }
    f
}

/// Coset representative of `ω` in the commutator quotient truncated at degree `d`.
pub fn commutator_quotient_rep(w: &Form, alg: &AlgebraPresentation, d: u32) -> Result<Form> {
    CommutatorQuotient::new(alg, d)?.rep(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(a: &AlgebraPresentation, slots: &[&[i32]], c: i64) -> Form {
        let t: Vec<Monomial> = slots.iter().map(|e| a.monomial(e).unwrap()).collect();
        Form::basis(&t, Scalar::from(c))
    }

    #[test]
    fn polynomial_d_t_squared() {
        let a = AlgebraPresentation::polynomial(&["t"]).unwrap();
        let q = CommutatorQuotient::new(&a, 6).unwrap();
        assert_eq!(q.rep(&b(&a, &[&[0], &[2]], 1)).unwrap(), b(&a, &[&[1], &[1]], 2));
        assert_eq!(q.rep(&b(&a, &[&[1], &[1]], 1)).unwrap(), b(&a, &[&[1], &[1]], 1));
    }

    #[test]
    fn polynomial_classes_are_g_dt() {
        // every class reduces to g(t) dt; checked against a linear-algebra
        // oracle: the quotient has dimension = number of tuples (t^k, t)
        let a = AlgebraPresentation::polynomial(&["t"]).unwrap();
        let q = CommutatorQuotient::new(&a, 7).unwrap();
        for key in q.basis_keys(7) {
            let r = q.rep(&from_vec(&[(key, Scalar::one())].into_iter().collect())).unwrap();
            for (t, _) in r.iter() {
                assert_eq!(t[1], a.monomial(&[1]).unwrap());
            }
        }
        let dim = q.basis_keys(7).len() - q.relations().rank();
        assert_eq!(dim, 7);
    }

    #[test]
    fn free_commutator_vanishes() {
        let a = AlgebraPresentation::free(&["a", "b"]).unwrap();
        let q = CommutatorQuotient::new(&a, 3).unwrap();
        let x = b(&a, &[&[0]], 1);
        let db = b(&a, &[&[], &[1]], 1);
        let left = q.rep(&x.mul(&db, &a).unwrap()).unwrap();
        let right = q.rep(&db.mul(&x, &a).unwrap()).unwrap();
        assert_eq!(left, right);
        // a db and db a are different forms
        assert_ne!(x.mul(&db, &a).unwrap(), db.mul(&x, &a).unwrap());
    }

    #[test]
    fn rep_is_idempotent() {
        let a = AlgebraPresentation::laurent("t").unwrap();
        let q = CommutatorQuotient::new(&a, 5).unwrap();
        let w = b(&a, &[&[-2], &[3]], 1).add(&b(&a, &[&[0], &[-1]], 4));
        let r = q.rep(&w).unwrap();
        assert_eq!(q.rep(&r).unwrap(), r);
    }

    #[test]
    fn over_degree_is_an_error() {
        let a = AlgebraPresentation::polynomial(&["t"]).unwrap();
        let q = CommutatorQuotient::new(&a, 3).unwrap();
        assert!(matches!(
            q.rep(&b(&a, &[&[2], &[2]], 1)),
            Err(Error::DegreeOverflow { degree: 4, cap: 3 })
        ));
    }
}
