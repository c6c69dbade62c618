//! Connections, Hochschild cochains and the lifting recursion.
//!
//! Given a connection `∇` on `Ω¹R`, the maps `φ_{2n}: R → Ω^{2n}R` built
//! from `φ₂ = −∇∘d` and the cocycles `ψ_{2(n+1)}` assemble into a section
//! `σ = Σ φ_{2i}` of `T R → R` whose curvature lies in `J R^{n+1}`.

mod idempotent;

use std::cell::RefCell;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use idempotent::{lift_idempotent, ModMatrix};

use crate::algebra::{AlgebraKind, AlgebraPresentation, Element, Monomial};
use crate::error::{Error, Result};
use crate::ncforms::Form;
use crate::scalars::Scalar;

/// Working cap for monomials reached during the recursion.
const WORKING_CAP: u32 = 4096;

fn lift_form(m: &Monomial) -> Form {
    Form::basis(&[m.clone()], Scalar::one())
}

fn d_form(alg: &AlgebraPresentation, m: &Monomial) -> Form {
    if m.is_unit() {
        return Form::zero();
    }
    Form::basis(&[alg.one(), m.clone()], Scalar::one())
}

/// `∇` on `Ω¹R`, determined by its values `∇(dg)` on generators.
#[derive(Debug, Clone)]
pub struct Connection {
    alg: AlgebraPresentation,
    base: BTreeMap<Monomial, Form>,
    cache: RefCell<BTreeMap<Monomial, Form>>,
}

impl Connection {
    /// One value `∇(dg)` per generator, each a 2-form.
    pub fn new(alg: &AlgebraPresentation, values: Vec<Form>) -> Result<Self> {
        if values.len() != alg.generators().len() {
            return Err(Error::InvalidConnection(format!(
                "{} generators but {} values",
                alg.generators().len(),
                values.len()
            )));
        }
        let alg = alg.clone().with_cap(alg.cap().max(WORKING_CAP));
        let mut base = BTreeMap::new();
        for (i, v) in values.into_iter().enumerate() {
            if v.degrees().iter().any(|&d| d != 2) {
                return Err(Error::InvalidConnection(format!(
                    "value on generator {} is not a 2-form",
                    alg.generators()[i]
                )));
            }
            base.insert(alg.generator(i), v);
        }
        if alg.kind() == AlgebraKind::Laurent {
            // from d(t·t⁻¹) = 0: ∇(dt⁻¹) = −t⁻¹∇(dt)t⁻¹ − t⁻¹ dt dt⁻¹
            let t = alg.generator(0);
            let tinv = alg.monomial(&[-1])?;
            let nt = base[&t].clone();
            let left = lift_form(&tinv);
            let a = left.mul(&nt, &alg)?.mul(&left, &alg)?;
            let b = left.mul(&d_form(&alg, &t), &alg)?.mul(&d_form(&alg, &tinv), &alg)?;
            base.insert(tinv, a.add(&b).neg());
        }
        Ok(Connection {
            alg,
            base,
            cache: RefCell::new(BTreeMap::new()),
        })
    }

    /// `∇(dg) = 0` on every generator.
    pub fn standard(alg: &AlgebraPresentation) -> Result<Self> {
        Connection::new(alg, vec![Form::zero(); alg.generators().len()])
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.alg
    }

    /// `∇(dm)` for a normal-form monomial.
    pub fn nabla_d(&self, m: &Monomial) -> Result<Form> {
        if m.is_unit() {
            return Ok(Form::zero());
        }
        if let Some(v) = self.base.get(m) {
            return Ok(v.clone());
        }
        if let Some(v) = self.cache.borrow().get(m) {
            return Ok(v.clone());
        }
        let (u, v) = self.split(m)?;
        let alg = &self.alg;
        // ∇(d(uv)) = ∇(du)·v + du dv + u·∇(dv)
        let a = self.nabla_d(&u)?.mul(&lift_form(&v), alg)?;
        let b = d_form(alg, &u).mul(&d_form(alg, &v), alg)?;
        let c = lift_form(&u).mul(&self.nabla_d(&v)?, alg)?;
        let out = a.add(&b).add(&c);
        self.cache.borrow_mut().insert(m.clone(), out.clone());
        Ok(out)
    }

    /// `∇(dx)` for an element.
    pub fn nabla_d_element(&self, x: &Element) -> Result<Form> {
        let mut out = Form::zero();
        for (m, c) in x.iter() {
            out.add_assign(&self.nabla_d(m)?.scale(c));
        }
        Ok(out)
    }

    /// `m = u·v` with `u` a generator (or `t⁻¹`), exactly in normal form.
    fn split(&self, m: &Monomial) -> Result<(Monomial, Monomial)> {
        let alg = &self.alg;
        let e = m.exps();
        match alg.kind() {
            AlgebraKind::Free => Ok((alg.monomial(&e[..1])?, alg.monomial(&e[1..])?)),
            AlgebraKind::Polynomial => {
                let i = e.iter().position(|&x| x > 0).expect("non-unit monomial");
                let mut rest = e.to_vec();
                rest[i] -= 1;
                Ok((alg.generator(i), alg.monomial(&rest)?))
            }
            AlgebraKind::Laurent => {
                let s = e[0].signum();
                Ok((alg.monomial(&[s])?, alg.monomial(&[e[0] - s])?))
            }
            AlgebraKind::PlaneCurve => {
                if e[0] > 0 {
                    Ok((alg.monomial(&[1, 0])?, alg.monomial(&[e[0] - 1, e[1]])?))
                } else {
                    unreachable!("y is a generator")
                }
            }
        }
    }

    /// `∇` on a 1-form, via `∇(x₀ dx₁) = x₀·∇(dx₁)`.
    pub fn extend(&self, w: &Form) -> Result<Form> {
        let mut out = Form::zero();
        for (t, c) in w.iter() {
            if t.len() != 2 {
                return Err(Error::WrongDegree {
                    expected: 1,
                    found: t.len() - 1,
                });
            }
            let v = lift_form(&t[0]).mul(&self.nabla_d(&t[1])?, &self.alg)?;
            out.add_assign(&v.scale(c));
        }
        Ok(out)
    }

    /// Checks `∇(d(uv)) = ∇(du)v + du dv + u∇(dv)` for all monomials with
    /// `deg u + deg v ≤ cap`; this is well-definedness on the relations.
    pub fn validate(&self, cap: u32) -> Result<()> {
        let alg = &self.alg;
        let mons: Vec<Monomial> = alg
            .monomials_up_to(cap)
            .into_iter()
            .filter(|m| !m.is_unit())
            .collect();
        for u in &mons {
            for v in &mons {
                if u.degree() + v.degree() > cap {
                    continue;
                }
                let lhs = self.nabla_d_element(&alg.mul(u, v)?)?;
                let rhs = self
                    .nabla_d(u)?
                    .mul(&lift_form(v), alg)?
                    .add(&d_form(alg, u).mul(&d_form(alg, v), alg)?)
                    .add(&lift_form(u).mul(&self.nabla_d(v)?, alg)?);
                if lhs != rhs {
                    return Err(Error::InvalidConnection(format!(
                        "Leibniz rule fails on ({}, {})",
                        alg.format_monomial(u),
                        alg.format_monomial(v)
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn connection_extend(conn: &Connection, w: &Form) -> Result<Form> {
    conn.extend(w)
}

/// A multilinear map `R^{⊗k} → Ω R`, stored on basis tuples of total
/// degree at most `cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    arity: usize,
    cap: u32,
    values: BTreeMap<Vec<Monomial>, Form>,
}

fn tuples_up_to(mons: &[Monomial], arity: usize, cap: u32) -> Vec<Vec<Monomial>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        let mut next = Vec::new();
        for t in &out {
            let used: u32 = t.iter().map(Monomial::degree).sum();
            for m in mons {
                if used + m.degree() <= cap {
                    let mut t = t.clone();
                    t.push(m.clone());
                    next.push(t);
                }
            }
        }
        out = next;
    }
    out
}

impl Cochain {
    /// Evaluates `f` on every basis tuple of total degree at most `cap`.
    pub fn tabulate<F>(alg: &AlgebraPresentation, arity: usize, cap: u32, mut f: F) -> Result<Self>
    where
        F: FnMut(&[Monomial]) -> Result<Form>,
    {
        let mons = alg.monomials_up_to(cap);
        let mut values = BTreeMap::new();
        for t in tuples_up_to(&mons, arity, cap) {
            let v = f(&t)?;
            values.insert(t, v);
        }
        Ok(Cochain { arity, cap, values })
    }

    /// `φ₀ = id`.
    pub fn identity(alg: &AlgebraPresentation, cap: u32) -> Result<Self> {
        Cochain::tabulate(alg, 1, cap, |t| Ok(lift_form(&t[0])))
    }

    /// `x ↦ dx`.
    pub fn d(alg: &AlgebraPresentation, cap: u32) -> Result<Self> {
        Cochain::tabulate(alg, 1, cap, |t| Ok(d_form(alg, &t[0])))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn get(&self, args: &[Monomial]) -> Result<Form> {
        self.values.get(args).cloned().ok_or_else(|| Error::DegreeOverflow {
            degree: args.iter().map(Monomial::degree).sum(),
            cap: self.cap,
        })
    }

    /// Multilinear evaluation on elements.
    pub fn eval(&self, args: &[Element]) -> Result<Form> {
        let mut acc: Vec<(Vec<Monomial>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for x in args {
            let mut next = Vec::new();
            for (t, c) in &acc {
                for (m, mc) in x.iter() {
                    let mut t = t.clone();
                    t.push(m.clone());
                    next.push((t, c * mc));
                }
            }
            acc = next;
        }
        let mut out = Form::zero();
        for (t, c) in acc {
            out.add_assign(&self.get(&t)?.scale(&c));
        }
        Ok(out)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Monomial>, &Form)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Form::is_zero)
    }

    /// Tuples where the value is nonzero.
    pub fn support(&self) -> Vec<&Vec<Monomial>> {
        self.values
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(t, _)| t)
            .collect()
    }

    /// `d∘ψ`.
    pub fn differential(&self, alg: &AlgebraPresentation) -> Result<Cochain> {
        let mut values = BTreeMap::new();
        for (t, v) in &self.values {
            values.insert(t.clone(), v.differential(alg)?);
        }
        Ok(Cochain {
            arity: self.arity,
            cap: self.cap,
            values,
        })
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.arity, other.arity, "cochain arities differ");
        let cap = self.cap.min(other.cap);
        let values = self
            .values
            .iter()
            .filter_map(|(t, v)| {
                let w = other.values.get(t)?;
                Some((t.clone(), v.sub(w)))
            })
            .collect();
        Cochain {
            arity: self.arity,
            cap,
            values,
        }
    }
}

/// `(δψ)(x₁, …, x_{k+1}) = x₁ψ(x₂, …) + Σ (−1)^i ψ(…, x_i x_{i+1}, …) + (−1)^{k+1} ψ(x₁, …, x_k) x_{k+1}`.
pub fn hochschild_delta(psi: &Cochain, alg: &AlgebraPresentation) -> Result<Cochain> {
    let k = psi.arity;
    if k == 0 || k > 2 {
        return Err(Error::Unsupported(format!("coboundary of a {k}-cochain")));
    }
    let alg = alg.clone().with_cap(alg.cap().max(psi.cap * 2));
    Cochain::tabulate(&alg, k + 1, psi.cap, |x| {
        let mut out = lift_form(&x[0]).mul(&psi.get(&x[1..])?, &alg)?;
        for i in 0..k {
            let merged = alg.mul(&x[i], &x[i + 1])?;
            let mut args: Vec<Element> = x.iter().map(|m| Element::monomial(m.clone())).collect();
            args.splice(i..i + 2, [merged]);
            let v = psi.eval(&args)?;
            out = if i % 2 == 0 { out.sub(&v) } else { out.add(&v) };
        }
        let last = psi.get(&x[..k])?.mul(&lift_form(&x[k]), &alg)?;
        Ok(if k % 2 == 0 { out.sub(&last) } else { out.add(&last) })
    })
}

/// `(ψ∪ξ)(x₁, …, x_{a+b}) = ψ(x₁, …, x_a)·ξ(x_{a+1}, …)`.
pub fn cup(psi: &Cochain, xi: &Cochain, alg: &AlgebraPresentation) -> Result<Cochain> {
    let (a, b) = (psi.arity, xi.arity);
    let cap = psi.cap.min(xi.cap);
    Cochain::tabulate(alg, a + b, cap, |x| {
        psi.get(&x[..a])?.mul(&xi.get(&x[a..])?, alg)
    })
}

/// `ω_f(x, y) = f(xy) − f(x)⊙f(y)`.
pub fn curvature(
    f: &Cochain,
    x: &Monomial,
    y: &Monomial,
    alg: &AlgebraPresentation,
) -> Result<Form> {
    let xy = alg.mul(x, y)?;
    let fx = f.get(std::slice::from_ref(x))?;
    let fy = f.get(std::slice::from_ref(y))?;
    Ok(f.eval(&[xy])?.sub(&fx.fedosov(&fy, alg)?))
}

/// Memoized evaluation of the recursion `φ_{2n}`, `ψ_{2n}`.
pub struct LiftingRecursion {
    conn: Connection,
    sign: Scalar,
    phi: RefCell<BTreeMap<(usize, Monomial), Form>>,
    psi: RefCell<BTreeMap<(usize, Monomial, Monomial), Form>>,
}

impl LiftingRecursion {
    /// Fixes the sign of `φ₂ = ±∇∘d` by `δφ₂ = d∪d` on pairs up to `cap`.
    pub fn new(conn: Connection, cap: u32) -> Result<Self> {
        conn.validate(cap)?;
        let alg = conn.alg.clone();
        let gens: Vec<Monomial> = (0..alg.generators().len())
            .map(|i| alg.generator(i))
            .collect();
        let mut chosen = None;
        for s in [-1i64, 1] {
            let rec = LiftingRecursion {
                conn: conn.clone(),
                sign: Scalar::from(s),
                phi: RefCell::new(BTreeMap::new()),
                psi: RefCell::new(BTreeMap::new()),
            };
            let ok = gens.iter().all(|x| {
                gens.iter()
                    .all(|y| rec.phi2_defect(x, y).map(|d| d.is_zero()).unwrap_or(false))
            });
            if ok {
                chosen = Some(rec);
                break;
            }
        }
        let rec = chosen.ok_or_else(|| {
            Error::InvalidConnection("no sign of ∇∘d satisfies δφ₂ = d∪d on generators".into())
        })?;
        let mons: Vec<Monomial> = alg
            .monomials_up_to(cap)
            .into_iter()
            .filter(|m| !m.is_unit())
            .collect();
        for x in &mons {
            for y in &mons {
                if x.degree() + y.degree() <= cap && !rec.phi2_defect(x, y)?.is_zero() {
                    return Err(Error::InvalidConnection(format!(
                        "δφ₂ ≠ d∪d at ({}, {})",
                        alg.format_monomial(x),
                        alg.format_monomial(y)
                    )));
                }
            }
        }
        Ok(rec)
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.conn.alg
    }

    /// `+1` or `−1` in `φ₂ = sign·∇∘d`.
    pub fn sign(&self) -> i64 {
        if self.sign.is_one() {
            1
        } else {
            -1
        }
    }

    /// `(δφ₂ − d∪d)(x, y)`.
    fn phi2_defect(&self, x: &Monomial, y: &Monomial) -> Result<Form> {
        let alg = self.algebra();
        let xy = alg.mul(x, y)?;
        let delta = lift_form(x)
            .mul(&self.phi(1, y)?, alg)?
            .sub(&self.phi_element(1, &xy)?)
            .add(&self.phi(1, x)?.mul(&lift_form(y), alg)?);
        Ok(delta.sub(&d_form(alg, x).mul(&d_form(alg, y), alg)?))
    }

    /// `φ_{2k}(m)`.
    pub fn phi(&self, k: usize, m: &Monomial) -> Result<Form> {
        if k == 0 {
            return Ok(lift_form(m));
        }
        let key = (k, m.clone());
        if let Some(v) = self.phi.borrow().get(&key) {
            return Ok(v.clone());
        }
        let v = if k == 1 {
            self.conn.nabla_d(m)?.scale(&self.sign)
        } else {
            // φ_{2k} = ψ̄_{2k} ∘ φ₂ with ψ̄(x₀ dx₁ dx₂) = x₀ ψ(x₁, x₂)
            let mut out = Form::zero();
            for (t, c) in self.phi(1, m)?.iter() {
                let v = lift_form(&t[0]).mul(&self.psi(k, &t[1], &t[2])?, self.algebra())?;
                out.add_assign(&v.scale(c));
            }
            out
        };
        self.phi.borrow_mut().insert(key, v.clone());
        Ok(v)
    }

    pub fn phi_element(&self, k: usize, x: &Element) -> Result<Form> {
        let mut out = Form::zero();
        for (m, c) in x.iter() {
            out.add_assign(&self.phi(k, m)?.scale(c));
        }
        Ok(out)
    }

    /// `ψ_{2k}(x, y)` for `k ≥ 1`; `ψ₂ = d∪d`.
    pub fn psi(&self, k: usize, x: &Monomial, y: &Monomial) -> Result<Form> {
        assert!(k >= 1, "ψ starts at degree 2");
        let key = (k, x.clone(), y.clone());
        if let Some(v) = self.psi.borrow().get(&key) {
            return Ok(v.clone());
        }
        let alg = self.algebra().clone();
        let n = k - 1;
        let mut out = Form::zero();
        for j in 0..=n {
            let a = self.phi(j, x)?.differential(&alg)?;
            let b = self.phi(n - j, y)?.differential(&alg)?;
            out.add_assign(&a.mul(&b, &alg)?);
        }
        for j in 1..=n {
            let a = self.phi(j, x)?;
            let b = self.phi(n + 1 - j, y)?;
            out = out.sub(&a.mul(&b, &alg)?);
        }
        self.psi.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    pub fn phi_cochain(&self, k: usize, cap: u32) -> Result<Cochain> {
        Cochain::tabulate(self.algebra(), 1, cap, |t| self.phi(k, &t[0]))
    }

    pub fn psi_cochain(&self, k: usize, cap: u32) -> Result<Cochain> {
        Cochain::tabulate(self.algebra(), 2, cap, |t| self.psi(k, &t[0], &t[1]))
    }

    /// `σ_n = Σ_{i≤n} φ_{2i}` on a monomial.
    pub fn section(&self, n: usize, m: &Monomial) -> Result<Form> {
        let mut out = Form::zero();
        for i in 0..=n {
            out.add_assign(&self.phi(i, m)?);
        }
        Ok(out)
    }
}

/// Builds `φ₀, φ₂, …, φ_{2n}` tabulated on monomials of degree at most `cap`.
pub fn phi_psi_recursion(conn: &Connection, n_max: usize, cap: u32) -> Result<Vec<Cochain>> {
    let rec = LiftingRecursion::new(conn.clone(), cap)?;
    (0..=n_max).map(|k| rec.phi_cochain(k, cap)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub order: usize,
    pub cap: u32,
    pub pairs: usize,
    /// Lowest form degree `< 2(n+1)` where some curvature component is nonzero.
    pub lowest_violation: Option<usize>,
    /// Whether `σ` followed by the projection to `Ω⁰` is the identity.
    pub section: bool,
    /// Least `a` with `φ_{2k}(F_i) ⊆ F_{i+(2k−1)a}`, per order `k = 1..n`.
    pub degree_constants: Vec<u32>,
    pub degree_constant: u32,
    pub phi2_sign: i64,
}

impl CurvatureReport {
    pub fn passed(&self) -> bool {
        self.lowest_violation.is_none() && self.section
    }
}

/// Components of `ξ⊙η` in form degrees below `bound`.
fn fedosov_below(xi: &Form, eta: &Form, bound: usize, alg: &AlgebraPresentation) -> Result<Form> {
    let xs = xi.components();
    let ys = eta.components();
    let mut out = Form::zero();
    for (&i, a) in &xs {
        for (&j, b) in &ys {
            if i + j < bound {
                out.add_assign(&a.mul(b, alg)?);
            }
            if i + j + 2 < bound {
                let s = if (i * j) % 2 == 0 { Scalar::one() } else { Scalar::from(-1) };
                let v = a.differential(alg)?.mul(&b.differential(alg)?, alg)?;
                out = out.sub(&v.scale(&s));
            }
        }
    }
    Ok(out)
}

/// Checks that `σ_n(xy) − σ_n(x)⊙σ_n(y)` has no components below degree
/// `2(n+1)` for monomial pairs with `deg x + deg y ≤ cap`.
pub fn section_curvature_check(
    rec: &LiftingRecursion,
    n: usize,
    cap: u32,
) -> Result<CurvatureReport> {
    let alg = rec.algebra().clone();
    let bound = 2 * (n + 1);
    let mons = alg.monomials_up_to(cap);
    let mut lowest: Option<usize> = None;
    let mut pairs = 0;
    let mut section = true;
    for x in &mons {
        let sx = rec.section(n, x)?;
        if sx.component(0) != lift_form(x) {
            section = false;
        }
        for y in &mons {
            if x.degree() + y.degree() > cap {
                continue;
            }
            pairs += 1;
            let sy = rec.section(n, y)?;
            let mut sxy = Form::zero();
            for (m, c) in alg.mul(x, y)?.iter() {
                sxy.add_assign(&rec.section(n, m)?.scale(c));
            }
            let curv = sxy
                .components()
                .into_iter()
                .filter(|(d, _)| *d < bound)
                .fold(Form::zero(), |acc, (_, f)| acc.add(&f))
                .sub(&fedosov_below(&sx, &sy, bound, &alg)?);
            if let Some(&d) = curv.degrees().iter().next() {
                lowest = Some(lowest.map_or(d, |l| l.min(d)));
            }
        }
    }
    let mut constants = Vec::new();
    for k in 1..=n {
        let mut a = 0u32;
        for x in &mons {
            if let Some(fd) = rec.phi(k, x)?.filtration_degree() {
                let excess = fd.saturating_sub(x.degree());
                let step = 2 * k as u32 - 1;
                a = a.max(excess.div_ceil(step));
            }
        }
        constants.push(a);
    }
    Ok(CurvatureReport {
        order: n,
        cap,
        pairs,
        lowest_violation: lowest,
        section,
        degree_constant: constants.iter().copied().max().unwrap_or(0),
        degree_constants: constants,
        phi2_sign: rec.sign(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleReport {
    pub order: usize,
    pub triples: usize,
    pub violations: usize,
}

/// `δ(ψ_{2n}) = 0` on all basis triples of total degree at most `cap`.
pub fn psi_cocycle_check(rec: &LiftingRecursion, n: usize, cap: u32) -> Result<CocycleReport> {
    let psi = rec.psi_cochain(n, cap)?;
    let delta = hochschild_delta(&psi, rec.algebra())?;
    Ok(CocycleReport {
        order: n,
        triples: delta.iter().count(),
        violations: delta.support().len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly() -> AlgebraPresentation {
        AlgebraPresentation::polynomial(&["t"]).unwrap()
    }

    fn dd(a: &AlgebraPresentation, x: &[i32], y: &[i32]) -> Form {
        Form::basis(
            &[a.one(), a.monomial(x).unwrap(), a.monomial(y).unwrap()],
            Scalar::one(),
        )
    }

    #[test]
    fn connection_on_polynomial() {
        let a = poly();
        let c = Connection::standard(&a).unwrap();
        // one recursion step by hand: ∇(d(t·t)) = ∇(dt)t + dt dt + t∇(dt)
        assert_eq!(c.nabla_d(&a.monomial(&[2]).unwrap()).unwrap(), dd(&a, &[1], &[1]));
        let t_dt = Form::basis(&[a.monomial(&[1]).unwrap(), a.monomial(&[1]).unwrap()], Scalar::one());
        assert!(c.extend(&t_dt).unwrap().is_zero());
        // (dt)·t = d(t²) − t dt
        let dt = Form::basis(&[a.one(), a.monomial(&[1]).unwrap()], Scalar::one());
        let dt_t = dt.mul(&lift_form(&a.monomial(&[1]).unwrap()), &a).unwrap();
        assert_eq!(c.extend(&dt_t).unwrap(), dd(&a, &[1], &[1]));
        c.validate(6).unwrap();
    }

    #[test]
    fn two_variable_standard_connection_is_invalid() {
        let a = AlgebraPresentation::polynomial(&["x", "y"]).unwrap();
        let c = Connection::standard(&a).unwrap();
        assert!(matches!(c.validate(3), Err(Error::InvalidConnection(_))));
    }

    #[test]
    fn laurent_connection_is_well_defined() {
        let a = AlgebraPresentation::laurent("t").unwrap();
        Connection::standard(&a).unwrap().validate(6).unwrap();
    }

    #[test]
    fn delta_and_cup() {
        let a = poly();
        let zero = Cochain::tabulate(&a, 1, 4, |_| Ok(Form::zero())).unwrap();
        assert!(hochschild_delta(&zero, &a).unwrap().is_zero());
        let d = Cochain::d(&a, 4).unwrap();
        let t = a.monomial(&[1]).unwrap();
        let dd_ = cup(&d, &d, &a).unwrap();
        assert_eq!(dd_.get(&[t.clone(), t.clone()]).unwrap(), dd(&a, &[1], &[1]));
        let id = Cochain::identity(&a, 4).unwrap();
        assert_eq!(
            cup(&id, &id, &a).unwrap().get(&[t.clone(), t.clone()]).unwrap(),
            t_form(&a, &[1]).mul(&t_form(&a, &[1]), &a).unwrap()
        );
        // δδ = 0 on an arbitrary 1-cochain
        let f = Cochain::tabulate(&a, 1, 4, |x| {
            let e = x[0].exps()[0];
            Ok(Form::basis(&[a.monomial(&[e / 2]).unwrap(), a.monomial(&[e - e / 2 + 1]).unwrap()], Scalar::from(e as i64 + 1)))
        })
        .unwrap();
        assert!(hochschild_delta(&hochschild_delta(&f, &a).unwrap(), &a).unwrap().is_zero());
    }

    fn t_form(a: &AlgebraPresentation, e: &[i32]) -> Form {
        lift_form(&a.monomial(e).unwrap())
    }

    #[test]
    fn curvature_examples() {
        let a = poly();
        let t = a.monomial(&[1]).unwrap();
        let id = Cochain::identity(&a, 4).unwrap();
        assert_eq!(curvature(&id, &t, &t, &a).unwrap(), dd(&a, &[1], &[1]));
        // evaluation t ↦ 2 into scalars
        let ev = Cochain::tabulate(&a, 1, 4, |x| {
            Ok(lift_form(&a.one()).scale(&Scalar::from(1i64 << x[0].exps()[0])))
        })
        .unwrap();
        assert!(curvature(&ev, &t, &t, &a).unwrap().is_zero());
    }

    #[test]
    fn phi2_on_polynomial() {
        let a = poly();
        let rec = LiftingRecursion::new(Connection::standard(&a).unwrap(), 4).unwrap();
        assert_eq!(rec.sign(), -1);
        assert!(rec.phi(1, &a.monomial(&[1]).unwrap()).unwrap().is_zero());
        assert_eq!(
            rec.phi(1, &a.monomial(&[2]).unwrap()).unwrap(),
            dd(&a, &[1], &[1]).neg()
        );
        // solving δφ₂ = d∪d at (t, t) directly: −φ₂(t²) = dt dt
        let psi4 = psi_cocycle_check(&rec, 2, 4).unwrap();
        assert_eq!(psi4.violations, 0);
        let phi = phi_psi_recursion(&Connection::standard(&a).unwrap(), 2, 4).unwrap();
        assert_eq!(phi[0], Cochain::identity(rec.algebra(), 4).unwrap());
    }

    #[test]
    fn curvature_reports() {
        let a = poly();
        let rec = LiftingRecursion::new(Connection::standard(&a).unwrap(), 6).unwrap();
        for n in 0..=2 {
            let r = section_curvature_check(&rec, n, 6).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let l = AlgebraPresentation::laurent("t").unwrap();
        let rec = LiftingRecursion::new(Connection::standard(&l).unwrap(), 4).unwrap();
        let r = section_curvature_check(&rec, 1, 4).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn free_algebra_recursion() {
        let a = AlgebraPresentation::free(&["a", "b"]).unwrap();
        let rec = LiftingRecursion::new(Connection::standard(&a).unwrap(), 4).unwrap();
        let r = section_curvature_check(&rec, 2, 4).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(psi_cocycle_check(&rec, 2, 3).unwrap().violations, 0);
    }
}
