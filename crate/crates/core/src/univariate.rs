//! Dense univariate polynomials over `Q`, used for curve data `f(x)`.

use crate::scalars::Scalar;

/// Ascending coefficients; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly(Vec<Scalar>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UniPoly::new(c.iter().map(|&x| Scalar::from(x)).collect())
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn x_power(k: usize) -> Self {
        let mut v = vec![Scalar::zero(); k + 1];
        v[k] = Scalar::one();
        UniPoly(v)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.0.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.0.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.0.len().max(other.0.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.0.len().max(other.0.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Scalar::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += &(a * b);
            }
        }
        UniPoly::new(v)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::from(i as i64))
                .collect(),
        )
    }

    /// `(q, r)` with `self = q·d + r`, `deg r < deg d`.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.leading().inv().unwrap();
        let mut r = self.clone();
        let mut q = vec![Scalar::zero(); self.0.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = &r.leading() * &lc_inv;
            q[rd - dd] = c.clone();
            r = r.sub(&d.mul(&UniPoly::x_power(rd - dd)).scale(&c));
        }
        (UniPoly::new(q), r)
    }

    /// `(g, s, t)` with `s·a + t·b = g`, `g` monic (or zero).
    pub fn ext_gcd(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (UniPoly::constant(Scalar::one()), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::constant(Scalar::one()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().inv().unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Resultant via the Sylvester determinant.
    pub fn resultant(a: &UniPoly, b: &UniPoly) -> Scalar {
        let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
            return Scalar::zero();
        };
        let size = m + n;
        if size == 0 {
            return Scalar::one();
        }
        let mut mat = vec![vec![Scalar::zero(); size]; size];
        for row in 0..n {
            for (i, c) in a.0.iter().rev().enumerate() {
                mat[row][row + i] = c.clone();
            }
        }
        for row in 0..m {
            for (i, c) in b.0.iter().rev().enumerate() {
                mat[n + row][row + i] = c.clone();
            }
        }
        determinant(mat)
    }

    /// `disc(f) = (−1)^{n(n−1)/2} Res(f, f′) / lc(f)`.
    pub fn discriminant(&self) -> Scalar {
        let n = self.degree().unwrap_or(0);
        let res = UniPoly::resultant(self, &self.derivative());
        let s = if (n * n.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
        &(res * Scalar::from(s)) / &self.leading()
    }
}

fn determinant(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = det * &p;
        let pinv = p.inv().unwrap();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &pinv;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= &delta;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bezout_for_x3_minus_x() {
        let f = UniPoly::from_ints(&[0, -1, 0, 1]);
        let fp = f.derivative();
        let (g, s, t) = UniPoly::ext_gcd(&f, &fp);
        assert_eq!(g, UniPoly::from_ints(&[1]));
        assert_eq!(s.mul(&f).add(&t.mul(&fp)), g);
    }

    #[test]
    fn discriminants() {
        // x³ − x: −4(−1)³ − 27·0 = 4
        assert_eq!(UniPoly::from_ints(&[0, -1, 0, 1]).discriminant(), Scalar::from(4));
        // x² + bx + c: b² − 4c
        assert_eq!(UniPoly::from_ints(&[3, 5, 1]).discriminant(), Scalar::from(13));
        // (x−1)²(x+2) is not squarefree
        assert_eq!(UniPoly::from_ints(&[2, -3, 0, 1]).discriminant(), Scalar::zero());
    }

    #[test]
    fn division() {
        let a = UniPoly::from_ints(&[1, 2, 3, 4]);
        let d = UniPoly::from_ints(&[1, 1]);
        let (q, r) = a.divrem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }
}
