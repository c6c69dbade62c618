use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalars::{PrimeConfig, Residue};

/// A square matrix over `Z/p^N`, entries kept in `[0, p^N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    n: usize,
    entries: Vec<BigInt>,
    modulus: BigInt,
}

impl ModMatrix {
    pub fn new(rows: &[Vec<BigInt>], modulus: &BigInt) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Unsupported("matrix must be square".into()));
        }
        Ok(ModMatrix {
            n,
            entries: rows.iter().flatten().map(|x| x.mod_floor(modulus)).collect(),
            modulus: modulus.clone(),
        })
    }

    pub fn from_i64(rows: &[Vec<i64>], modulus: &BigInt) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        ModMatrix::new(&rows, modulus)
    }

    pub fn identity(n: usize, modulus: &BigInt) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one().mod_floor(modulus);
        }
        ModMatrix {
            n,
            entries,
            modulus: modulus.clone(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn residues(&self, cfg: &PrimeConfig, precision: u32) -> Vec<Vec<Residue>> {
        self.rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| Residue::new(x, cfg, precision)).collect())
            .collect()
    }

    /// The same matrix read modulo a divisor of the modulus.
    pub fn reduce(&self, modulus: &BigInt) -> ModMatrix {
        ModMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| x.mod_floor(modulus)).collect(),
            modulus: modulus.clone(),
        }
    }

    fn map2(&self, other: &ModMatrix, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> ModMatrix {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        ModMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b).mod_floor(&self.modulus))
                .collect(),
            modulus: self.modulus.clone(),
        }
    }

    pub fn add(&self, other: &ModMatrix) -> ModMatrix {
        self.map2(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ModMatrix) -> ModMatrix {
        self.map2(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &BigInt) -> ModMatrix {
        ModMatrix {
            n: self.n,
            entries: self.entries.iter().map(|a| (a * c).mod_floor(&self.modulus)).collect(),
            modulus: self.modulus.clone(),
        }
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        let n = self.n;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * &other.entries[k * n + j];
                }
            }
        }
        for e in &mut entries {
            *e = e.mod_floor(&self.modulus);
        }
        ModMatrix {
            n,
            entries,
            modulus: self.modulus.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }
}

/// Lifts an idempotent mod `p` to one mod `p^N`:
/// `ê = e + (2e − 1)·Σ_{n=1}^{N} binom(2n−1, n) xⁿ` with `x = e − e²`.
pub fn lift_idempotent(e: &ModMatrix, cfg: &PrimeConfig, precision: u32) -> Result<ModMatrix> {
    if precision == 0 {
        return Err(Error::ZeroPrecision);
    }
    let p = BigInt::from(cfg.p());
    if !e.reduce(&p).is_idempotent() {
        return Err(Error::NotApproxIdempotent);
    }
    let modulus = cfg.modulus(precision);
    let e = e.reduce(&modulus);
    let x = e.sub(&e.mul(&e));
    let mut phi = ModMatrix::new(&vec![vec![BigInt::zero(); e.n]; e.n], &modulus)?;
    let mut xn = ModMatrix::identity(e.n, &modulus);
    for n in 1..=precision as u64 {
        xn = xn.mul(&x);
        if xn.is_zero() {
            break;
        }
        let c = num_integer::binomial(BigInt::from(2 * n - 1), BigInt::from(n));
        phi = phi.add(&xn.scale(&c));
    }
    let two_e_minus_one = e.scale(&BigInt::from(2)).sub(&ModMatrix::identity(e.n, &modulus));
    Ok(e.add(&two_e_minus_one.mul(&phi)))
}

#[cfg(test)]
mod tests {
    use super::*;

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

    #[test]
    fn spec_example() {
        let cfg = PrimeConfig::new(5, 4).unwrap();
        let m = cfg.modulus(4);
        let e = ModMatrix::from_i64(&[vec![1, 1], vec![0, 5]], &m).unwrap();
        let l = lift_idempotent(&e, &cfg, 4).unwrap();
        assert!(l.is_idempotent());
        assert_eq!(l.reduce(&BigInt::from(5)), e.reduce(&BigInt::from(5)));
        assert_eq!(l, newton(&e));
    }

    #[test]
    fn exact_idempotents_are_fixed() {
        let cfg = PrimeConfig::new(7, 6).unwrap();
        let m = cfg.modulus(6);
        let e = ModMatrix::from_i64(&[vec![1, 3], vec![0, 0]], &m).unwrap();
        assert_eq!(lift_idempotent(&e, &cfg, 6).unwrap(), e);
        let z = ModMatrix::from_i64(&[vec![0, 0], vec![0, 0]], &m).unwrap();
        assert_eq!(lift_idempotent(&z, &cfg, 6).unwrap(), z);
    }

    #[test]
    fn rejects_non_idempotent() {
        let cfg = PrimeConfig::new(5, 4).unwrap();
        let e = ModMatrix::from_i64(&[vec![2, 0], vec![0, 1]], &cfg.modulus(4)).unwrap();
        assert_eq!(lift_idempotent(&e, &cfg, 4), Err(Error::NotApproxIdempotent));
    }
}
