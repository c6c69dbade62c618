//! Exact scalars for the coefficient ring `V = Z_(p)` and its fraction field.
//!
//! Elements are exact rationals. The p-adic valuation is computed on demand,
//! and [`Residue`] gives the finite-precision image in `V / p^N` where a
//! computation genuinely works modulo a power of the uniformiser.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime `p` (the uniformiser) together with a default working precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeConfig {
    p: u64,
    default_precision: u32,
}

impl PrimeConfig {
    pub fn new(p: u64, default_precision: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if default_precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        Ok(PrimeConfig {
            p,
            default_precision,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn default_precision(&self) -> u32 {
        self.default_precision
    }

    /// `p^n` as a big integer.
    pub fn modulus(&self, n: u32) -> BigInt {
        num_traits::pow(BigInt::from(self.p), n as usize)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A value in `Z ∪ {+∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Multiplicity of the prime `p` in a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        n = q;
        v += 1;
    }
}

/// `v_p(n)` for a positive machine integer.
pub fn u64_valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n > 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// `⌊log_p(n)⌋` for `n ≥ 1`.
pub fn floor_log(n: u64, p: u64) -> u32 {
    let mut k = 0;
    let mut acc = p;
    while acc <= n {
        k += 1;
        acc = match acc.checked_mul(p) {
            Some(a) => a,
            None => break,
        };
    }
    k
}

/// An exact element of the fraction field `F = Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar(BigRational::from_integer(n))
    }

    /// `num / den`; panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar(q)
    }

    /// `p^k` for any integer `k`.
    pub fn prime_power(p: u64, k: i64) -> Self {
        let base = BigInt::from(p);
        let pow = num_traits::pow(base, k.unsigned_abs() as usize);
        if k >= 0 {
            Scalar::from_bigint(pow)
        } else {
            Scalar(BigRational::new(BigInt::one(), pow))
        }
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar(self.0.recip()))
        }
    }

    /// `v_p(numerator) − v_p(denominator)`, or `+∞` for zero.
    pub fn valuation(&self, p: u64) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        match (int_valuation(self.numer(), p), int_valuation(self.denom(), p)) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
            _ => unreachable!("nonzero rational has finite parts"),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar($tr::$method(self.0, rhs.0))
            }
        }
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar($tr::$method(&self.0, &rhs.0))
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar($tr::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

/// p-adic valuation of a scalar.
pub fn val(s: &Scalar, cfg: &PrimeConfig) -> Valuation {
    s.valuation(cfg.p())
}

pub fn is_unit(s: &Scalar, cfg: &PrimeConfig) -> bool {
    val(s, cfg) == Valuation::Finite(0)
}

/// An integer residue modulo `p^N`, `0 ≤ value < p^N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Residue {
    value: BigInt,
    modulus: BigInt,
    precision: u32,
}

impl Residue {
    pub fn new(value: BigInt, cfg: &PrimeConfig, precision: u32) -> Self {
        let modulus = cfg.modulus(precision);
        Residue {
            value: value.mod_floor(&modulus),
            modulus,
            precision,
        }
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }
}

/// Image of `s` in `V / p^N`; the denominator is inverted modulo `p^N`.
pub fn reduce_mod(s: &Scalar, n: u32, cfg: &PrimeConfig) -> Result<Residue> {
    if let Valuation::Finite(v) = val(s, cfg) {
        if v < 0 {
            return Err(Error::NegativeValuation(v));
        }
    }
    let modulus = cfg.modulus(n);
    let den = s.denom().mod_floor(&modulus);
    let den_inv = mod_inverse(&den, &modulus).expect("denominator is a unit when val >= 0");
    let value = (s.numer() * den_inv).mod_floor(&modulus);
    Ok(Residue {
        value,
        modulus,
        precision: n,
    })
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let egcd = a.extended_gcd(m);
    if egcd.gcd.is_one() {
        Some(egcd.x.mod_floor(m))
    } else if m.is_one() {
        Some(BigInt::zero())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg5() -> PrimeConfig {
        PrimeConfig::new(5, 16).unwrap()
    }

    #[test]
    fn valuation_examples() {
        let cfg = cfg5();
        assert_eq!(val(&Scalar::from(50), &cfg), Valuation::Finite(2));
        assert_eq!(val(&Scalar::ratio(1, 5), &cfg), Valuation::Finite(-1));
        assert_eq!(val(&Scalar::zero(), &cfg), Valuation::Infinite);
    }

    #[test]
    fn reduce_examples() {
        let cfg = cfg5();
        assert_eq!(reduce_mod(&Scalar::from(7), 2, &cfg).unwrap().value(), &BigInt::from(7));
        assert_eq!(
            reduce_mod(&Scalar::ratio(1, 2), 2, &cfg).unwrap().value(),
            &BigInt::from(13)
        );
        assert_eq!(
            reduce_mod(&Scalar::ratio(1, 5), 1, &cfg),
            Err(Error::NegativeValuation(-1))
        );
    }

    #[test]
    fn reduce_half_matches_brute_force_inverse() {
        // brute-force modular inverse of 2 mod 25
        let inv = (0..25).find(|k| (2 * k) % 25 == 1).unwrap();
        assert_eq!(inv, 13);
        let cfg = cfg5();
        let r = reduce_mod(&Scalar::ratio(1, 2), 2, &cfg).unwrap();
        assert_eq!(r.value(), &BigInt::from(inv));
    }

    #[test]
    fn unit_examples() {
        let cfg = cfg5();
        assert!(is_unit(&Scalar::from(3), &cfg));
        assert!(!is_unit(&Scalar::from(10), &cfg));
        assert!(is_unit(&Scalar::ratio(2, 3), &cfg));
    }

    #[test]
    fn config_validation() {
        assert_eq!(PrimeConfig::new(6, 4), Err(Error::NotPrime(6)));
        assert_eq!(PrimeConfig::new(7, 0), Err(Error::ZeroPrecision));
        assert!(PrimeConfig::new(2, 1).is_ok());
    }

    #[test]
    fn floor_log_values() {
        assert_eq!(floor_log(124, 5), 2);
        assert_eq!(floor_log(125, 5), 3);
        assert_eq!(floor_log(1, 7), 0);
        assert_eq!(floor_log(21, 7), 1);
    }
}
