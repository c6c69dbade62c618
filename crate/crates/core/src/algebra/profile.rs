//! Growth profiles: degree-homogeneous `V`-submodules of a graded algebra.
//!
//! A profile `w` stands for the submodule spanned by `p^{w(d)}·m` over all
//! monomials `m` of degree `d`; `None` means no monomial of that degree is
//! allowed. Inclusion of submodules becomes a pointwise inequality
//! `M ⊆ N ⟺ w_M ≥ w_N`, sums become pointwise minima and products become
//! min-plus convolutions.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Minimum valuation required in a degree; `None` is `+∞`.
pub type Weight = Option<u32>;

fn wadd(a: Weight, b: Weight) -> Weight {
    Some(a? + b?)
}

fn wmin(a: Weight, b: Weight) -> Weight {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

/// `a ≥ b` in `ℕ ∪ {∞}`.
fn wge(a: Weight, b: Weight) -> bool {
    match (a, b) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(x), Some(y)) => x >= y,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GrowthProfile {
    w: Vec<Weight>,
}

impl GrowthProfile {
    pub fn from_weights(w: Vec<Weight>) -> Self {
        assert!(!w.is_empty(), "profile needs at least degree 0");
        GrowthProfile { w }
    }

    /// `F_k`: every monomial of degree at most `k`, no valuation condition.
    pub fn filtration(k: u32, cap: u32) -> Self {
        GrowthProfile {
            w: (0..=cap).map(|d| (d <= k).then_some(0)).collect(),
        }
    }

    /// The zero submodule.
    pub fn zero_module(cap: u32) -> Self {
        GrowthProfile {
            w: vec![None; cap as usize + 1],
        }
    }

    pub fn cap(&self) -> u32 {
        (self.w.len() - 1) as u32
    }

    pub fn weights(&self) -> &[Weight] {
        &self.w
    }

    /// Weight at degree `d`; degrees beyond the cap are treated as excluded.
    pub fn weight(&self, d: u32) -> Weight {
        self.w.get(d as usize).copied().flatten()
    }

    /// `M + N`.
    pub fn sum(&self, other: &GrowthProfile) -> GrowthProfile {
        assert_eq!(self.cap(), other.cap(), "profiles must share a cap");
        GrowthProfile {
            w: self.w.iter().zip(&other.w).map(|(&a, &b)| wmin(a, b)).collect(),
        }
    }

    /// `M·N`: `w(d) = min_{d₁+d₂=d} u(d₁) + v(d₂)`.
    pub fn product(&self, other: &GrowthProfile) -> GrowthProfile {
        assert_eq!(self.cap(), other.cap(), "profiles must share a cap");
        let n = self.w.len();
        let mut w = vec![None; n];
        for (d1, &a) in self.w.iter().enumerate() {
            if a.is_none() {
                continue;
            }
            for (d2, &b) in other.w[..n - d1].iter().enumerate() {
                w[d1 + d2] = wmin(w[d1 + d2], wadd(a, b));
            }
        }
        GrowthProfile { w }
    }

    /// `M^k` for `k ≥ 1`.
    pub fn power(&self, k: u32) -> GrowthProfile {
        assert!(k >= 1, "power exponent must be positive");
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self);
        }
        acc
    }

    /// `M^{(n)} = M + M² + ⋯ + Mⁿ`.
    pub fn power_sum(&self, n: u32) -> GrowthProfile {
        assert!(n >= 1, "power sum needs n >= 1");
        let mut acc = self.clone();
        let mut pow = self.clone();
        for _ in 1..n {
            pow = pow.product(self);
            acc = acc.sum(&pow);
        }
        acc
    }

    /// `M^⋄ = Σ_{i≥0} pⁱ M^{i+1}`: `w(d) = min_i (i + u^{i+1}(d))`.
    pub fn diamond(&self) -> GrowthProfile {
        let cap = self.cap();
        let mut best = self.w.clone();
        let mut pow = self.clone();
        let mut i: u32 = 0;
        loop {
            let done = i >= cap
                && best
                    .iter()
                    .all(|b| b.map_or(true, |v| v <= i + 1));
            if done {
                break;
            }
            i += 1;
            pow = pow.product(self);
            for (b, &p) in best.iter_mut().zip(&pow.w) {
                *b = wmin(*b, wadd(Some(i), p));
            }
        }
        GrowthProfile { w: best }
    }

    /// `p^k·M`.
    pub fn shift(&self, k: u32) -> GrowthProfile {
        GrowthProfile {
            w: self.w.iter().map(|&a| wadd(a, Some(k))).collect(),
        }
    }

    /// `self ⊆ other`.
    pub fn is_contained_in(&self, other: &GrowthProfile) -> bool {
        self.first_excess(other).is_none()
    }

    /// First degree where `self ⊄ other`.
    pub fn first_excess(&self, other: &GrowthProfile) -> Option<u32> {
        (0..=self.cap().max(other.cap()))
            .find(|&d| !wge(self.weight(d), other.weight(d)))
    }

    /// Whether `c·m` with `val(c) = v` and `deg m = d` lies in the submodule.
    pub fn admits(&self, d: u32, v: i64) -> bool {
        match self.weight(d) {
            None => false,
            Some(w) => v >= w as i64,
        }
    }
}

impl fmt::Display for GrowthProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .w
            .iter()
            .map(|w| w.map_or("inf".to_string(), |v| v.to_string()))
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// The five inclusions relating `⋄` to sums and products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiamLaw {
    /// `M^⋄ + N^⋄ ⊆ (M+N)^⋄`
    SumHull,
    /// `M·N^⋄ ⊆ ((MN + N)^{(2)})^⋄` and the mirrored statement
    ModuleTimesHull,
    /// `p·M^⋄·M^⋄ ⊆ M^⋄`
    HullMultiplicative,
    /// `M^⋄·N^⋄ ⊆ ((M+N)^{(2)})^⋄`
    HullProduct,
    /// `(M^⋄)^⋄ = M^⋄`
    Idempotent,
}

impl DiamLaw {
    pub const ALL: [DiamLaw; 5] = [
        DiamLaw::SumHull,
        DiamLaw::ModuleTimesHull,
        DiamLaw::HullMultiplicative,
        DiamLaw::HullProduct,
        DiamLaw::Idempotent,
    ];

    pub fn number(self) -> u8 {
        match self {
            DiamLaw::SumHull => 1,
            DiamLaw::ModuleTimesHull => 2,
            DiamLaw::HullMultiplicative => 3,
            DiamLaw::HullProduct => 4,
            DiamLaw::Idempotent => 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiamLawReport {
    pub cap: u32,
    pub laws_checked: Vec<u8>,
    /// First violated `(law, degree)`, if any.
    pub violation: Option<(u8, u32)>,
}

impl DiamLawReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the `⋄` laws pointwise for the given pair of profiles.
pub fn check_diam_laws(u: &GrowthProfile, v: &GrowthProfile, laws: &[DiamLaw]) -> DiamLawReport {
    assert_eq!(u.cap(), v.cap(), "profiles must share a cap");
    let ud = u.diamond();
    let vd = v.diamond();
    let mut violation = None;
    for &law in laws {
        let failed = match law {
            DiamLaw::SumHull => ud.sum(&vd).first_excess(&u.sum(v).diamond()),
            DiamLaw::ModuleTimesHull => {
                let left = u.product(&vd);
                let right = u.product(v).sum(v).power_sum(2).diamond();
                let mirrored_left = vd.product(u);
                let mirrored_right = v.product(u).sum(v).power_sum(2).diamond();
                left.first_excess(&right)
                    .or_else(|| mirrored_left.first_excess(&mirrored_right))
            }
            DiamLaw::HullMultiplicative => ud.product(&ud).shift(1).first_excess(&ud),
            DiamLaw::HullProduct => ud.product(&vd).first_excess(&u.sum(v).power_sum(2).diamond()),
            DiamLaw::Idempotent => {
                let dd = ud.diamond();
                dd.first_excess(&ud).or_else(|| ud.first_excess(&dd))
            }
        };
        if let Some(d) = failed {
            violation = Some((law.number(), d));
            break;
        }
    }
    DiamLawReport {
        cap: u.cap(),
        laws_checked: laws.iter().map(|l| l.number()).collect(),
        violation,
    }
}

impl GrowthProfile {
    /// Checks all five `⋄` laws for `(self, other)`.
    pub fn check_diam_laws(&self, other: &GrowthProfile) -> DiamLawReport {
        check_diam_laws(self, other, &DiamLaw::ALL)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over `i ≤ bound`, straight from the defining sum.
    fn diamond_oracle(u: &GrowthProfile, bound: u32) -> Vec<Weight> {
        (0..=u.cap())
            .map(|d| {
                (0..=bound)
                    .filter_map(|i| u.power(i + 1).weight(d).map(|w| w + i))
                    .min()
            })
            .collect()
    }

    #[test]
    fn product_examples() {
        let f1 = GrowthProfile::filtration(1, 10);
        assert_eq!(f1.product(&f1), GrowthProfile::filtration(2, 10));
        assert_eq!(f1.product(&GrowthProfile::zero_module(10)), GrowthProfile::zero_module(10));
        let f2 = GrowthProfile::filtration(2, 10);
        let f3 = GrowthProfile::filtration(3, 10);
        assert_eq!(f2.product(&f3), GrowthProfile::filtration(5, 10));
    }

    #[test]
    fn diamond_of_f1() {
        let d = GrowthProfile::filtration(1, 12).diamond();
        assert_eq!(d.weight(0), Some(0));
        assert_eq!(d.weight(1), Some(0));
        assert_eq!(d.weight(3), Some(2));
        assert_eq!(d.weights(), diamond_oracle(&GrowthProfile::filtration(1, 12), 12).as_slice());
    }

    #[test]
    fn diamond_of_f2() {
        let f2 = GrowthProfile::filtration(2, 12);
        let d = f2.diamond();
        assert_eq!(d.weight(5), Some(2));
        assert_eq!(d.weights(), diamond_oracle(&f2, 12).as_slice());
    }

    #[test]
    fn diamond_is_idempotent() {
        let d = GrowthProfile::filtration(1, 15).diamond();
        assert_eq!(d.diamond(), d);
    }

    #[test]
    fn diam_laws_pass() {
        let f1 = GrowthProfile::filtration(1, 12);
        assert!(f1.check_diam_laws(&f1).passed());
        let f2 = GrowthProfile::filtration(2, 12);
        let f3 = GrowthProfile::filtration(3, 12);
        assert!(f2.check_diam_laws(&f3).passed());
        let f1 = GrowthProfile::filtration(1, 20);
        assert!(check_diam_laws(&f1, &f1, &[DiamLaw::Idempotent]).passed());
    }

    #[test]
    fn containment_detects_excess() {
        let f1 = GrowthProfile::filtration(1, 6);
        let f2 = GrowthProfile::filtration(2, 6);
        assert!(f1.is_contained_in(&f2));
        assert_eq!(f2.first_excess(&f1), Some(2));
    }
}
