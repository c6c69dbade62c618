//! The analytic tensor algebra at level `m`.
//!
//! Under `T R ≅ Ω^ev R` with the Fedosov product, `J R^m` is `⊕_{n≥m} Ω^{2n}`,
//! so the tube algebra is `Σ_n p^{-⌊n/m⌋} Ω^{2n} R`. Membership is a
//! valuation bound per component.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraPresentation, GrowthProfile, Monomial};
use crate::error::{Error, Result};
use crate::ncforms::{Form, Tuple};
use crate::sample::{scalar_with_valuation, MonomialPool};
use crate::scalars::{PrimeConfig, Scalar, Valuation};

/// A finite sum of even forms; the component at key `n` has degree `2n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EvenForm(Form);

impl EvenForm {
    pub fn new(form: Form) -> Result<Self> {
        if let Some(d) = form.degrees().into_iter().find(|d| d % 2 == 1) {
            return Err(Error::WrongDegree {
                expected: d + 1,
                found: d,
            });
        }
        Ok(EvenForm(form))
    }

    pub fn zero() -> Self {
        EvenForm(Form::zero())
    }

    pub fn form(&self) -> &Form {
        &self.0
    }

    pub fn into_form(self) -> Form {
        self.0
    }

    /// `ω_{2n}`.
    pub fn component(&self, n: usize) -> Form {
        self.0.component(2 * n)
    }

    /// Least `n` with `ω_{2n} ≠ 0`; `None` is `+∞`.
    pub fn jdegree(&self) -> Option<usize> {
        self.0.degrees().into_iter().next().map(|d| d / 2)
    }

    pub fn fedosov(&self, other: &EvenForm, alg: &AlgebraPresentation) -> Result<EvenForm> {
        Ok(EvenForm(self.0.fedosov(&other.0, alg)?))
    }

    pub fn add(&self, other: &EvenForm) -> EvenForm {
        EvenForm(self.0.add(&other.0))
    }
}

pub fn jdegree(x: &EvenForm) -> Option<usize> {
    x.jdegree()
}

pub fn fedosov_even(x: &EvenForm, y: &EvenForm, alg: &AlgebraPresentation) -> Result<EvenForm> {
    x.fedosov(y, alg)
}

/// `x ∈ Σ p^{-⌊n/m⌋} Ω^{2n} R`.
pub fn tube_member(x: &EvenForm, m: u32, cfg: &PrimeConfig) -> bool {
    assert!(m >= 1, "tube level must be positive");
    x.0.iter().all(|(t, c)| {
        let n = (t.len() - 1) / 2;
        c.valuation(cfg.p()) >= Valuation::Finite(-((n as i64) / m as i64))
    })
}

/// Level `m`, slope `α ∈ (0, 1/m)`, offset `f` and the module `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TubeParams {
    m: u32,
    alpha: Scalar,
    f: u32,
    profile: GrowthProfile,
}

impl TubeParams {
    pub fn new(m: u32, alpha: Scalar, f: u32, profile: GrowthProfile) -> Result<Self> {
        let bound = Scalar::ratio(1, m.max(1) as i64);
        if m == 0 || alpha <= Scalar::zero() || alpha >= bound {
            return Err(Error::InvalidPresentation(format!(
                "tube parameters need m >= 1 and 0 < alpha < 1/m, got m = {m}, alpha = {alpha}"
            )));
        }
        Ok(TubeParams {
            m,
            alpha,
            f,
            profile,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn profile(&self) -> &GrowthProfile {
        &self.profile
    }

    /// `⌊min{n/m, αn + f}⌋`.
    pub fn exponent(&self, n: u64) -> i64 {
        let by_level = n / self.m as u64;
        let lin = &(&self.alpha * &Scalar::from(n as i64)) + &Scalar::from(self.f as i64);
        let by_growth = floor(&lin);
        (by_level as i64).min(by_growth)
    }
}

fn floor(s: &Scalar) -> i64 {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    s.numer().div_floor(s.denom()).to_i64().expect("floor fits in i64")
}

/// Least valuation a coefficient needs for `c·(m₀ dm₁ ⋯ dm_n)` to lie in
/// `Ω^n M = M̃ ⊗ M^{⊗n}`, or `None` if some slot is outside `M`.
pub fn tuple_weight(t: &[Monomial], profile: &GrowthProfile) -> Option<i64> {
    let mut w = if t[0].is_unit() {
        0
    } else {
        profile.weight(t[0].degree())? as i64
    };
    for m in &t[1..] {
        w += profile.weight(m.degree())? as i64;
    }
    Some(w)
}

/// Whether a form lies in `Ω^n M` slot by slot.
pub fn in_omega_of(form: &Form, profile: &GrowthProfile, p: u64) -> bool {
    form.iter().all(|(t, c)| match tuple_weight(t, profile) {
        None => false,
        Some(w) => c.valuation(p) >= Valuation::Finite(w),
    })
}

/// `x ∈ D_m(M, α, f) = ⊕ p^{-⌊min{n/m, αn+f}⌋} Ω^{2n} M`.
pub fn dm_member(x: &EvenForm, params: &TubeParams, cfg: &PrimeConfig) -> bool {
    x.0.iter().all(|(t, c)| {
        let n = ((t.len() - 1) / 2) as u64;
        match tuple_weight(t, &params.profile) {
            None => false,
            Some(w) => c.valuation(cfg.p()) >= Valuation::Finite(w - params.exponent(n)),
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloorReport {
    pub n_max: u64,
    pub checked: u64,
    /// `(m, j, n)` violating `⌊n/2m⌋ ≤ ⌊j/m⌋ + ⌊(n−j−1)/m⌋`.
    pub split_violation: Option<(u64, u64, u64)>,
    /// `(m, n₁, n₂)` violating `⌊n₁/m⌋ + ⌊n₂/m⌋ ≤ ⌊(n₁+n₂)/m⌋`.
    pub superadditive_violation: Option<(u64, u64, u64)>,
}

impl FloorReport {
    pub fn passed(&self) -> bool {
        self.split_violation.is_none() && self.superadditive_violation.is_none()
    }
}

/// Exhaustive check of the floor inequalities for `1 ≤ m ≤ N`, `0 ≤ j < n ≤ N`.
pub fn floor_estimates(n_max: u64) -> FloorReport {
    let mut checked = 0;
    let mut split_violation = None;
    let mut superadditive_violation = None;
    for m in 1..=n_max {
        for n in 1..=n_max {
            for j in 0..n {
                checked += 1;
                if split_violation.is_none() && n / (2 * m) > j / m + (n - j - 1) / m {
                    split_violation = Some((m, j, n));
                }
            }
        }
        for n1 in 0..=n_max {
            for n2 in 0..=n_max {
                checked += 1;
                if superadditive_violation.is_none() && n1 / m + n2 / m > (n1 + n2) / m {
                    superadditive_violation = Some((m, n1, n2));
                }
            }
        }
    }
    FloorReport {
        n_max,
        checked,
        split_violation,
        superadditive_violation,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthCheckReport {
    pub degrees: Vec<usize>,
    pub samples: usize,
    pub violations: usize,
    pub first_violation: Option<String>,
}

impl GrowthCheckReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Samples `Ω^{i₀}M ⊙ ⋯ ⊙ Ω^{i_n}M` and checks it lands in
/// `⊕_{j=0}^n Ω^{i+2j}(M^{(3)})`.
pub fn fedosov_growth_check<R: Rng>(
    alg: &AlgebraPresentation,
    profile: &GrowthProfile,
    degrees: &[usize],
    samples: usize,
    cfg: &PrimeConfig,
    rng: &mut R,
) -> Result<GrowthCheckReport> {
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::Unsupported("form degrees must be at least 1".into()));
    }
    let total: usize = degrees.iter().sum();
    let pool = MonomialPool::admitted(alg, profile);
    if pool.nonunit.is_empty() {
        return Err(Error::Unsupported("module has no non-unit monomials".into()));
    }
    // M lives in degrees ≤ cap; M³ reaches 3·cap
    let wide = GrowthProfile::from_weights(
        profile
            .weights()
            .iter()
            .copied()
            .chain(std::iter::repeat(None))
            .take(3 * profile.cap() as usize + 1)
            .collect(),
    );
    let target = wide.power_sum(3);
    let allowed: Vec<usize> = (0..degrees.len()).map(|j| total + 2 * j).collect();
    let alg = alg
        .clone()
        .with_cap(alg.cap().max(profile.cap() * (total as u32 + degrees.len() as u32) * 2));

    let mut violations = 0;
    let mut first_violation = None;
    for _ in 0..samples {
        let factors: Vec<Form> = degrees
            .iter()
            .map(|&i| {
                let t = pool.tuple(rng, i);
                let w = tuple_weight(&t, profile).expect("sampled inside M");
                let v = w + rng.gen_range(0..2);
                Form::basis(&t, scalar_with_valuation(rng, cfg.p(), v))
            })
            .collect();
        let mut prod = factors[0].clone();
        for f in &factors[1..] {
            prod = prod.fedosov(f, &alg)?;
        }
        let bad = prod.iter().find(|(t, c)| {
            !allowed.contains(&(t.len() - 1))
                || match tuple_weight(t, &target) {
                    None => true,
                    Some(w) => c.valuation(cfg.p()) < Valuation::Finite(w),
                }
        });
        if let Some((t, c)) = bad {
            violations += 1;
            if first_violation.is_none() {
                let term: Tuple = t.clone();
                first_violation = Some(Form::basis(&term, c.clone()).format(&alg));
            }
        }
    }
    Ok(GrowthCheckReport {
        degrees: degrees.to_vec(),
        samples,
        violations,
        first_violation,
    })
}

/// A random element of the level-`m` tube with components `n ≤ max_n`,
/// each coefficient at or just above the valuation bound `−⌊n/m⌋`.
pub fn random_tube_element<R: Rng>(
    rng: &mut R,
    pool: &MonomialPool,
    m: u32,
    max_n: usize,
    terms: usize,
    cfg: &PrimeConfig,
) -> EvenForm {
    let mut f = Form::zero();
    for _ in 0..terms {
        let n = rng.gen_range(0..=max_n);
        let v = -((n as i64) / m as i64) + rng.gen_range(0..2);
        f.add_term(pool.tuple(rng, 2 * n), scalar_with_valuation(rng, cfg.p(), v));
    }
    EvenForm(f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub level: u32,
    pub pairs: usize,
    pub violations: usize,
}

/// Fedosov products of sampled tube elements stay in the tube.
pub fn tube_closure_check<R: Rng>(
    alg: &AlgebraPresentation,
    m: u32,
    pairs: usize,
    slot_degree: u32,
    cfg: &PrimeConfig,
    rng: &mut R,
) -> Result<ClosureReport> {
    let pool = MonomialPool::new(alg, slot_degree);
    let mut violations = 0;
    for _ in 0..pairs {
        let x = random_tube_element(rng, &pool, m, 2, 2, cfg);
        let y = random_tube_element(rng, &pool, m, 2, 2, cfg);
        debug_assert!(tube_member(&x, m, cfg) && tube_member(&y, m, cfg));
        if !tube_member(&x.fedosov(&y, alg)?, m, cfg) {
            violations += 1;
        }
    }
    Ok(ClosureReport {
        level: m,
        pairs,
        violations,
    })
}
