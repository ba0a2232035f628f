//! Laguerre and constraint polynomials.
//!
//! The constraint polynomials `P_k^n(g, Δ)` obey a three-term recurrence in `k`
//! whose zeros at `k = n` locate the exact level crossings of the `n`th pair.
//! Raw values grow like `(k!)²`, so the default path runs the recurrence on
//! `p_k = P_k^n / (k!)²`, which stays of order one. An exact rational path is
//! kept alongside as a cross-check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{QrmError, Result};
use crate::params::ModelParams;

/// How the constraint recurrence is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScalingMode {
    /// Floating point on the `(k!)²`-scaled sequence.
    #[default]
    PerStepScaled,
    /// Exact rational arithmetic on the raw recurrence. Slow; meant for validation.
    RationalOracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyEvalSettings {
    /// Largest pair index accepted.
    pub max_order: usize,
    pub scaling_mode: ScalingMode,
}

impl Default for PolyEvalSettings {
    fn default() -> Self {
        Self {
            max_order: 20,
            scaling_mode: ScalingMode::PerStepScaled,
        }
    }
}

impl PolyEvalSettings {
    pub fn new(max_order: usize, scaling_mode: ScalingMode) -> Result<Self> {
        if max_order < 1 {
            return Err(QrmError::InvalidArgument("max_order must be at least 1".into()));
        }
        Ok(Self {
            max_order,
            scaling_mode,
        })
    }

    fn check_order(&self, n: usize) -> Result<()> {
        if n > self.max_order {
            return Err(QrmError::OrderTooLarge {
                order: n,
                max: self.max_order,
            });
        }
        Ok(())
    }

    /// `P_k^n(g/ω, Δ/ω)`.
    pub fn constraint_poly(&self, n: usize, k: usize, params: &ModelParams) -> Result<f64> {
        if k > n {
            return Err(QrmError::InvalidArgument(format!(
                "recurrence index k = {k} exceeds order n = {n}"
            )));
        }
        self.check_order(n)?;
        let p = params.dimensionless();
        match self.scaling_mode {
            ScalingMode::PerStepScaled => {
                let scaled = scaled_recurrence(n, k, p.g * p.g, p.delta * p.delta);
                Ok(scaled * factorial_f64(k).powi(2))
            }
            ScalingMode::RationalOracle => Ok(rational_recurrence(n, k, &p)
                .to_f64()
                .unwrap_or(f64::NAN)),
        }
    }

    /// `K_n = P_n^n(g, Δ) / P_n^n(0, 0)` with `P_n^n(0, 0) = (-1)^n (n!)²`.
    pub fn normalized_constraint(&self, n: usize, params: &ModelParams) -> Result<f64> {
        self.check_order(n)?;
        let p = params.dimensionless();
        match self.scaling_mode {
            ScalingMode::PerStepScaled => {
                Ok(sign(n) * scaled_recurrence(n, n, p.g * p.g, p.delta * p.delta))
            }
            ScalingMode::RationalOracle => {
                let raw = rational_recurrence(n, n, &p);
                let mut norm = BigRational::one();
                for j in 1..=n {
                    let j = BigRational::from_integer(BigInt::from(j));
                    norm = norm * j.clone() * j;
                }
                if n % 2 == 1 {
                    norm = -norm;
                }
                Ok((raw / norm).to_f64().unwrap_or(f64::NAN))
            }
        }
    }
}

fn sign(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `p_k = P_k^n / (k!)²` in terms of `x = g²` and `d = Δ²` (ω = 1).
pub(crate) fn scaled_recurrence(n: usize, k: usize, x: f64, d: f64) -> f64 {
    let quarter_d = 0.25 * d;
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 4.0 * x + quarter_d - 1.0;
    for j in 2..=k {
        let jf = j as f64;
        let a = (4.0 * jf * x + quarter_d - jf * jf) / (jf * jf);
        let b = 4.0 * (n + 1 - j) as f64 * x / (jf * (jf - 1.0));
        let next = a * cur - b * prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn rational_recurrence(n: usize, k: usize, p: &ModelParams) -> BigRational {
    let exact = |v: f64| BigRational::from_float(v).unwrap_or_else(BigRational::zero);
    let g = exact(p.g);
    let delta = exact(p.delta);
    let four = BigRational::from_integer(BigInt::from(4));
    let g2 = g.clone() * g;
    let quarter_d2 = delta.clone() * delta / four.clone();

    let mut prev = BigRational::one();
    if k == 0 {
        return prev;
    }
    let mut cur = four.clone() * g2.clone() + quarter_d2.clone() - BigRational::one();
    for j in 2..=k {
        let jr = BigRational::from_integer(BigInt::from(j));
        let a = four.clone() * jr.clone() * g2.clone() + quarter_d2.clone() - jr.clone() * jr.clone();
        let b = four.clone()
            * jr.clone()
            * (jr - BigRational::one())
            * BigRational::from_integer(BigInt::from(n + 1 - j))
            * g2.clone();
        let next = a * cur.clone() - b * prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn factorial_f64(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * j as f64)
}

/// `ln n!`, accumulated as a sum of logs.
pub(crate) fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|j| (j as f64).ln()).sum()
}

/// Associated Laguerre polynomial `L_n^k(x)` by upward recurrence in `n`.
pub fn laguerre(n: usize, k: usize, x: f64) -> f64 {
    let kf = k as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + kf - x;
    for m in 1..n {
        let mf = m as f64;
        let next = ((2.0 * mf + kf + 1.0 - x) * cur - (mf + kf) * prev) / (mf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_k^n` with default settings.
pub fn constraint_poly(n: usize, k: usize, params: &ModelParams) -> Result<f64> {
    PolyEvalSettings::default().constraint_poly(n, k, params)
}

/// `K_n(g, Δ)` with default settings.
pub fn normalized_constraint(n: usize, params: &ModelParams) -> Result<f64> {
    PolyEvalSettings::default().normalized_constraint(n, params)
}

/// `P_n^n(0, Δ) = Π_{k=1..n} (Δ²/4 − k²)`, with Δ in units of ω.
pub fn constraint_at_zero_coupling(n: usize, delta: f64) -> f64 {
    let quarter = 0.25 * delta * delta;
    (1..=n).map(|k| quarter - (k * k) as f64).product()
}

/// `4α_n²`, the Laguerre argument with the Δ-corrected displacement.
///
/// For `n ≥ 1` this is `4g² + Δ²/(4 (n!)^{1/n})`; for `n = 0` it is `4g²`.
pub fn corrected_displacement_sq(n: usize, params: &ModelParams) -> f64 {
    let p = params.dimensionless();
    let base = 4.0 * p.g * p.g;
    if n == 0 {
        return base;
    }
    let nth_root = (ln_factorial(n) / n as f64).exp();
    base + p.delta * p.delta / (4.0 * nth_root)
}
