//! Juddian points: zeros of the normalized constraint polynomials.
//!
//! `K_n` is a polynomial in `x = (g/ω)²`, so roots are bracketed on a uniform
//! grid in `x` and refined by bisection.

use serde::{Deserialize, Serialize};

use crate::approx::{branch_energies, Method, SPECTRUM_POLY};
use crate::error::{QrmError, Result};
use crate::exact::lowest_tridiagonal_eigenvalues;
use crate::oscillator::{displaced_energy, Branch};
use crate::params::ModelParams;
use crate::poly::scaled_recurrence;

/// Number of uniform bracketing intervals on `(0, x_max]`.
pub const BRACKET_POINTS: usize = 2048;

/// An exact level crossing of pair `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JuddianPoint {
    pub n: usize,
    pub g_star: f64,
    pub delta: f64,
    pub omega: f64,
    /// `nω − g*²/ω`.
    pub energy: f64,
    /// `|K_n(g*, Δ)|`.
    pub residual: f64,
}

impl JuddianPoint {
    pub fn params(&self) -> ModelParams {
        ModelParams {
            delta: self.delta,
            omega: self.omega,
            g: self.g_star,
        }
    }
}

/// Zeros of `L_n`, ascending, as eigenvalues of its Jacobi matrix.
pub fn laguerre_zeros(n: usize) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    let diag: Vec<f64> = (0..n).map(|k| (2 * k + 1) as f64).collect();
    let off: Vec<f64> = (1..n).map(|k| k as f64).collect();
    lowest_tridiagonal_eigenvalues(&diag, &off, n)
}

/// Upper end of the bracketing window in `x = (g/ω)²`.
pub fn bracket_limit(n: usize, delta_over_omega: f64) -> f64 {
    let largest = laguerre_zeros(n).last().copied().unwrap_or(0.0);
    0.25 * largest + delta_over_omega * delta_over_omega / 8.0 + 1.0
}

/// Positive couplings `g*` at which `K_n(g/ω, Δ/ω)` vanishes, ascending.
pub fn find_crossings(n: usize, delta: f64, omega: f64) -> Result<Vec<JuddianPoint>> {
    ModelParams::new(delta, omega, 0.0)?;
    if n > SPECTRUM_POLY.max_order {
        return Err(QrmError::OrderTooLarge {
            order: n,
            max: SPECTRUM_POLY.max_order,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let d2 = (delta / omega).powi(2);
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let k = |x: f64| sign * scaled_recurrence(n, n, x, d2);

    let x_max = bracket_limit(n, delta / omega);
    let step = x_max / BRACKET_POINTS as f64;
    let samples: Vec<(f64, f64)> = (0..=BRACKET_POINTS)
        .map(|i| {
            let x = i as f64 * step;
            (x, k(x))
        })
        .collect();

    let mut roots: Vec<f64> = Vec::new();
    for w in samples.windows(2) {
        let (xa, fa) = w[0];
        let (xb, fb) = w[1];
        if fb == 0.0 {
            roots.push(xb);
        } else if fa != 0.0 && fa.signum() != fb.signum() {
            roots.push(bisect(&k, xa, xb, fa));
        } else if fa.abs().min(fb.abs()) < 1e-10 {
            // Possible tangency: only a true double root reaches ~zero.
            let (xm, fm) = golden_min_abs(&k, xa, xb);
            if fm.abs() < 1e-12 && xm > 0.0 {
                roots.push(xm);
            }
        }
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < 0.5 * step);

    Ok(roots
        .into_iter()
        .filter(|&x| x > 0.0)
        .map(|x| {
            let g_star = omega * x.sqrt();
            let params = ModelParams { delta, omega, g: g_star };
            let residual = SPECTRUM_POLY
                .normalized_constraint(n, &params)
                .map(f64::abs)
                .unwrap_or(f64::NAN);
            JuddianPoint {
                n,
                g_star,
                delta,
                omega,
                energy: displaced_energy(n, &params),
                residual,
            }
        })
        .collect())
}

/// Bisection to floating-point resolution; `fa = f(a)` and `f(b)` have opposite signs.
fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    loop {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    if fa.abs() <= f(b).abs() {
        a
    } else {
        b
    }
}

fn golden_min_abs(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    for _ in 0..200 {
        if (b - a).abs() < 1e-15 * b.abs().max(1.0) {
            break;
        }
        if f(c).abs() < f(d).abs() {
            b = d;
        } else {
            a = c;
        }
        c = b - ratio * (b - a);
        d = a + ratio * (b - a);
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Predicted and found crossing counts for pair `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountCertificate {
    pub expected: usize,
    pub found: usize,
}

impl CountCertificate {
    pub fn passes(&self) -> bool {
        self.expected == self.found
    }
}

/// Checks that pair `n` has `n − k` crossings when `2k < Δ/ω < 2(k + 1)`.
pub fn crossing_count_certificate(n: usize, delta: f64, omega: f64) -> Result<CountCertificate> {
    ModelParams::new(delta, omega, 0.0)?;
    let ratio = delta / omega;
    let half = 0.5 * ratio;
    if half == half.floor() {
        return Err(QrmError::TheoremBoundary(ratio));
    }
    let k = half.floor() as usize;
    Ok(CountCertificate {
        expected: n.saturating_sub(k),
        found: find_crossings(n, delta, omega)?.len(),
    })
}

/// Values of Δ/ω at which pair `n` is degenerate at zero coupling: `2, 4, …, 2n`.
pub fn zero_coupling_degeneracies(n: usize) -> Vec<f64> {
    (1..=n).map(|k| 2.0 * k as f64).collect()
}

/// A crossing between two labelled levels of an approximate spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxCrossing {
    pub g_lo: f64,
    pub g_hi: f64,
    pub first: (usize, Branch),
    pub second: (usize, Branch),
    /// Intra-pair crossing bracketing an exact Juddian point.
    pub physical: bool,
}

/// Scans a pairwise method along a g grid for order swaps between any two of
/// its labelled levels `E_{n,±}` (n < `n_pairs`).
///
/// The exact spectrum only crosses within a pair, at Juddian points, so every
/// other swap is flagged unphysical.
pub fn approximate_crossings(
    method: Method,
    template: &ModelParams,
    g_grid: &[f64],
    n_pairs: usize,
) -> Result<Vec<ApproxCrossing>> {
    if !method.is_pairwise() {
        return Err(QrmError::InvalidArgument(format!(
            "{method} has no labelled level pairs"
        )));
    }
    let labels: Vec<(usize, Branch)> = (0..n_pairs)
        .flat_map(|n| [(n, Branch::Plus), (n, Branch::Minus)])
        .collect();
    let mut rows = Vec::with_capacity(g_grid.len());
    for &g in g_grid {
        let params = template.with_g(g);
        let mut row = Vec::with_capacity(labels.len());
        for n in 0..n_pairs {
            let (plus, minus) = branch_energies(method, n, &params)?;
            row.push(plus);
            row.push(minus);
        }
        rows.push(row);
    }
    let juddian: Vec<Vec<f64>> = (0..n_pairs)
        .map(|n| {
            find_crossings(n, template.delta, template.omega)
                .map(|pts| pts.into_iter().map(|p| p.g_star).collect())
        })
        .collect::<Result<_>>()?;

    let mut found = Vec::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            for step in 1..g_grid.len() {
                let before = rows[step - 1][i] - rows[step - 1][j];
                let after = rows[step][i] - rows[step][j];
                let swapped = (before < 0.0 && after >= 0.0) || (before > 0.0 && after <= 0.0);
                if !swapped {
                    continue;
                }
                let (g_lo, g_hi) = (g_grid[step - 1], g_grid[step]);
                let same_pair = labels[i].0 == labels[j].0;
                let physical = same_pair
                    && juddian[labels[i].0]
                        .iter()
                        .any(|&g| g >= g_lo && g <= g_hi);
                found.push(ApproxCrossing {
                    g_lo,
                    g_hi,
                    first: labels[i],
                    second: labels[j],
                    physical,
                });
            }
        }
    }
    found.sort_by(|a, b| a.g_lo.total_cmp(&b.g_lo));
    Ok(found)
}
