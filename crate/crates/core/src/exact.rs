//! Parity-resolved truncated diagonalization of the full Hamiltonian.
//!
//! In the basis `|↑,0⟩, |↓,1⟩, |↑,2⟩, …` (and its spin-flipped partner) each
//! parity sector is a symmetric tridiagonal chain with diagonal
//! `mω ± (−1)^m Δ/2` and off-diagonal `g√(m+1)`. Only the lowest levels are
//! needed, so eigenvalues come from Sturm-count bisection.

use serde::{Deserialize, Serialize};

use crate::error::{QrmError, Result};
use crate::params::ModelParams;

/// Eigenvalue of `P = σz e^{iπ a†a}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

/// Truncated Hamiltonian of one parity sector.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalBlock {
    pub parity: Parity,
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl TridiagonalBlock {
    pub fn size(&self) -> usize {
        self.diag.len()
    }

    /// Lowest `count` eigenvalues, ascending.
    pub fn lowest_eigenvalues(&self, count: usize) -> Vec<f64> {
        lowest_tridiagonal_eigenvalues(&self.diag, &self.offdiag, count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactLevel {
    pub energy: f64,
    pub parity: Parity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactSpectrum {
    pub params: ModelParams,
    pub truncation: usize,
    /// Ascending.
    pub energies: Vec<ExactLevel>,
    pub converged_count: usize,
}

impl ExactSpectrum {
    pub fn values(&self) -> Vec<f64> {
        self.energies.iter().map(|l| l.energy).collect()
    }
}

/// Largest truncation tried before giving up.
pub const MAX_TRUNCATION: usize = 16384;

/// Two levels closer than this (in units of ω) count as degenerate.
pub const DEGENERACY_THRESHOLD: f64 = 1e-6;

pub fn build_parity_block(params: &ModelParams, parity: Parity, size: usize) -> Result<TridiagonalBlock> {
    if size < 2 {
        return Err(QrmError::InvalidArgument(format!(
            "parity block needs at least 2 states, got {size}"
        )));
    }
    params.validate()?;
    let half = 0.5 * params.delta * parity.sign();
    let diag = (0..size)
        .map(|m| {
            let alt = if m % 2 == 0 { half } else { -half };
            m as f64 * params.omega + alt
        })
        .collect();
    let offdiag = (0..size - 1)
        .map(|m| params.g * ((m + 1) as f64).sqrt())
        .collect();
    Ok(TridiagonalBlock {
        parity,
        diag,
        offdiag,
    })
}

/// Initial truncation for the adaptive solver.
pub fn initial_truncation(params: &ModelParams, n_levels: usize) -> usize {
    let r = params.g / params.omega;
    64usize.max(8 * n_levels + (16.0 * r * r).ceil() as usize)
}

fn merged_levels(params: &ModelParams, size: usize, n_levels: usize) -> Result<Vec<ExactLevel>> {
    let even = build_parity_block(params, Parity::Even, size)?;
    let odd = build_parity_block(params, Parity::Odd, size)?;
    let count = n_levels.min(size);
    let (e, o) = rayon::join(|| even.lowest_eigenvalues(count), || odd.lowest_eigenvalues(count));
    let mut levels: Vec<ExactLevel> = e
        .into_iter()
        .map(|energy| ExactLevel { energy, parity: Parity::Even })
        .chain(o.into_iter().map(|energy| ExactLevel { energy, parity: Parity::Odd }))
        .collect();
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.parity.cmp(&b.parity)));
    levels.truncate(n_levels);
    Ok(levels)
}

/// Lowest `n_levels` energies of the full model, with truncation doubled until
/// they move by less than `tol` between successive sizes.
pub fn exact_spectrum(params: &ModelParams, n_levels: usize, tol: f64) -> Result<ExactSpectrum> {
    if n_levels < 1 {
        return Err(QrmError::InvalidArgument("n_levels must be at least 1".into()));
    }
    if !(tol > 0.0) {
        return Err(QrmError::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    params.validate()?;

    let mut size = initial_truncation(params, n_levels);
    let mut previous = merged_levels(params, size, n_levels)?;
    loop {
        let next_size = size * 2;
        if next_size > MAX_TRUNCATION {
            return Err(QrmError::NotConverged { truncation: size, tol });
        }
        let current = merged_levels(params, next_size, n_levels)?;
        let converged_count = current
            .iter()
            .zip(&previous)
            .take_while(|(a, b)| (a.energy - b.energy).abs() < tol)
            .count();
        size = next_size;
        if converged_count == n_levels {
            return Ok(ExactSpectrum {
                params: *params,
                truncation: size,
                energies: current,
                converged_count,
            });
        }
        previous = current;
    }
}

/// Number of eigenvalues of the symmetric tridiagonal matrix strictly below `x`.
///
/// `offdiag_sq[i]` holds the squared coupling between rows `i` and `i + 1`.
pub fn sturm_count(diag: &[f64], offdiag_sq: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - x;
    if q.abs() < pivmin {
        q = -pivmin;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        q = diag[i] - x - offdiag_sq[i - 1] / q;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Lowest `count` eigenvalues of a symmetric tridiagonal matrix, by bisection.
pub fn lowest_tridiagonal_eigenvalues(diag: &[f64], offdiag: &[f64], count: usize) -> Vec<f64> {
    let n = diag.len();
    let count = count.min(n);
    if count == 0 {
        return Vec::new();
    }
    assert_eq!(offdiag.len() + 1, n, "off-diagonal must be one shorter than the diagonal");

    let offdiag_sq: Vec<f64> = offdiag.iter().map(|e| e * e).collect();
    let radius = |i: usize| {
        let left = if i > 0 { offdiag[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { offdiag[i].abs() } else { 0.0 };
        left + right
    };
    let mut lower = f64::INFINITY;
    let mut upper = f64::NEG_INFINITY;
    for (i, &d) in diag.iter().enumerate() {
        lower = lower.min(d - radius(i));
        upper = upper.max(d + radius(i));
    }
    let scale = lower.abs().max(upper.abs()).max(1.0);
    let max_sq = offdiag_sq.iter().copied().fold(1.0, f64::max);
    let pivmin = f64::MIN_POSITIVE * max_sq;
    lower -= 2.0 * f64::EPSILON * scale;
    upper += 2.0 * f64::EPSILON * scale;

    // Upper bounds discovered while bisecting earlier eigenvalues.
    let mut hi_bound = vec![upper; count];
    let mut values = Vec::with_capacity(count);
    let mut lo_start = lower;
    for k in 0..count {
        let mut lo = lo_start;
        let mut hi = hi_bound[k];
        loop {
            let mid = 0.5 * (lo + hi);
            let width_tol = 2.0 * f64::EPSILON * (lo.abs().max(hi.abs())) + pivmin;
            if hi - lo <= width_tol || mid <= lo || mid >= hi {
                break;
            }
            let c = sturm_count(diag, &offdiag_sq, mid, pivmin);
            if c > k {
                hi = mid;
                for bound in hi_bound.iter_mut().take(c.min(count)).skip(k + 1) {
                    if mid < *bound {
                        *bound = mid;
                    }
                }
            } else {
                lo = mid;
            }
        }
        let value = 0.5 * (lo + hi);
        values.push(value);
        lo_start = lo;
    }
    values
}
