//! Displaced-oscillator algebra of the Δ = 0 model.

use serde::{Deserialize, Serialize};

use crate::params::ModelParams;
use crate::poly::{laguerre, ln_factorial};

/// Spin state `|±x⟩` a displaced oscillator is attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

/// A displaced Fock state `|n_±, ±⟩` and its energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DisplacedLevel {
    pub n: usize,
    pub branch: Branch,
    pub energy: f64,
}

impl DisplacedLevel {
    pub fn new(n: usize, branch: Branch, params: &ModelParams) -> Self {
        Self {
            n,
            branch,
            energy: displaced_energy(n, params),
        }
    }
}

/// `nω − g²/ω`, the same for both spin branches.
pub fn displaced_energy(n: usize, params: &ModelParams) -> f64 {
    n as f64 * params.omega + params.polaron_shift()
}

/// Overlap `⟨m_−|n_+⟩` of Fock states displaced by `∓alpha`.
///
/// For `m ≤ n` this is `e^{−2α²} |2α|^{n−m} √(m!/n!) L_m^{n−m}(4α²)`; the
/// `m > n` case follows from `⟨m_−|n_+⟩ = (−1)^{m−n} ⟨n_−|m_+⟩`.
pub fn coherent_overlap(m: usize, n: usize, alpha: f64) -> f64 {
    if m > n {
        let s = if (m - n).is_multiple_of(2) { 1.0 } else { -1.0 };
        return s * coherent_overlap(n, m, alpha);
    }
    let x = 4.0 * alpha * alpha;
    let gap = n - m;
    let lag = laguerre(m, gap, x);
    if gap == 0 {
        return (-0.5 * x).exp() * lag;
    }
    if alpha == 0.0 {
        return 0.0;
    }
    // Prefactor assembled in log space: |2α|^{gap} √(m!/n!) e^{−2α²}.
    let log_pref = gap as f64 * (2.0 * alpha.abs()).ln()
        + 0.5 * (ln_factorial(m) - ln_factorial(n))
        - 0.5 * x;
    log_pref.exp() * lag
}
