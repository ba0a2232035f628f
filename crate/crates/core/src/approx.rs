//! Two-level-per-block approximations: AA, both GAA variants and the GRWA.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{QrmError, Result};
use crate::oscillator::{coherent_overlap, displaced_energy};
use crate::params::ModelParams;
use crate::poly::{corrected_displacement_sq, laguerre, PolyEvalSettings, ScalingMode};

/// Spectrum method tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "EXACT")]
    Exact,
    #[serde(rename = "AA")]
    Aa,
    #[serde(rename = "GAA_K")]
    GaaK,
    #[serde(rename = "GAA_L")]
    GaaL,
    #[serde(rename = "GRWA")]
    Grwa,
    #[serde(rename = "GRWA_GAA")]
    GrwaGaa,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Exact,
        Method::Aa,
        Method::GaaK,
        Method::GaaL,
        Method::Grwa,
        Method::GrwaGaa,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "EXACT",
            Method::Aa => "AA",
            Method::GaaK => "GAA_K",
            Method::GaaL => "GAA_L",
            Method::Grwa => "GRWA",
            Method::GrwaGaa => "GRWA_GAA",
        }
    }

    /// Methods whose spectrum is a ladder of independent `nω − g²/ω ± Ω_n` pairs.
    pub fn is_pairwise(self) -> bool {
        matches!(self, Method::Aa | Method::GaaK | Method::GaaL)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = QrmError;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == norm)
            .ok_or_else(|| QrmError::InvalidArgument(format!("unknown method `{s}`")))
    }
}

/// Which polynomial carries the Δ correction in the GAA tunneling strength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GaaVariant {
    /// Normalized constraint polynomial `K_n(g, Δ)`.
    K,
    /// Laguerre polynomial at the corrected argument, `L_n(4α_n²)`.
    L,
}

/// Basis the GRWA is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GrwaBasis {
    Aa,
    /// Experimental: GAA-K pair energies with corrected displacements in the overlaps.
    Gaa,
}

/// Energies of one level pair, ordered so that `e_minus <= e_plus`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairSpectrum {
    pub method: Method,
    pub n: usize,
    pub e_minus: f64,
    pub e_plus: f64,
}

impl PairSpectrum {
    fn from_tunneling(method: Method, n: usize, params: &ModelParams, omega_n: f64) -> Self {
        let centre = displaced_energy(n, params);
        let half = omega_n.abs();
        Self {
            method,
            n,
            e_minus: centre - half,
            e_plus: centre + half,
        }
    }

    pub fn gap(&self) -> f64 {
        self.e_plus - self.e_minus
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.e_plus + self.e_minus)
    }
}

/// Settings used for `K_n` inside the approximate spectra. Wider than the
/// default so that 40-level scans can reach the pairs they need.
pub(crate) const SPECTRUM_POLY: PolyEvalSettings = PolyEvalSettings {
    max_order: 48,
    scaling_mode: ScalingMode::PerStepScaled,
};

/// `Ω_n^AA = (Δ/2) e^{−2g²/ω²} L_n(4g²/ω²)`.
pub fn aa_tunneling(n: usize, params: &ModelParams) -> f64 {
    let p = params.dimensionless();
    let x = 4.0 * p.g * p.g;
    0.5 * params.delta * (-0.5 * x).exp() * laguerre(n, 0, x)
}

pub fn aa_pair(n: usize, params: &ModelParams) -> PairSpectrum {
    PairSpectrum::from_tunneling(Method::Aa, n, params, aa_tunneling(n, params))
}

/// `Ω_n^GAA = (Δ/2) e^{−2α_n²} K_n(g, Δ)`, or with `L_n(4α_n²)` for the L variant.
pub fn gaa_tunneling(n: usize, params: &ModelParams, variant: GaaVariant) -> Result<f64> {
    let x = corrected_displacement_sq(n, params);
    let poly = match variant {
        GaaVariant::K => SPECTRUM_POLY.normalized_constraint(n, params)?,
        GaaVariant::L => laguerre(n, 0, x),
    };
    Ok(0.5 * params.delta * (-0.5 * x).exp() * poly)
}

pub fn gaa_pair(n: usize, params: &ModelParams, variant: GaaVariant) -> Result<PairSpectrum> {
    let method = match variant {
        GaaVariant::K => Method::GaaK,
        GaaVariant::L => Method::GaaL,
    };
    Ok(PairSpectrum::from_tunneling(
        method,
        n,
        params,
        gaa_tunneling(n, params, variant)?,
    ))
}

/// Signed tunneling strength of a pairwise method.
pub fn tunneling(method: Method, n: usize, params: &ModelParams) -> Result<f64> {
    match method {
        Method::Aa => Ok(aa_tunneling(n, params)),
        Method::GaaK => gaa_tunneling(n, params, GaaVariant::K),
        Method::GaaL => gaa_tunneling(n, params, GaaVariant::L),
        other => Err(QrmError::InvalidArgument(format!(
            "{other} is not a pairwise method"
        ))),
    }
}

/// Energies `(E_{n,+}, E_{n,−}) = nω − g²/ω ± Ω_n` keeping the sign of `Ω_n`,
/// i.e. labelled by the symmetric/antisymmetric combination rather than by order.
pub fn branch_energies(method: Method, n: usize, params: &ModelParams) -> Result<(f64, f64)> {
    let centre = displaced_energy(n, params);
    let omega_n = tunneling(method, n, params)?;
    Ok((centre + omega_n, centre - omega_n))
}

pub fn pair(method: Method, n: usize, params: &ModelParams) -> Result<PairSpectrum> {
    let omega_n = tunneling(method, n, params)?;
    Ok(PairSpectrum::from_tunneling(method, n, params, omega_n))
}

/// GRWA ladder: the isolated state `Ψ_{0,−}` plus, for `n = 0..n_max`, the
/// eigenvalues of the block coupling `Ψ_{n,+}` and `Ψ_{n+1,−}`. Sorted ascending.
pub fn grwa_spectrum(params: &ModelParams, n_max: usize, basis: GrwaBasis) -> Result<Vec<f64>> {
    if n_max < 1 {
        return Err(QrmError::InvalidArgument("GRWA needs n_max >= 1".into()));
    }
    params.validate()?;
    let method = match basis {
        GrwaBasis::Aa => Method::Aa,
        GrwaBasis::Gaa => Method::GaaK,
    };
    let p = params.dimensionless();
    let amplitude = |n: usize| -> f64 {
        match basis {
            GrwaBasis::Aa => p.g,
            GrwaBasis::Gaa => 0.5 * corrected_displacement_sq(n, params).sqrt(),
        }
    };

    let mut energies = Vec::with_capacity(2 * n_max + 1);
    let mut branches = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        branches.push(branch_energies(method, n, params)?);
    }
    energies.push(branches[0].1);
    for n in 0..n_max {
        let upper = branches[n].0;
        let lower = branches[n + 1].1;
        let alpha = 0.5 * (amplitude(n) + amplitude(n + 1));
        let coupling = 0.5 * params.delta * coherent_overlap(n, n + 1, alpha);
        let mean = 0.5 * (upper + lower);
        let half_split = (0.25 * (upper - lower).powi(2) + coupling * coupling).sqrt();
        energies.push(mean - half_split);
        energies.push(mean + half_split);
    }
    energies.sort_by(f64::total_cmp);
    Ok(energies)
}
