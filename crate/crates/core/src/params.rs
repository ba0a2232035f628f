use serde::{Deserialize, Serialize};

use crate::error::{QrmError, Result};

/// Parameters of the Rabi Hamiltonian `Δ/2 σz + ω a†a + g σx (a + a†)` with ħ = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Qubit splitting Δ.
    pub delta: f64,
    /// Oscillator frequency ω.
    pub omega: f64,
    /// Coupling strength g.
    pub g: f64,
}

impl ModelParams {
    pub fn new(delta: f64, omega: f64, g: f64) -> Result<Self> {
        let params = Self { delta, omega, g };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(QrmError::InvalidParams(format!(
                "omega must be positive, got {}",
                self.omega
            )));
        }
        if !(self.delta.is_finite() && self.delta >= 0.0) {
            return Err(QrmError::InvalidParams(format!(
                "delta must be non-negative, got {}",
                self.delta
            )));
        }
        if !(self.g.is_finite() && self.g >= 0.0) {
            return Err(QrmError::InvalidParams(format!(
                "g must be non-negative, got {}",
                self.g
            )));
        }
        Ok(())
    }

    /// The same physics in units where ω = 1.
    pub fn dimensionless(&self) -> Self {
        Self {
            delta: self.delta / self.omega,
            omega: 1.0,
            g: self.g / self.omega,
        }
    }

    pub fn with_g(self, g: f64) -> Self {
        Self { g, ..self }
    }

    pub fn with_delta(self, delta: f64) -> Self {
        Self { delta, ..self }
    }

    /// Displaced-oscillator baseline `-g²/ω`.
    pub fn polaron_shift(&self) -> f64 {
        -self.g * self.g / self.omega
    }
}

/// Mixed absolute/relative comparison used wherever values may sit on a polynomial zero.
pub fn mixed_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_params() {
        assert!(ModelParams::new(1.0, 0.0, 0.1).is_err());
        assert!(ModelParams::new(-1.0, 1.0, 0.1).is_err());
        assert!(ModelParams::new(1.0, 1.0, -0.1).is_err());
        assert!(ModelParams::new(1.0, 1.0, f64::NAN).is_err());
        assert!(ModelParams::new(0.0, 2.0, 0.0).is_ok());
    }

    #[test]
    fn dimensionless_rescales() {
        let p = ModelParams::new(2.4, 2.0, 1.0).unwrap().dimensionless();
        assert_eq!(p, ModelParams { delta: 1.2, omega: 1.0, g: 0.5 });
    }
}
