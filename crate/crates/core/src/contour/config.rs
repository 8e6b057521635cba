use serde::{Deserialize, Serialize};

use crate::error::FsError;

/// Quadrature parameters for the contour evaluation of the fundamental solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FsConfig {
    /// Node spacing relative to the narrowest saddle width.
    pub h0: f64,
    /// Largest node spacing allowed on any interval.
    pub h_max: f64,
    /// Minimum number of nodes per interval.
    pub n_min: usize,
    /// Integrand magnitude below which the contour is truncated.
    pub eps: f64,
    /// Multiplicative jump factor used when growing truncation intervals.
    pub beta: f64,
    /// Whether source gradients are computed alongside the value.
    pub derivs: bool,
}

impl Default for FsConfig {
    fn default() -> Self {
        Self {
            h0: 0.35,
            h_max: 0.05,
            n_min: 43,
            eps: 1e-14,
            beta: 1.3,
            derivs: true,
        }
    }
}

impl FsConfig {
    /// The co-scaled family used for self-convergence studies:
    /// `h_max = 0.13 h0`, `n_min = 15 / h0`.
    pub fn refined(h0: f64) -> Self {
        Self {
            h0,
            h_max: 0.13 * h0,
            n_min: (15.0 / h0).round() as usize,
            ..Self::default()
        }
    }

    pub fn with_derivs(mut self, derivs: bool) -> Self {
        self.derivs = derivs;
        self
    }

    pub fn validate(&self) -> Result<(), FsError> {
        let bad = |what: &str| Err(FsError::InvalidConfig(what.to_string()));
        if !(self.h0 > 0.0 && self.h0.is_finite()) {
            return bad("h0 must be positive");
        }
        if !(self.h_max > 0.0 && self.h_max.is_finite()) {
            return bad("h_max must be positive");
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return bad("eps must be positive");
        }
        if !(self.beta > 1.0 && self.beta.is_finite()) {
            return bad("beta must exceed 1");
        }
        if self.n_min < 1 {
            return bad("n_min must be at least 1");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = FsConfig::default();
        assert!(cfg.validate().is_ok());
        assert_eq!(cfg.n_min, 43);
        assert_eq!(cfg.h_max, 0.05);
    }

    #[test]
    fn refined_family_matches_defaults_at_standard_h0() {
        let cfg = FsConfig::refined(0.35);
        assert!((cfg.h_max - 0.0455).abs() < 1e-12);
        assert_eq!(cfg.n_min, 43);
    }

    #[test]
    fn rejects_bad_values() {
        let cfg = FsConfig {
            beta: 1.0,
            ..FsConfig::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = FsConfig {
            eps: 0.0,
            ..FsConfig::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = FsConfig {
            n_min: 0,
            ..FsConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
