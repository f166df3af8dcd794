use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Thresholds for equation residuals and strict-inequation margins.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// An equation counts as satisfied when its residual is below this.
    pub eq_tol: f64,
    /// An inequation `f != 0` counts as satisfied when `|f|` exceeds this.
    pub margin_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eq_tol: 1e-9,
            margin_tol: 1e-6,
        }
    }
}

impl Tolerance {
    pub fn new(eq_tol: f64, margin_tol: f64) -> Result<Self> {
        if !(eq_tol > 0.0 && eq_tol.is_finite()) {
            return Err(Error::InvalidTolerance(format!(
                "eq_tol must be positive, got {eq_tol}"
            )));
        }
        if !(margin_tol > 0.0 && margin_tol.is_finite()) {
            return Err(Error::InvalidTolerance(format!(
                "margin_tol must be positive, got {margin_tol}"
            )));
        }
        if eq_tol >= margin_tol {
            return Err(Error::InvalidTolerance(format!(
                "eq_tol ({eq_tol}) must be smaller than margin_tol ({margin_tol})"
            )));
        }
        Ok(Self { eq_tol, margin_tol })
    }
}
