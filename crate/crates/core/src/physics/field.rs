use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Result};

/// Uniform weak field. Heights `x` are measured positive up, so the
/// potential is `phi(x) = origin_potential + g x` and
/// `phi(x1) - phi(x2) = g (x1 - x2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformGravityField {
    /// Field strength (m/s^2), positive for a downward pull.
    pub g: f64,
    /// Potential at x = 0 (m^2/s^2). Only differences are observable.
    #[serde(default)]
    pub origin_potential: f64,
}

impl UniformGravityField {
    pub fn new(g: f64) -> Self {
        Self { g, origin_potential: 0.0 }
    }

    pub fn with_origin_potential(self, origin_potential: f64) -> Self {
        Self { origin_potential, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite("g", self.g)?;
        ensure_finite("origin_potential", self.origin_potential)?;
        Ok(())
    }

    pub fn potential_at(&self, x: f64) -> Result<f64> {
        ensure_finite("x", x)?;
        Ok(self.origin_potential + self.g * x)
    }

    /// `phi(x1) - phi(x2)`, formed without the gauge constant.
    pub fn potential_difference(&self, x1: f64, x2: f64) -> f64 {
        self.g * (x1 - x2)
    }
}
