use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Result};

/// CODATA 2018 speed of light, exact (m/s).
const C_CODATA2018: f64 = 299_792_458.0;
/// CODATA 2018 Planck constant, exact (J s).
const H_CODATA2018: f64 = 6.626_070_15e-34;
/// CODATA 2018 atomic mass constant (kg), relative uncertainty 3.0e-10.
pub const ATOMIC_MASS_UNIT_KG: f64 = 1.660_539_066_60e-27;

/// The three constants the formulas need. `hbar` is always derived from `h`
/// so that `h == 2 pi hbar` holds to rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    c: f64,
    hbar: f64,
    h: f64,
}

impl PhysicalConstants {
    /// SI values: c = 299792458 m/s, h = 6.62607015e-34 J s,
    /// hbar = h / 2 pi = 1.054571817...e-34 J s.
    pub fn codata2018() -> Self {
        Self { c: C_CODATA2018, h: H_CODATA2018, hbar: H_CODATA2018 / TAU }
    }

    /// Arbitrary unit system, e.g. `new(1.0, TAU)` for hbar = 1.
    pub fn new(c: f64, h: f64) -> Result<Self> {
        ensure_positive("c", c)?;
        ensure_positive("h", h)?;
        Ok(Self { c, h, hbar: h / TAU })
    }

    /// Units with hbar = 1 and c = 1.
    pub fn natural() -> Self {
        Self { c: 1.0, h: TAU, hbar: 1.0 }
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn c_squared(&self) -> f64 {
        self.c * self.c
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata2018()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planck_pair_is_consistent() {
        let k = PhysicalConstants::codata2018();
        assert!((k.h() - TAU * k.hbar()).abs() <= 1e-15 * k.h());
        assert!(k.c() > 0.0 && k.hbar() > 0.0 && k.h() > 0.0);
        // documented digits
        assert!((k.hbar() - 1.054_571_817e-34).abs() < 1e-43);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(PhysicalConstants::new(0.0, 1.0).is_err());
        assert!(PhysicalConstants::new(1.0, -1.0).is_err());
        assert!(PhysicalConstants::new(f64::NAN, 1.0).is_err());
    }
}
