use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::Wavefunction1D;
use crate::error::{Error, Result};
use crate::interferometer::PulseArea;

/// The two internal states tracked as branches: `unkicked` carries |g1>,
/// `kicked` carries |g2> with its extra hbar kappa.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchPair {
    pub unkicked: Wavefunction1D,
    pub kicked: Wavefunction1D,
}

impl BranchPair {
    /// All population in the unkicked state.
    pub fn ground(psi: Wavefunction1D) -> Self {
        let kicked = Wavefunction1D::zeros(psi.grid).labelled("kicked");
        Self { unkicked: psi.labelled("unkicked"), kicked }
    }

    pub fn total_norm(&self) -> f64 {
        self.unkicked.norm() + self.kicked.norm()
    }
}

impl PulseArea {
    /// Accepts pi/2 and pi (to 1e-12 rad).
    pub fn from_radians(area: f64) -> Result<Self> {
        let tol = 1e-12;
        if (area - std::f64::consts::FRAC_PI_2).abs() < tol {
            Ok(PulseArea::HalfPi)
        } else if (area - std::f64::consts::PI).abs() < tol {
            Ok(PulseArea::Pi)
        } else {
            Err(Error::Usage(format!("unsupported pulse area {area} rad (expected pi/2 or pi)")))
        }
    }
}

/// Instantaneous Raman pulse with position-dependent laser phase `exp(i kappa x)`.
///
/// pi/2: `(a, b) -> ((a - e^{-i kappa x} b) / sqrt2, (e^{i kappa x} a + b) / sqrt2)`.
/// pi:   `(a, b) -> (e^{-i kappa x} b, e^{i kappa x} a)`.
pub fn apply_beamsplitter(pair: &BranchPair, kappa: f64, area: PulseArea) -> Result<BranchPair> {
    let a = &pair.unkicked;
    let b = &pair.kicked;
    if a.grid != b.grid {
        return Err(Error::Config("branches live on different grids".into()));
    }
    let grid = a.grid;
    let n = grid.n();
    let mut new_a = Vec::with_capacity(n);
    let mut new_b = Vec::with_capacity(n);
    for i in 0..n {
        let up = Complex64::from_polar(1.0, kappa * grid.x(i));
        let down = up.conj();
        let (ai, bi) = (a.amplitudes[i], b.amplitudes[i]);
        match area {
            PulseArea::HalfPi => {
                new_a.push((ai - down * bi) * FRAC_1_SQRT_2);
                new_b.push((up * ai + bi) * FRAC_1_SQRT_2);
            }
            PulseArea::Pi => {
                new_a.push(down * bi);
                new_b.push(up * ai);
            }
        }
    }
    Ok(BranchPair {
        unkicked: Wavefunction1D { grid, amplitudes: new_a, branch_label: a.branch_label.clone() },
        kicked: Wavefunction1D { grid, amplitudes: new_b, branch_label: b.branch_label.clone() },
    })
}
