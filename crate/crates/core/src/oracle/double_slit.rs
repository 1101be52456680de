use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::propagator::{check_boundary, Hamiltonian1D, Propagator};
use super::{Grid1D, Wavefunction1D, BOUNDARY_SIGMAS};
use crate::error::{ensure_positive, Error, Result};

/// Points per expected fringe below which the grid cannot resolve the pattern.
const MIN_POINTS_PER_FRINGE: f64 = 8.0;
/// Auto-sizing target, comfortably above the minimum.
const TARGET_POINTS_PER_FRINGE: f64 = 32.0;
/// Auto-sizing resolution across one slit width.
const POINTS_PER_SLIT_WIDTH: f64 = 8.0;
const MAX_AUTO_GRID: usize = 1 << 22;
/// Far field when `L >= FAR_FIELD_FACTOR * d^2 / lambda`.
const FAR_FIELD_FACTOR: f64 = 10.0;

/// Transverse double-slit problem in scaled units (hbar = 1). The atoms move
/// forward at `v` for `propagation_time`, covering `L = v t`; only the
/// transverse coordinate is evolved.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DoubleSlitSetup {
    pub slit_separation: f64,
    pub slit_width: f64,
    pub mass: f64,
    pub v: f64,
    pub propagation_time: f64,
}

impl Default for DoubleSlitSetup {
    fn default() -> Self {
        Self { slit_separation: 1.0, slit_width: 0.02, mass: 1.0, v: 1.0, propagation_time: 2.0 }
    }
}

impl DoubleSlitSetup {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("slit_width", self.slit_width)?;
        ensure_positive("slit_separation", self.slit_separation)?;
        if self.slit_separation <= self.slit_width {
            return Err(Error::domain("slit_separation must exceed slit_width"));
        }
        ensure_positive("mass", self.mass)?;
        ensure_positive("v", self.v)?;
        ensure_positive("propagation_time", self.propagation_time)?;
        Ok(())
    }

    /// `2 pi / (m v)`.
    pub fn de_broglie_wavelength(&self) -> f64 {
        TAU / (self.mass * self.v)
    }

    pub fn propagation_distance(&self) -> f64 {
        self.v * self.propagation_time
    }

    /// Fraunhofer spacing `lambda_dB L / d`.
    pub fn expected_spacing(&self) -> f64 {
        self.de_broglie_wavelength() * self.propagation_distance() / self.slit_separation
    }

    /// `L / (d^2 / lambda)`.
    pub fn far_field_ratio(&self) -> f64 {
        self.propagation_distance() * self.de_broglie_wavelength() / (self.slit_separation * self.slit_separation)
    }

    /// Width of one slit's diffracted packet at the screen.
    fn screen_sigma(&self) -> f64 {
        let w = self.slit_width;
        let spread = self.propagation_time / (2.0 * self.mass * w);
        (w * w + spread * spread).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SlitMask {
    #[default]
    Both,
    /// Only the slit at +d/2 transmits.
    UpperOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DoubleSlitOptions {
    /// Grid size; chosen automatically when absent.
    pub n_grid: Option<usize>,
    /// Half-width of the transverse domain; chosen automatically when absent.
    pub half_width: Option<f64>,
    pub mask: SlitMask,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DoubleSlitProfile {
    pub grid: Grid1D,
    pub intensity: Vec<f64>,
    pub expected_spacing: f64,
    pub far_field_ratio: f64,
    pub warnings: Vec<String>,
}

/// Two Gaussian-windowed slits with a common phase, evolved freely to the screen.
pub fn double_slit_propagate(setup: &DoubleSlitSetup, options: &DoubleSlitOptions) -> Result<DoubleSlitProfile> {
    setup.validate()?;
    let d = setup.slit_separation;
    let w = setup.slit_width;
    let spacing = setup.expected_spacing();

    let half_width = match options.half_width {
        Some(h) => ensure_positive("half_width", h)?,
        None => d / 2.0 + 2.0 * BOUNDARY_SIGMAS * setup.screen_sigma(),
    };
    let n = match options.n_grid {
        Some(n) => n,
        None => {
            let dx = (w / POINTS_PER_SLIT_WIDTH).min(spacing / TARGET_POINTS_PER_FRINGE);
            let n = ((2.0 * half_width / dx).ceil() as usize).next_power_of_two();
            if n > MAX_AUTO_GRID {
                return Err(Error::Config(format!("double slit needs {n} grid points, above the {MAX_AUTO_GRID} limit")));
            }
            n
        }
    };
    let grid = Grid1D::new(n, -half_width, half_width)?;
    let per_fringe = spacing / grid.dx();
    if per_fringe < MIN_POINTS_PER_FRINGE {
        return Err(Error::Config(format!(
            "grid spacing {:.3e} gives {per_fringe:.2} points per expected fringe of {spacing:.3e}; need {MIN_POINTS_PER_FRINGE}",
            grid.dx()
        )));
    }

    let slit = |x: f64, centre: f64| (-(x - centre).powi(2) / (4.0 * w * w)).exp();
    let amplitudes = grid
        .positions()
        .into_iter()
        .map(|x| {
            let upper = slit(x, d / 2.0);
            let lower = match options.mask {
                SlitMask::Both => slit(x, -d / 2.0),
                SlitMask::UpperOnly => 0.0,
            };
            Complex64::new(upper + lower, 0.0)
        })
        .collect();
    let mut psi = Wavefunction1D { grid, amplitudes, branch_label: Some("slits".into()) };
    psi.normalize();

    // Free evolution: the kinetic propagator is exact, so a single step suffices.
    let mut prop = Propagator::new(grid, Hamiltonian1D::free(setup.mass), setup.propagation_time)?;
    check_boundary(&psi, 0)?;
    prop.step(&mut psi.amplitudes);
    check_boundary(&psi, 1)?;

    let mut warnings = Vec::new();
    let far_field_ratio = setup.far_field_ratio();
    if far_field_ratio < FAR_FIELD_FACTOR {
        warnings.push(format!(
            "not in the far field: L = {:.3e} is only {far_field_ratio:.2} d^2/lambda_dB",
            setup.propagation_distance()
        ));
    }
    Ok(DoubleSlitProfile { grid, intensity: psi.density(), expected_spacing: spacing, far_field_ratio, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{extract_fringe_spacing, fringe_visibility};

    #[test]
    fn default_spacing_matches_fraunhofer() {
        let setup = DoubleSlitSetup::default();
        let profile = double_slit_propagate(&setup, &DoubleSlitOptions::default()).unwrap();
        assert!(profile.warnings.is_empty(), "{:?}", profile.warnings);
        let s = extract_fringe_spacing(&profile.intensity, &profile.grid).unwrap();
        let rel = (s - profile.expected_spacing) / profile.expected_spacing;
        assert!(rel.abs() < 0.01, "spacing {s} vs {}", profile.expected_spacing);
    }

    #[test]
    fn wider_separation_halves_spacing() {
        let base = DoubleSlitSetup::default();
        let wide = DoubleSlitSetup { slit_separation: 2.0 * base.slit_separation, ..base };
        let o = DoubleSlitOptions::default();
        let p1 = double_slit_propagate(&base, &o).unwrap();
        let p2 = double_slit_propagate(&wide, &o).unwrap();
        let s1 = extract_fringe_spacing(&p1.intensity, &p1.grid).unwrap();
        let s2 = extract_fringe_spacing(&p2.intensity, &p2.grid).unwrap();
        assert!((s2 / s1 - 0.5).abs() < 0.02 * 0.5, "{s1} {s2}");
    }

    #[test]
    fn single_slit_has_no_fringes() {
        let setup = DoubleSlitSetup::default();
        let both = double_slit_propagate(&setup, &DoubleSlitOptions::default()).unwrap();
        let one = double_slit_propagate(&setup, &DoubleSlitOptions { mask: SlitMask::UpperOnly, ..Default::default() })
            .unwrap();
        let v2 = fringe_visibility(&both.intensity);
        let v1 = fringe_visibility(&one.intensity);
        assert!(v2 > 0.9, "{v2}");
        assert!(v1 < 0.05 * v2, "{v1} vs {v2}");
    }

    #[test]
    fn under_resolved_grid_is_config_error() {
        let setup = DoubleSlitSetup::default();
        let o = DoubleSlitOptions { n_grid: Some(128), ..Default::default() };
        assert!(matches!(double_slit_propagate(&setup, &o), Err(Error::Config(_))));
    }

    #[test]
    fn near_field_warns() {
        let setup = DoubleSlitSetup { propagation_time: 0.5, ..DoubleSlitSetup::default() };
        let p = double_slit_propagate(&setup, &DoubleSlitOptions::default()).unwrap();
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn invalid_geometry_rejected() {
        let s = DoubleSlitSetup { slit_width: 2.0, ..DoubleSlitSetup::default() };
        assert!(double_slit_propagate(&s, &DoubleSlitOptions::default()).is_err());
    }
}
