use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::{Grid1D, OracleParams, Wavefunction1D, BOUNDARY_SIGMAS};
use crate::error::{ensure_finite, ensure_positive, Error, Result};

/// `H = p^2 / 2 m_i + m_g g x` with hbar = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hamiltonian1D {
    pub m_i: f64,
    pub m_g: f64,
    pub g: f64,
}

impl Hamiltonian1D {
    pub fn free(m: f64) -> Self {
        Self { m_i: m, m_g: m, g: 0.0 }
    }

    fn validate(&self) -> Result<()> {
        ensure_positive("m_i", self.m_i)?;
        ensure_finite("m_g", self.m_g)?;
        ensure_finite("g", self.g)?;
        Ok(())
    }
}

/// Symmetric split-step propagator for a fixed grid and time step:
/// half potential, full kinetic in the spectral basis, half potential.
pub struct Propagator {
    grid: Grid1D,
    dt: f64,
    half_potential: Vec<Complex64>,
    /// Kinetic phase with the 1/n inverse-transform normalization folded in.
    kinetic: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    scratch: Vec<Complex64>,
}

impl Propagator {
    pub fn new(grid: Grid1D, hamiltonian: Hamiltonian1D, dt: f64) -> Result<Self> {
        hamiltonian.validate()?;
        ensure_positive("dt", dt)?;
        let n = grid.n();
        let force = hamiltonian.m_g * hamiltonian.g;
        let half_potential = grid
            .positions()
            .into_iter()
            .map(|x| Complex64::from_polar(1.0, -force * x * dt / 2.0))
            .collect();
        let inv_n = 1.0 / n as f64;
        let kinetic = grid
            .wavenumbers()
            .into_iter()
            .map(|k| Complex64::from_polar(inv_n, -k * k * dt / (2.0 * hamiltonian.m_i)))
            .collect();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let scratch_len = forward.get_inplace_scratch_len().max(inverse.get_inplace_scratch_len());
        Ok(Self {
            grid,
            dt,
            half_potential,
            kinetic,
            forward,
            inverse,
            scratch: vec![Complex64::new(0.0, 0.0); scratch_len],
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    /// One time step in place.
    pub fn step(&mut self, amplitudes: &mut [Complex64]) {
        for (a, v) in amplitudes.iter_mut().zip(&self.half_potential) {
            *a *= v;
        }
        self.forward.process_with_scratch(amplitudes, &mut self.scratch);
        for (a, t) in amplitudes.iter_mut().zip(&self.kinetic) {
            *a *= t;
        }
        self.inverse.process_with_scratch(amplitudes, &mut self.scratch);
        for (a, v) in amplitudes.iter_mut().zip(&self.half_potential) {
            *a *= v;
        }
    }

    /// `n_steps` steps, checking the boundary margin after each.
    /// `first_step` only offsets the step index reported on boundary contact.
    pub fn evolve(&mut self, psi: &mut Wavefunction1D, n_steps: usize, first_step: usize) -> Result<()> {
        if psi.grid != self.grid {
            return Err(Error::Config("wavefunction grid does not match propagator grid".into()));
        }
        check_boundary(psi, first_step)?;
        for s in 0..n_steps {
            self.step(&mut psi.amplitudes);
            check_boundary(psi, first_step + s + 1)?;
        }
        Ok(())
    }

    /// Number of whole steps in `duration`; errors if it is not a multiple of dt.
    pub fn steps_for(&self, duration: f64) -> Result<usize> {
        steps_for(duration, self.dt)
    }
}

pub(crate) fn steps_for(duration: f64, dt: f64) -> Result<usize> {
    if !(duration.is_finite() && duration >= 0.0) {
        return Err(Error::domain(format!("duration must be finite and non-negative, got {duration}")));
    }
    let n = (duration / dt).round();
    if (n * dt - duration).abs() > 1e-9 * duration.max(dt) {
        return Err(Error::domain(format!("duration {duration} is not an integral number of steps dt = {dt}")));
    }
    Ok(n as usize)
}

/// The packet's mean +- 5 sigma must lie inside the grid.
pub(crate) fn check_boundary(psi: &Wavefunction1D, step: usize) -> Result<()> {
    let (mean, sigma) = psi.position_moments();
    let lo = mean - BOUNDARY_SIGMAS * sigma;
    let hi = mean + BOUNDARY_SIGMAS * sigma;
    let grid = psi.grid;
    if lo < grid.x_min() || hi > grid.x_max() - grid.dx() || !mean.is_finite() {
        let label = psi.branch_label.as_deref().unwrap_or("packet");
        return Err(Error::Boundary {
            step,
            detail: format!(
                "{label} support [{lo:.4}, {hi:.4}] leaves grid [{:.4}, {:.4}]",
                grid.x_min(),
                grid.x_max()
            ),
        });
    }
    Ok(())
}

/// Evolve a copy of `psi` for `duration` under the oracle Hamiltonian with
/// time step `params.dt`.
pub fn split_step_evolve(psi: &Wavefunction1D, params: &OracleParams, duration: f64) -> Result<Wavefunction1D> {
    let mut out = psi.clone();
    let n_steps = steps_for(duration, params.dt)?;
    if n_steps == 0 {
        return Ok(out);
    }
    let mut prop = Propagator::new(psi.grid, params.hamiltonian(), params.dt)?;
    prop.evolve(&mut out, n_steps, 0)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(g: f64) -> OracleParams {
        OracleParams { g, dt: 0.001, ..OracleParams::standard() }
    }

    #[test]
    fn zero_duration_is_identity() {
        let grid = Grid1D::new(512, -20.0, 20.0).unwrap();
        let psi = Wavefunction1D::gaussian(grid, 0.0, 1.0, 1.0);
        let out = split_step_evolve(&psi, &params(0.5), 0.0).unwrap();
        assert_eq!(out, psi);
    }

    #[test]
    fn free_packet_translates_and_spreads() {
        let grid = Grid1D::new(2048, -30.0, 50.0).unwrap();
        let (x0, v0, s0, m) = (-2.0, 3.0, 1.0, 1.0);
        let psi = Wavefunction1D::gaussian(grid, x0, s0, m * v0);
        let t = 2.0;
        let out = split_step_evolve(&psi, &params(0.0), t).unwrap();
        let (mean, sigma) = out.position_moments();
        let expected_sigma = s0 * (1.0 + (t / (2.0 * m * s0 * s0)).powi(2)).sqrt();
        assert!(((mean - (x0 + v0 * t)) / (x0 + v0 * t)).abs() < 1e-6, "{mean}");
        assert!(((sigma - expected_sigma) / expected_sigma).abs() < 1e-6, "{sigma}");
        assert!((out.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn ehrenfest_free_fall() {
        let grid = Grid1D::new(2048, -40.0, 40.0).unwrap();
        for (m_g, x0) in [(1.0, 5.0), (0.5, 5.0)] {
            let p = OracleParams { m_g, g: 0.5, dt: 0.001, ..OracleParams::standard() };
            let psi = Wavefunction1D::gaussian(grid, x0, 1.0, p.m_i * 1.0);
            let t = 2.0;
            let out = split_step_evolve(&psi, &p, t).unwrap();
            let (mean, _) = out.position_moments();
            let expected = x0 + 1.0 * t - 0.5 * (m_g / p.m_i) * 0.5 * t * t;
            assert!(((mean - expected) / expected).abs() < 1e-6, "m_g={m_g}: {mean} vs {expected}");
            assert!((out.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn boundary_contact_is_reported_with_step() {
        let grid = Grid1D::new(256, -10.0, 10.0).unwrap();
        let psi = Wavefunction1D::gaussian(grid, 0.0, 0.5, 8.0);
        let err = split_step_evolve(&psi, &params(0.0), 2.0).unwrap_err();
        match err {
            Error::Boundary { step, .. } => assert!(step > 0 && step < 2000),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn non_integral_duration_rejected() {
        let grid = Grid1D::new(256, -10.0, 10.0).unwrap();
        let psi = Wavefunction1D::gaussian(grid, 0.0, 0.5, 0.0);
        assert!(split_step_evolve(&psi, &params(0.0), 0.0015).is_err());
    }
}
