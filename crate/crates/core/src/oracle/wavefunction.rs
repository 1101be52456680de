use num_complex::Complex64;
use rustfft::FftPlanner;

use super::Grid1D;

#[derive(Debug, Clone, PartialEq)]
pub struct Wavefunction1D {
    pub grid: Grid1D,
    pub amplitudes: Vec<Complex64>,
    pub branch_label: Option<String>,
}

impl Wavefunction1D {
    pub fn zeros(grid: Grid1D) -> Self {
        Self { grid, amplitudes: vec![Complex64::new(0.0, 0.0); grid.n()], branch_label: None }
    }

    /// Normalized Gaussian with `|psi|^2` of standard deviation `sigma`,
    /// centred at `x0`, carrying mean wavenumber `k0`.
    pub fn gaussian(grid: Grid1D, x0: f64, sigma: f64, k0: f64) -> Self {
        let amplitudes = grid
            .positions()
            .into_iter()
            .map(|x| {
                let u = x - x0;
                Complex64::from_polar((-(u * u) / (4.0 * sigma * sigma)).exp(), k0 * x)
            })
            .collect();
        let mut psi = Self { grid, amplitudes, branch_label: None };
        psi.normalize();
        psi
    }

    pub fn labelled(mut self, label: impl Into<String>) -> Self {
        self.branch_label = Some(label.into());
        self
    }

    /// `sum |psi|^2 dx`.
    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.grid.dx()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            let s = 1.0 / n.sqrt();
            self.amplitudes.iter_mut().for_each(|a| *a *= s);
        }
    }

    pub fn density(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Mean and standard deviation of position under `|psi|^2`.
    pub fn position_moments(&self) -> (f64, f64) {
        let (mut w, mut m1, mut m2) = (0.0, 0.0, 0.0);
        for (i, a) in self.amplitudes.iter().enumerate() {
            let p = a.norm_sqr();
            let x = self.grid.x(i);
            w += p;
            m1 += p * x;
            m2 += p * x * x;
        }
        if w == 0.0 {
            return (0.0, 0.0);
        }
        let mean = m1 / w;
        let var = (m2 / w - mean * mean).max(0.0);
        (mean, var.sqrt())
    }

    /// Mean wavenumber from the spectral density.
    pub fn momentum_mean(&self) -> f64 {
        let mut buf = self.amplitudes.clone();
        FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
        let ks = self.grid.wavenumbers();
        let (mut w, mut m1) = (0.0, 0.0);
        for (a, k) in buf.iter().zip(ks) {
            let p = a.norm_sqr();
            w += p;
            m1 += p * k;
        }
        m1 / w
    }

    /// `sum conj(self) other dx`.
    pub fn inner(&self, other: &Wavefunction1D) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            * self.grid.dx()
    }

    /// Multiply by `exp(i k x)`.
    pub fn imprint(&self, k: f64) -> Wavefunction1D {
        let amplitudes = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| a * Complex64::from_polar(1.0, k * self.grid.x(i)))
            .collect();
        Wavefunction1D { grid: self.grid, amplitudes, branch_label: self.branch_label.clone() }
    }

    pub fn scaled(&self, s: f64) -> Wavefunction1D {
        Wavefunction1D {
            grid: self.grid,
            amplitudes: self.amplitudes.iter().map(|a| a * s).collect(),
            branch_label: self.branch_label.clone(),
        }
    }
}
