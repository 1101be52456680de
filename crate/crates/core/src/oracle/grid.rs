use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// Uniform periodic grid of `n` points on `[x_min, x_max)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    n: usize,
    x_min: f64,
    x_max: f64,
}

impl Grid1D {
    pub fn new(n: usize, x_min: f64, x_max: f64) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::Config(format!("grid size must be a power of two >= 2, got {n}")));
        }
        ensure_finite("x_min", x_min)?;
        ensure_finite("x_max", x_max)?;
        if x_max <= x_min {
            return Err(Error::Config(format!("empty grid domain [{x_min}, {x_max}]")));
        }
        Ok(Self { n, x_min, x_max })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n as f64
    }

    pub fn dk(&self) -> f64 {
        TAU / (self.n as f64 * self.dx())
    }

    /// Largest representable |k|.
    pub fn k_nyquist(&self) -> f64 {
        std::f64::consts::PI / self.dx()
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx()
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.x(i)).collect()
    }

    /// Wavenumbers in FFT order: 0, dk, ..., -dk.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let dk = self.dk();
        let n = self.n as isize;
        (0..n).map(|i| if i < n / 2 { i as f64 * dk } else { (i - n) as f64 * dk }).collect()
    }
}
