//! Stationary oscillator clocks in a uniform field.
//!
//! A clock of frequency nu couples to gravity through its energy `h nu`,
//! `E_g = -h nu phi / c^2`, so it accumulates the phase
//! `Delta_g = -(h nu / hbar) phi T / c^2`. The dilation is reported as the
//! accumulated rate gain `-Delta_g / (2 pi nu) = phi T / c^2`: positive for
//! the upper clock, and independent of nu.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::physics::{compton_angular_frequency, AtomSpecies, PhysicalConstants, UniformGravityField};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscillatorClock {
    /// Oscillator frequency (Hz).
    pub nu: f64,
    /// Fixed height (m).
    pub x: f64,
    pub species: AtomSpecies,
}

impl OscillatorClock {
    pub fn new(nu: f64, x: f64, species: AtomSpecies) -> Result<Self> {
        ensure_positive("nu", nu)?;
        ensure_finite("x", x)?;
        Ok(Self { nu, x, species })
    }

    /// Clock running on the species' own transition frequency.
    pub fn on_transition(species: AtomSpecies, x: f64) -> Result<Self> {
        Self::new(species.nu0(), x, species)
    }

    fn validate(&self) -> Result<()> {
        ensure_positive("nu", self.nu)?;
        ensure_finite("x", self.x)?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClockComparison {
    pub clock_a: OscillatorClock,
    pub clock_b: OscillatorClock,
    /// Comparison time T (s).
    pub duration: f64,
}

impl ClockComparison {
    pub fn new(clock_a: OscillatorClock, clock_b: OscillatorClock, duration: f64) -> Result<Self> {
        let cmp = Self { clock_a, clock_b, duration };
        cmp.validate()?;
        Ok(cmp)
    }

    pub fn validate(&self) -> Result<()> {
        self.clock_a.validate()?;
        self.clock_b.validate()?;
        ensure_positive("duration", self.duration)?;
        Ok(())
    }

    /// The two clocks exchanged.
    pub fn swapped(&self) -> Self {
        Self { clock_a: self.clock_b.clone(), clock_b: self.clock_a.clone(), duration: self.duration }
    }
}

/// Gravitational phase of a clock held at its height for `t`.
pub fn clock_phase(
    clock: &OscillatorClock,
    field: &UniformGravityField,
    t: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    ensure_positive("T", t)?;
    let energy = constants.h() * clock.nu;
    let phi = field.potential_at(clock.x)?;
    Ok(-(energy / constants.hbar()) * phi * t / constants.c_squared())
}

/// Accumulated dilation of one clock, `-Delta_g / (2 pi nu)` (s).
pub fn accumulated_dilation(
    clock: &OscillatorClock,
    field: &UniformGravityField,
    t: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let phase = clock_phase(clock, field, t, constants)?;
    Ok(-phase / (TAU * clock.nu))
}

/// `T [phi(x_a) - phi(x_b)] / c^2 = T g l / c^2`.
pub fn relative_dilation(
    cmp: &ClockComparison,
    field: &UniformGravityField,
    constants: &PhysicalConstants,
) -> Result<f64> {
    cmp.validate()?;
    field.validate()?;
    let dphi = field.potential_difference(cmp.clock_a.x, cmp.clock_b.x);
    Ok(cmp.duration * dphi / constants.c_squared())
}

/// Relative dilation without assuming m_g = m_i: `(m_g/m_i) T g l / c^2`.
/// Both clocks must carry the same eta.
pub fn relative_dilation_ep(
    cmp: &ClockComparison,
    field: &UniformGravityField,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let eta_a = cmp.clock_a.species.ep_ratio();
    let eta_b = cmp.clock_b.species.ep_ratio();
    if eta_a != eta_b {
        return Err(Error::domain(format!(
            "clocks carry different m_g/m_i ({eta_a} vs {eta_b}); comparison is ill-posed"
        )));
    }
    let base = relative_dilation(cmp, field, constants)?;
    if eta_a == 1.0 {
        return Ok(base);
    }
    Ok(eta_a * base)
}

/// Smallest dilation resolvable with phase readout `phase_resolution`:
/// `delta_phi / (2 pi nu)`.
pub fn resolvable_dilation(nu: f64, phase_resolution: f64) -> Result<f64> {
    ensure_positive("nu", nu)?;
    ensure_positive("phase_resolution", phase_resolution)?;
    Ok(phase_resolution / (TAU * nu))
}

/// How a time value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TimeInterpretation {
    /// Read from an accessible oscillator compared against a reference.
    ClockObservable,
    /// Obtained by dividing a phase by `m c^2 / hbar`; a change of the unit
    /// of mass, not the reading of an independent physical clock.
    UnitConversion,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComptonTimeResolution {
    pub seconds: f64,
    pub interpretation: TimeInterpretation,
}

/// `phase / omega_c`: the "Compton clock" reading of a phase.
pub fn compton_time_resolution(
    species: &AtomSpecies,
    phase: f64,
    constants: &PhysicalConstants,
) -> ComptonTimeResolution {
    ComptonTimeResolution {
        seconds: phase / compton_angular_frequency(species, constants),
        interpretation: TimeInterpretation::UnitConversion,
    }
}
