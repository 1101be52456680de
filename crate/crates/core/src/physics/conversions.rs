//! The dictionary between mass, de Broglie wavelength and Compton frequency.
//! Every function here is a unit conversion; none introduces a new observable.

use std::f64::consts::TAU;

use super::{AtomSpecies, PhysicalConstants};
use crate::error::{ensure_positive, Result};

/// omega_c = m_i c^2 / hbar (rad/s).
pub fn compton_angular_frequency(species: &AtomSpecies, constants: &PhysicalConstants) -> f64 {
    species.m_inertial() * constants.c_squared() / constants.hbar()
}

/// lambda_dB = 2 pi hbar / (m_i v).
pub fn de_broglie_wavelength(species: &AtomSpecies, v: f64, constants: &PhysicalConstants) -> Result<f64> {
    ensure_positive("v", v)?;
    Ok(TAU * constants.hbar() / (species.m_inertial() * v))
}

/// The same wavelength written through the Compton frequency,
/// `c^2 T / (omega_c l)`. Numerically identical to
/// [`de_broglie_wavelength`] at `v = l / T`.
pub fn compton_form_of_debroglie(
    species: &AtomSpecies,
    l: f64,
    t: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    ensure_positive("l", l)?;
    ensure_positive("T", t)?;
    // c^2 T / (omega_c l) with omega_c = m c^2 / hbar; the 2 pi restores h.
    let omega_c = compton_angular_frequency(species, constants);
    Ok(TAU * constants.c_squared() * t / (omega_c * l))
}

/// `c T / l`: light-travel distance over arm separation, the factor by which
/// the de Broglie wavelength exceeds the Compton wavelength.
pub fn compton_wavelength_factor(l: f64, t: f64, constants: &PhysicalConstants) -> Result<f64> {
    ensure_positive("l", l)?;
    ensure_positive("T", t)?;
    Ok(constants.c() * t / l)
}

/// m_i c^2 / (h nu): rest energy over photon energy.
pub fn mass_to_photon_sensitivity_ratio(
    species: &AtomSpecies,
    photon_nu: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    ensure_positive("photon_nu", photon_nu)?;
    Ok(species.m_inertial() * constants.c_squared() / (constants.h() * photon_nu))
}
