//! Constants, particle species, the uniform field model and the
//! mass/wavelength/frequency dictionary shared by every other module.

mod constants;
mod conversions;
mod field;
mod species;

pub use constants::{PhysicalConstants, ATOMIC_MASS_UNIT_KG};
pub use conversions::{
    compton_angular_frequency, compton_form_of_debroglie, compton_wavelength_factor,
    de_broglie_wavelength, mass_to_photon_sensitivity_ratio,
};
pub use field::UniformGravityField;
pub use species::{AtomSpecies, SpeciesRecord};
