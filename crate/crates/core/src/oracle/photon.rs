use crate::error::{ensure_finite, ensure_positive, Result};
use crate::physics::{PhysicalConstants, UniformGravityField};

/// Gravitational phase difference for a photon of frequency `nu` whose two
/// paths differ in height by `l` over traversal time `t`:
/// `-(1/hbar)(h nu / c^2) g l t = -(2 pi nu / c^2) g l t`.
/// Of order 1e-8 rad for laboratory optics.
pub fn photon_double_slit_phase(
    nu: f64,
    l: f64,
    t: f64,
    field: &UniformGravityField,
    constants: &PhysicalConstants,
) -> Result<f64> {
    ensure_positive("nu", nu)?;
    ensure_positive("t", t)?;
    ensure_finite("l", l)?;
    let energy = constants.h() * nu;
    let mass_equivalent = energy / constants.c_squared();
    let dphi = field.potential_difference(l, 0.0);
    Ok(-mass_equivalent * dphi * t / constants.hbar())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physics::{mass_to_photon_sensitivity_ratio, AtomSpecies};
    use crate::phase::{differential_phase, Path};

    #[test]
    fn laboratory_photon_phase_is_tiny() {
        let k = PhysicalConstants::codata2018();
        let f = UniformGravityField::new(9.8);
        let t = 10.0 / k.c();
        let p = photon_double_slit_phase(5e14, 1.0, t, &f, &k).unwrap();
        // 2 pi 5e14 / c^2 * 9.8 * 1 * 3.3356e-8
        assert!((p.abs() - 1.1427e-8).abs() < 1e-10, "{p:e}");
        assert!(p < 0.0);
        assert_eq!(photon_double_slit_phase(5e14, 0.0, t, &f, &k).unwrap(), 0.0);
        assert!(photon_double_slit_phase(0.0, 1.0, t, &f, &k).is_err());
    }

    #[test]
    fn atom_to_photon_ratio_is_rest_over_photon_energy() {
        let k = PhysicalConstants::codata2018();
        let f = UniformGravityField::new(9.8);
        let cs = AtomSpecies::preset("Cs-133").unwrap();
        let (l, t) = (1.0, 0.01);
        let atom = differential_phase(&Path::stationary(l, t).unwrap(), &Path::stationary(0.0, t).unwrap(), &cs, &f, &k)
            .unwrap();
        let photon = photon_double_slit_phase(5e14, l, t, &f, &k).unwrap();
        let expected = mass_to_photon_sensitivity_ratio(&cs, 5e14, &k).unwrap();
        assert!((atom / photon / expected - 1.0).abs() < 1e-12);
    }
}
