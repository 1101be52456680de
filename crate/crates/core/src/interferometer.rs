//! Mach-Zehnder light-pulse gravimeter: pi/2 - pi - pi/2 Raman sequence with
//! instantaneous pulses, the arm geometry it produces, and the gravimeter
//! phase in its equivalent closed forms.

use std::f64::consts::{PI, TAU};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::phase::{differential_phase, Path, PathSegment};
use crate::physics::{compton_angular_frequency, AtomSpecies, PhysicalConstants, UniformGravityField};

/// Default number of phase-engine segments per arm.
pub const DEFAULT_ARM_SEGMENTS: usize = 1000;

/// Relative tolerance on `nu_diff` vs the species transition before a
/// detuning warning is raised.
const RESONANCE_TOLERANCE: f64 = 1e-9;

/// Two-photon Raman beam pair. `kappa` is stored signed and is the only
/// quantity the phase depends on; `k1` and `k2` are metadata.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RamanPulsePair {
    pub k1: f64,
    pub k2: f64,
    /// Effective wavenumber (rad/m).
    pub kappa: f64,
    /// nu1 - nu2 (Hz).
    pub nu_diff: f64,
}

impl RamanPulsePair {
    /// Beams described only by their effective wavenumber, on resonance with `nu0`.
    pub fn from_kappa(kappa: f64, nu0: f64) -> Self {
        Self { k1: kappa / 2.0, k2: -kappa / 2.0, kappa, nu_diff: nu0 }
    }

    /// Counter-propagating beams: `|kappa| = k1 + k2`.
    pub fn counter_propagating(k1: f64, k2: f64, nu_diff: f64) -> Self {
        Self { k1, k2, kappa: k1 + k2, nu_diff }
    }

    fn validate(&self) -> Result<()> {
        ensure_finite("kappa", self.kappa)?;
        ensure_positive("nu_diff", self.nu_diff)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PulseArea {
    HalfPi,
    Pi,
}

impl PulseArea {
    pub fn radians(self) -> f64 {
        match self {
            PulseArea::HalfPi => PI / 2.0,
            PulseArea::Pi => PI,
        }
    }
}

/// Beamsplitter at 0, mirror at T, beamsplitter at 2T.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseSequence {
    t: f64,
}

impl PulseSequence {
    pub fn new(t: f64) -> Result<Self> {
        ensure_positive("T", t)?;
        Ok(Self { t })
    }

    pub fn interval(&self) -> f64 {
        self.t
    }

    pub fn pulse_times(&self) -> [f64; 3] {
        [0.0, self.t, 2.0 * self.t]
    }

    pub fn pulse_areas(&self) -> [PulseArea; 3] {
        [PulseArea::HalfPi, PulseArea::Pi, PulseArea::HalfPi]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GravimetrySetup {
    pub species: AtomSpecies,
    pub field: UniformGravityField,
    pub pulses: RamanPulsePair,
    pub sequence: PulseSequence,
    /// Launch velocity (m/s, positive up).
    pub initial_velocity: f64,
    /// Launch height (m).
    #[serde(default)]
    pub initial_height: f64,
}

impl GravimetrySetup {
    /// Resonant pulses with effective wavenumber `kappa`, launched from x = 0.
    pub fn new(species: AtomSpecies, g: f64, kappa: f64, t: f64, initial_velocity: f64) -> Result<Self> {
        let pulses = RamanPulsePair::from_kappa(kappa, species.nu0());
        let setup = Self {
            species,
            field: UniformGravityField::new(g),
            pulses,
            sequence: PulseSequence::new(t)?,
            initial_velocity,
            initial_height: 0.0,
        };
        setup.validate()?;
        Ok(setup)
    }

    pub fn validate(&self) -> Result<()> {
        self.field.validate()?;
        self.pulses.validate()?;
        ensure_positive("T", self.sequence.interval())?;
        ensure_finite("initial_velocity", self.initial_velocity)?;
        ensure_finite("initial_height", self.initial_height)?;
        Ok(())
    }

    pub fn eta(&self) -> f64 {
        self.species.ep_ratio()
    }

    pub fn t(&self) -> f64 {
        self.sequence.interval()
    }

    pub fn kappa(&self) -> f64 {
        self.pulses.kappa
    }

    pub fn g(&self) -> f64 {
        self.field.g
    }

    /// Non-fatal findings, currently only Raman detuning from the species transition.
    pub fn warnings(&self) -> Vec<String> {
        let nu0 = self.species.nu0();
        let mut out = Vec::new();
        if ((self.pulses.nu_diff - nu0) / nu0).abs() > RESONANCE_TOLERANCE {
            out.push(format!(
                "Raman difference frequency {} Hz is detuned from the {} transition at {} Hz",
                self.pulses.nu_diff,
                self.species.label(),
                nu0
            ));
        }
        out
    }

    fn require_equivalence(&self, form: &'static str) -> Result<()> {
        let eta = self.eta();
        if eta != 1.0 {
            return Err(Error::EquivalencePrincipleRequired { form, eta });
        }
        Ok(())
    }

    /// Copy with one scan parameter replaced.
    pub fn with_parameter(&self, parameter: ScanParameter, value: f64) -> Result<Self> {
        let mut s = self.clone();
        match parameter {
            ScanParameter::G => s.field.g = value,
            ScanParameter::T => s.sequence = PulseSequence::new(value)?,
            ScanParameter::Kappa => s.pulses.kappa = value,
            ScanParameter::Eta => {
                if !(value.is_finite() && value >= 0.0) {
                    return Err(Error::domain(format!("eta must be finite and non-negative, got {value}")));
                }
                s.species = s.species.with_ep_ratio(value)?;
            }
        }
        s.validate()?;
        Ok(s)
    }
}

/// Arm kinematics plus their phase-engine discretization. `arm_upper` is the
/// arm kicked at t = 0 (above the other for kappa > 0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterferometerGeometry {
    pub arm_upper: Path,
    pub arm_lower: Path,
    /// Separation at t = T (m).
    pub separation_l: f64,
    pub species: AtomSpecies,
    kinematics: ArmKinematics,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct ArmKinematics {
    x0: f64,
    v0: f64,
    kick: f64,
    accel: f64,
    t: f64,
}

impl ArmKinematics {
    /// Heights (upper, lower) at time `t` in [0, 2T].
    fn positions(&self, t: f64) -> (f64, f64) {
        let ArmKinematics { x0, v0, kick, accel, t: big_t } = *self;
        let free = |x: f64, v: f64, dt: f64| x + v * dt - 0.5 * accel * dt * dt;
        if t <= big_t {
            (free(x0, v0 + kick, t), free(x0, v0, t))
        } else {
            let up_t = free(x0, v0 + kick, big_t);
            let lo_t = free(x0, v0, big_t);
            let v_mid = v0 - accel * big_t;
            let dt = t - big_t;
            (free(up_t, v_mid, dt), free(lo_t, v_mid + kick, dt))
        }
    }
}

impl InterferometerGeometry {
    pub fn positions_at(&self, t: f64) -> (f64, f64) {
        self.kinematics.positions(t)
    }

    /// Arm velocity change per kick, hbar kappa / m_i.
    pub fn recoil_velocity(&self) -> f64 {
        self.kinematics.kick
    }
}

pub fn build_geometry(setup: &GravimetrySetup, constants: &PhysicalConstants) -> Result<InterferometerGeometry> {
    build_geometry_with(setup, DEFAULT_ARM_SEGMENTS, constants)
}

/// `n_seg` midpoint segments per arm over [0, 2T]; must be even so the
/// mirror pulse falls on a segment boundary.
pub fn build_geometry_with(
    setup: &GravimetrySetup,
    n_seg: usize,
    constants: &PhysicalConstants,
) -> Result<InterferometerGeometry> {
    setup.validate()?;
    if n_seg < 2 || !n_seg.is_multiple_of(2) {
        return Err(Error::domain(format!("segment count must be even and >= 2, got {n_seg}")));
    }
    let t = setup.t();
    let kick = constants.hbar() * setup.kappa() / setup.species.m_inertial();
    let kinematics = ArmKinematics {
        x0: setup.initial_height,
        v0: setup.initial_velocity,
        kick,
        accel: setup.eta() * setup.g(),
        t,
    };
    let dt = 2.0 * t / n_seg as f64;
    let mut upper = Vec::with_capacity(n_seg);
    let mut lower = Vec::with_capacity(n_seg);
    for i in 0..n_seg {
        let mid = (i as f64 + 0.5) * dt;
        let (xu, xl) = kinematics.positions(mid);
        upper.push(PathSegment::new(xu, dt)?);
        lower.push(PathSegment::new(xl, dt)?);
    }
    Ok(InterferometerGeometry {
        arm_upper: Path::new(upper)?,
        arm_lower: Path::new(lower)?,
        separation_l: kick * t,
        species: setup.species.clone(),
        kinematics,
    })
}

/// `-(m_g/m_i) g kappa T^2`.
pub fn gravimeter_phase(setup: &GravimetrySetup) -> Result<f64> {
    setup.validate()?;
    let t = setup.t();
    Ok(-setup.eta() * setup.g() * setup.kappa() * t * t)
}

/// Potential-energy phase difference between the two built arms, summed by
/// the phase engine over their parabolic trajectories.
pub fn arm_differential_phase(
    geometry: &InterferometerGeometry,
    field: &UniformGravityField,
    constants: &PhysicalConstants,
) -> Result<f64> {
    differential_phase(&geometry.arm_upper, &geometry.arm_lower, &geometry.species, field, constants)
}

/// Two stationary sections A and B, separated by `l = hbar kappa T / m_i`
/// for duration T, the constant-separation picture of the arms.
pub fn section_differential_phase(setup: &GravimetrySetup, constants: &PhysicalConstants) -> Result<f64> {
    let geometry = build_geometry_with(setup, 2, constants)?;
    let base = setup.initial_height;
    let a = Path::stationary(base + geometry.separation_l, setup.t())?;
    let b = Path::stationary(base, setup.t())?;
    differential_phase(&a, &b, &setup.species, &setup.field, constants)
}

/// `-2 pi g T^2 / lambda_dB` with `lambda_dB = 2 pi / kappa`. Requires eta = 1.
pub fn phase_debroglie_form(setup: &GravimetrySetup) -> Result<f64> {
    setup.validate()?;
    setup.require_equivalence("phase_debroglie_form")?;
    let kappa = setup.kappa();
    if kappa == 0.0 {
        return Ok(0.0);
    }
    let lambda = TAU / kappa.abs();
    let t = setup.t();
    Ok(-kappa.signum() * TAU * setup.g() * t * t / lambda)
}

/// `-omega_c g l T / c^2` with `l = hbar kappa T / m_i`. Requires eta = 1.
pub fn phase_compton_form(setup: &GravimetrySetup, constants: &PhysicalConstants) -> Result<f64> {
    setup.validate()?;
    setup.require_equivalence("phase_compton_form")?;
    let t = setup.t();
    let l = constants.hbar() * setup.kappa() * t / setup.species.m_inertial();
    let omega_c = compton_angular_frequency(&setup.species, constants);
    Ok(-omega_c * setup.g() * l * t / constants.c_squared())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Populations {
    pub p_a: f64,
    pub p_b: f64,
}

/// `P_b = (1 - V cos phase) / 2`, `P_a = 1 - P_b`.
pub fn output_populations(phase: f64, visibility: f64) -> Result<Populations> {
    if !(0.0..=1.0).contains(&visibility) {
        return Err(Error::domain(format!("visibility must lie in [0, 1], got {visibility}")));
    }
    ensure_finite("phase", phase)?;
    let p_b = 0.5 * (1.0 - visibility * phase.cos());
    Ok(Populations { p_a: 1.0 - p_b, p_b })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FringeFall {
    /// Distance the fringe pattern falls over 2T (m).
    pub fall_distance: f64,
    /// Fall distance over the centre-of-mass wavelength `4 pi / kappa`, as a phase.
    pub fringe_phase: f64,
}

pub fn fringe_fall_picture(setup: &GravimetrySetup) -> Result<FringeFall> {
    setup.validate()?;
    setup.require_equivalence("fringe_fall_picture")?;
    let t = setup.t();
    let fall_distance = 2.0 * setup.g() * t * t;
    let kappa = setup.kappa();
    let fringe_phase = if kappa == 0.0 {
        0.0
    } else {
        let com_wavelength = 2.0 * TAU / kappa;
        -TAU * fall_distance / com_wavelength
    };
    Ok(FringeFall { fall_distance, fringe_phase })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanParameter {
    G,
    T,
    Kappa,
    Eta,
}

impl FromStr for ScanParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "g" => Ok(Self::G),
            "T" | "t" => Ok(Self::T),
            "kappa" => Ok(Self::Kappa),
            "eta" => Ok(Self::Eta),
            other => Err(Error::Usage(format!("unknown scan parameter `{other}` (expected g, T, kappa or eta)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FringeRow {
    pub value: f64,
    pub phase: f64,
    pub p_a: f64,
    pub p_b: f64,
}

/// One row per value, in input order, at unit visibility.
pub fn fringe_scan(setup: &GravimetrySetup, parameter: ScanParameter, values: &[f64]) -> Result<Vec<FringeRow>> {
    if values.is_empty() {
        return Err(Error::Usage("fringe scan needs at least one value".into()));
    }
    values
        .par_iter()
        .map(|&value| {
            let s = setup.with_parameter(parameter, value)?;
            let phase = gravimeter_phase(&s)?;
            let pops = output_populations(phase, 1.0)?;
            Ok(FringeRow { value, phase, p_a: pops.p_a, p_b: pops.p_b })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cs_setup() -> GravimetrySetup {
        let cs = AtomSpecies::equivalent("Cs", 2.2069e-25, 9_192_631_770.0).unwrap();
        GravimetrySetup::new(cs, 9.8, 1.4748e7, 0.1, 0.0).unwrap()
    }

    fn si() -> PhysicalConstants {
        PhysicalConstants::codata2018()
    }

    #[test]
    fn geometry_examples() {
        let k = si();
        let geo = build_geometry(&cs_setup(), &k).unwrap();
        // 1.054571817e-34 * 1.4748e7 * 0.1 / 2.2069e-25 = 7.047363e-4
        assert!((geo.separation_l - 7.047_363e-4).abs() < 1e-8, "{}", geo.separation_l);
        assert_eq!(geo.arm_upper.segments().len(), DEFAULT_ARM_SEGMENTS);

        let mut no_kick = cs_setup();
        no_kick.pulses.kappa = 0.0;
        let geo0 = build_geometry(&no_kick, &k).unwrap();
        assert_eq!(geo0.separation_l, 0.0);
        assert_eq!(geo0.arm_upper, geo0.arm_lower);

        let mut free = cs_setup();
        free.field.g = 0.0;
        let geo_free = build_geometry(&free, &k).unwrap();
        let (u, l) = geo_free.positions_at(0.1);
        assert_relative_eq!(u - l, geo_free.separation_l, max_relative = 1e-12);
        let (u_half, _) = geo_free.positions_at(0.05);
        assert_relative_eq!(u_half, 0.5 * u, max_relative = 1e-12);
    }

    #[test]
    fn arms_close_at_two_t() {
        let k = si();
        for g in [0.0, 9.8, -3.0, 100.0] {
            let mut s = cs_setup();
            s.field.g = g;
            s.initial_velocity = 1.3;
            let geo = build_geometry(&s, &k).unwrap();
            let (u, l) = geo.positions_at(0.0);
            assert_eq!(u, l);
            let (u, l) = geo.positions_at(0.2);
            assert!((u - l).abs() <= 1e-12 * geo.separation_l, "g={g}: {u} vs {l}");
        }
    }

    #[test]
    fn odd_segment_count_rejected() {
        assert!(build_geometry_with(&cs_setup(), 3, &si()).is_err());
        assert!(PulseSequence::new(0.0).is_err());
    }

    #[test]
    fn gravimeter_phase_examples() {
        let s = cs_setup();
        let p = gravimeter_phase(&s).unwrap();
        assert!((p - -1.445_304e6).abs() < 1.0, "{p}");
        let off = s.with_parameter(ScanParameter::Eta, 0.0).unwrap();
        assert_eq!(gravimeter_phase(&off).unwrap(), 0.0);
        let long = s.with_parameter(ScanParameter::T, 0.2).unwrap();
        assert_relative_eq!(gravimeter_phase(&long).unwrap(), 4.0 * p, max_relative = 1e-15);
    }

    #[test]
    fn path_recomputation_matches_closed_form() {
        let k = si();
        for (eta, v0) in [(1.0, 0.0), (1.0, 2.5), (0.5, -1.0), (1.0 + 1e-9, 0.3)] {
            let s = cs_setup().with_parameter(ScanParameter::Eta, eta).unwrap();
            let s = GravimetrySetup { initial_velocity: v0, ..s };
            let closed = gravimeter_phase(&s).unwrap();
            let geo = build_geometry(&s, &k).unwrap();
            let arms = arm_differential_phase(&geo, &s.field, &k).unwrap();
            assert_relative_eq!(arms, closed, max_relative = 1e-9);
            let sections = section_differential_phase(&s, &k).unwrap();
            assert_relative_eq!(sections, closed, max_relative = 1e-9);
        }
    }

    #[test]
    fn closed_forms_agree() {
        let k = si();
        let s = cs_setup();
        let p9 = gravimeter_phase(&s).unwrap();
        let p10 = phase_debroglie_form(&s).unwrap();
        let p12 = phase_compton_form(&s, &k).unwrap();
        assert_relative_eq!(p10, p9, max_relative = 1e-12);
        assert_relative_eq!(p12, p9, max_relative = 1e-12);
        assert!((p12 - -1.4453e6).abs() < 1e2);

        let free = s.with_parameter(ScanParameter::G, 0.0).unwrap();
        assert_eq!(phase_debroglie_form(&free).unwrap(), 0.0);
        let no_l = s.with_parameter(ScanParameter::Kappa, 0.0).unwrap();
        assert_eq!(phase_compton_form(&no_l, &k).unwrap(), 0.0);
    }

    #[test]
    fn ep_only_forms_reject_eta() {
        let k = si();
        let s = cs_setup().with_parameter(ScanParameter::Eta, 0.9).unwrap();
        assert!(matches!(phase_debroglie_form(&s), Err(Error::EquivalencePrincipleRequired { .. })));
        assert!(matches!(phase_compton_form(&s, &k), Err(Error::EquivalencePrincipleRequired { .. })));
        assert!(fringe_fall_picture(&s).is_err());
    }

    #[test]
    fn populations() {
        let p = output_populations(0.0, 1.0).unwrap();
        assert_eq!((p.p_a, p.p_b), (1.0, 0.0));
        let p = output_populations(PI, 1.0).unwrap();
        assert!(p.p_a.abs() < 1e-15 && (p.p_b - 1.0).abs() < 1e-15);
        for phase in [0.0, 1.0, 2.5, -7.0] {
            let p = output_populations(phase, 0.0).unwrap();
            assert_eq!((p.p_a, p.p_b), (0.5, 0.5));
        }
        assert!(output_populations(0.0, 1.5).is_err());
        assert!(output_populations(0.0, -0.1).is_err());
    }

    #[test]
    fn fringe_fall() {
        let s = cs_setup();
        let ff = fringe_fall_picture(&s).unwrap();
        assert_relative_eq!(ff.fall_distance, 0.196, max_relative = 1e-12);
        assert_relative_eq!(ff.fringe_phase.abs(), gravimeter_phase(&s).unwrap().abs(), max_relative = 1e-12);
        let ff0 = fringe_fall_picture(&s.with_parameter(ScanParameter::G, 0.0).unwrap()).unwrap();
        assert_eq!(ff0.fall_distance, 0.0);
        assert_eq!(ff0.fringe_phase, 0.0);
    }

    #[test]
    fn scans() {
        let s = cs_setup();
        let base = gravimeter_phase(&s).unwrap();
        let rows = fringe_scan(&s, ScanParameter::Eta, &[0.0, 0.5, 1.0]).unwrap();
        let phases: Vec<f64> = rows.iter().map(|r| r.phase).collect();
        assert_eq!(phases[0], 0.0);
        assert_relative_eq!(phases[1], 0.5 * base, max_relative = 1e-15);
        assert_relative_eq!(phases[2], base, max_relative = 1e-15);

        let rows = fringe_scan(&s, ScanParameter::T, &[0.05, 0.1, 0.3]).unwrap();
        for r in &rows {
            assert_relative_eq!(r.phase, base * (r.value / 0.1).powi(2), max_relative = 1e-12);
        }
        let single = fringe_scan(&s, ScanParameter::Kappa, &[1.4748e7]).unwrap();
        assert_eq!(single[0].phase, base);
        assert_eq!(single[0].p_b, output_populations(base, 1.0).unwrap().p_b);

        assert!(fringe_scan(&s, ScanParameter::G, &[]).is_err());
        assert!("omega".parse::<ScanParameter>().is_err());
        assert_eq!("kappa".parse::<ScanParameter>().unwrap(), ScanParameter::Kappa);
    }

    #[test]
    fn detuned_pulses_warn() {
        let mut s = cs_setup();
        assert!(s.warnings().is_empty());
        s.pulses.nu_diff *= 1.001;
        assert_eq!(s.warnings().len(), 1);
    }
}
