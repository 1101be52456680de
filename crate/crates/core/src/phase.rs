//! Gravitational phase accumulated along piecewise-constant paths.
//!
//! A [`Path`] is a list of segments, each held at a single representative
//! height for its duration, so the phase integral `-(1/hbar) ∫ m_g phi dt`
//! becomes an ordered Riemann sum. Phases are unwrapped (not reduced mod 2 pi).

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::physics::{AtomSpecies, PhysicalConstants, UniformGravityField};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SegmentRecord", into = "SegmentRecord")]
pub struct PathSegment {
    x: f64,
    duration: f64,
    v: Option<f64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SegmentRecord {
    x_m: f64,
    duration_s: f64,
    #[serde(default)]
    v_mps: Option<f64>,
}

impl PathSegment {
    pub fn new(x: f64, duration: f64) -> Result<Self> {
        ensure_finite("x", x)?;
        ensure_positive("duration", duration)?;
        Ok(Self { x, duration, v: None })
    }

    /// Segment traversed at speed `v`; required by the wavelength forms.
    pub fn with_speed(x: f64, duration: f64, v: f64) -> Result<Self> {
        ensure_positive("v", v)?;
        let mut seg = Self::new(x, duration)?;
        seg.v = Some(v);
        Ok(seg)
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn v(&self) -> Option<f64> {
        self.v
    }

    /// Spatial scale `l = v * duration`, when a speed is attached.
    pub fn length(&self) -> Option<f64> {
        self.v.map(|v| v * self.duration)
    }

    fn require_speed(&self) -> Result<f64> {
        self.v.ok_or_else(|| Error::domain("segment has no speed; the wavelength phase forms need v"))
    }
}

impl TryFrom<SegmentRecord> for PathSegment {
    type Error = Error;

    fn try_from(r: SegmentRecord) -> Result<Self> {
        match r.v_mps {
            Some(v) => PathSegment::with_speed(r.x_m, r.duration_s, v),
            None => PathSegment::new(r.x_m, r.duration_s),
        }
    }
}

impl From<PathSegment> for SegmentRecord {
    fn from(s: PathSegment) -> Self {
        SegmentRecord { x_m: s.x, duration_s: s.duration, v_mps: s.v }
    }
}

/// Non-empty ordered list of segments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PathRecord", into = "PathRecord")]
pub struct Path {
    segments: Vec<PathSegment>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PathRecord {
    segments: Vec<PathSegment>,
}

impl Path {
    pub fn new(segments: Vec<PathSegment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::domain("path must contain at least one segment"));
        }
        Ok(Self { segments })
    }

    /// A single segment held at height `x` for `duration`.
    pub fn stationary(x: f64, duration: f64) -> Result<Self> {
        Self::new(vec![PathSegment::new(x, duration)?])
    }

    pub fn segments(&self) -> &[PathSegment] {
        &self.segments
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Path) -> Path {
        let mut segments = self.segments.clone();
        segments.extend_from_slice(&other.segments);
        Path { segments }
    }

    /// Each segment split into `n` equal sub-segments at the same height.
    pub fn refined(&self, n: usize) -> Result<Path> {
        if n == 0 {
            return Err(Error::domain("refinement factor must be at least 1"));
        }
        let segments = self
            .segments
            .iter()
            .flat_map(|s| std::iter::repeat_n(PathSegment { duration: s.duration / n as f64, ..*s }, n))
            .collect();
        Path::new(segments)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::schema("path", e.to_string()))
    }
}

impl TryFrom<PathRecord> for Path {
    type Error = Error;

    fn try_from(r: PathRecord) -> Result<Self> {
        Path::new(r.segments)
    }
}

impl From<Path> for PathRecord {
    fn from(p: Path) -> Self {
        PathRecord { segments: p.segments }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseResult {
    /// Total phase (rad), the ordered sum of `breakdown`.
    pub phase: f64,
    pub breakdown: Vec<f64>,
}

/// `-m_g phi(x) t / hbar` for one segment.
pub fn segment_phase(
    seg: &PathSegment,
    species: &AtomSpecies,
    field: &UniformGravityField,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let phi = field.potential_at(seg.x)?;
    Ok(-species.m_gravitational() * phi * seg.duration / constants.hbar())
}

pub fn path_phase(
    path: &Path,
    species: &AtomSpecies,
    field: &UniformGravityField,
    constants: &PhysicalConstants,
) -> Result<PhaseResult> {
    let breakdown = path
        .segments
        .iter()
        .map(|s| segment_phase(s, species, field, constants))
        .collect::<Result<Vec<_>>>()?;
    let phase = breakdown.iter().sum();
    Ok(PhaseResult { phase, breakdown })
}

/// `path_phase(a) - path_phase(b)`.
pub fn differential_phase(
    path_a: &Path,
    path_b: &Path,
    species: &AtomSpecies,
    field: &UniformGravityField,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let a = path_phase(path_a, species, field, constants)?;
    let b = path_phase(path_b, species, field, constants)?;
    Ok(a.phase - b.phase)
}

/// Energy form: `E_g t / hbar = -m_g phi l / (v hbar)` with `l = v t`.
pub fn phase_form_energy(
    seg: &PathSegment,
    species: &AtomSpecies,
    field: &UniformGravityField,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let v = seg.require_speed()?;
    let l = v * seg.duration;
    let phi = field.potential_at(seg.x)?;
    Ok(-species.m_gravitational() * phi * l / (v * constants.hbar()))
}

/// Wavelength form: `-m_g phi l m_i lambda_dB / hbar^2`.
pub fn phase_form_wavelength(
    seg: &PathSegment,
    species: &AtomSpecies,
    field: &UniformGravityField,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let v = seg.require_speed()?;
    let l = v * seg.duration;
    let phi = field.potential_at(seg.x)?;
    let hbar = constants.hbar();
    // lambda_dB / 2 pi: the reduced wavelength hbar / (m_i v) keeps the form
    // dimensionally a phase.
    let reduced = hbar / (species.m_inertial() * v);
    Ok(-species.m_gravitational() * phi * l * species.m_inertial() * reduced / (hbar * hbar))
}

/// Ratio form: `-(m_g/m_i)(phi/v^2)(l/lambda_dB)`, again with the reduced wavelength.
pub fn phase_form_ratio(
    seg: &PathSegment,
    species: &AtomSpecies,
    field: &UniformGravityField,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let v = seg.require_speed()?;
    let l = v * seg.duration;
    let phi = field.potential_at(seg.x)?;
    let reduced = constants.hbar() / (species.m_inertial() * v);
    Ok(-species.ep_ratio() * (phi / (v * v)) * (l / reduced))
}

/// The ratio form regrouped as `(E_g / 2 E_kin)(l / lambda_dB)` with
/// `E_g = -m_g phi` and `E_kin = m_i v^2 / 2`.
pub fn phase_form_energy_ratio(
    seg: &PathSegment,
    species: &AtomSpecies,
    field: &UniformGravityField,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let v = seg.require_speed()?;
    let l = v * seg.duration;
    let e_g = -species.m_gravitational() * field.potential_at(seg.x)?;
    let e_kin = 0.5 * species.m_inertial() * v * v;
    let reduced = constants.hbar() / (species.m_inertial() * v);
    Ok((e_g / (2.0 * e_kin)) * (l / reduced))
}

/// Reduced de Broglie wavelength of two packets of one species,
/// `1/lambda = 1/lambda(v1) - 1/lambda(v2)`; positive when `v1 > v2`.
pub fn reduced_de_broglie_wavelength(
    species: &AtomSpecies,
    v1: f64,
    v2: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    ensure_finite("v1", v1)?;
    ensure_finite("v2", v2)?;
    if v1 == v2 {
        return Err(Error::domain("reduced wavelength undefined for equal speeds"));
    }
    let inv = species.m_inertial() * (v1 - v2) / (TAU * constants.hbar());
    Ok(1.0 / inv)
}
