use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::from_value;
use crate::error::{Error, Result};
use crate::interferometer::{GravimetrySetup, ScanParameter, DEFAULT_ARM_SEGMENTS};
use crate::oracle::{DoubleSlitOptions, DoubleSlitSetup, OracleParams, SlitMask};
use crate::physics::{AtomSpecies, SpeciesRecord};

/// A shipped species label or an inline record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpeciesRef {
    Label(String),
    Inline(SpeciesRecord),
}

impl SpeciesRef {
    pub fn resolve(&self, path: &str) -> Result<AtomSpecies> {
        let resolved = match self {
            SpeciesRef::Label(label) => AtomSpecies::preset(label),
            SpeciesRef::Inline(record) => AtomSpecies::try_from(record.clone()),
        };
        resolved.map_err(|e| Error::schema(path, e.to_string()))
    }
}

fn default_cs() -> SpeciesRef {
    SpeciesRef::Label("Cs-133".into())
}

fn one() -> f64 {
    1.0
}

fn default_segments() -> usize {
    DEFAULT_ARM_SEGMENTS
}

fn finite(path: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::schema(path, format!("must be finite, got {v}")))
    }
}

fn positive(path: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::schema(path, format!("must be positive and finite, got {v}")))
    }
}

fn apply_eta(species: AtomSpecies, eta: Option<f64>) -> Result<AtomSpecies> {
    match eta {
        None => Ok(species),
        Some(e) if e.is_finite() && e >= 0.0 => species.with_ep_ratio(e).map_err(|err| Error::schema("eta", err.to_string())),
        Some(e) => Err(Error::schema("eta", format!("must be finite and non-negative, got {e}"))),
    }
}

fn record_value(species: &AtomSpecies) -> Value {
    serde_json::to_value(SpeciesRecord::from(species.clone())).expect("species serializes")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    pub parameter: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GravimeterBody {
    pub species: SpeciesRef,
    pub g_mps2: f64,
    pub kappa_rad_per_m: f64,
    #[serde(rename = "T_s")]
    pub t_s: f64,
    #[serde(default)]
    pub initial_velocity_mps: f64,
    #[serde(default)]
    pub initial_height_m: f64,
    /// m_g / m_i override applied to the species.
    #[serde(default)]
    pub eta: Option<f64>,
    #[serde(default = "one")]
    pub visibility: f64,
    #[serde(default = "default_segments")]
    pub n_segments: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanSpec>,
}

impl GravimeterBody {
    pub fn from_value(value: Value) -> Result<Self> {
        from_value(value, "")
    }

    pub fn setup(&self) -> Result<GravimetrySetup> {
        let species = apply_eta(self.species.resolve("species")?, self.eta)?;
        let mut setup = GravimetrySetup::new(
            species,
            finite("g_mps2", self.g_mps2)?,
            finite("kappa_rad_per_m", self.kappa_rad_per_m)?,
            positive("T_s", self.t_s)?,
            finite("initial_velocity_mps", self.initial_velocity_mps)?,
        )?;
        setup.initial_height = finite("initial_height_m", self.initial_height_m)?;
        if !(0.0..=1.0).contains(&self.visibility) {
            return Err(Error::schema("visibility", format!("must lie in [0, 1], got {}", self.visibility)));
        }
        if self.n_segments < 2 || !self.n_segments.is_multiple_of(2) {
            return Err(Error::schema("n_segments", format!("must be even and >= 2, got {}", self.n_segments)));
        }
        Ok(setup)
    }

    pub fn scan(&self) -> Result<Option<(ScanParameter, &[f64])>> {
        let Some(scan) = &self.scan else { return Ok(None) };
        let parameter = scan.parameter.parse().map_err(|e: Error| Error::schema("scan.parameter", e.to_string()))?;
        if scan.values.is_empty() {
            return Err(Error::schema("scan.values", "needs at least one value"));
        }
        Ok(Some((parameter, &scan.values)))
    }

    /// This body with the species inlined and eta made explicit.
    pub fn resolved(&self, setup: &GravimetrySetup) -> Value {
        let mut v = serde_json::to_value(self).expect("body serializes");
        v["species"] = record_value(&setup.species);
        v["eta"] = setup.eta().into();
        v
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComptonCompareBody {
    pub species: SpeciesRef,
    pub g_mps2: f64,
    pub kappa_rad_per_m: f64,
    #[serde(rename = "T_s")]
    pub t_s: f64,
    #[serde(default)]
    pub initial_velocity_mps: f64,
    #[serde(default)]
    pub eta: Option<f64>,
}

impl ComptonCompareBody {
    pub fn from_value(value: Value) -> Result<Self> {
        from_value(value, "")
    }

    pub fn setup(&self) -> Result<GravimetrySetup> {
        let species = apply_eta(self.species.resolve("species")?, self.eta)?;
        GravimetrySetup::new(
            species,
            finite("g_mps2", self.g_mps2)?,
            finite("kappa_rad_per_m", self.kappa_rad_per_m)?,
            positive("T_s", self.t_s)?,
            finite("initial_velocity_mps", self.initial_velocity_mps)?,
        )
    }

    pub fn resolved(&self, setup: &GravimetrySetup) -> Value {
        let mut v = serde_json::to_value(self).expect("body serializes");
        v["species"] = record_value(&setup.species);
        v["eta"] = setup.eta().into();
        v
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClockSpec {
    pub x_m: f64,
    /// Defaults to the species transition frequency.
    #[serde(default)]
    pub nu_hz: Option<f64>,
}

fn default_factors() -> Vec<f64> {
    vec![0.5, 2.0, 10.0]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClockCompareBody {
    #[serde(default = "default_cs")]
    pub species: SpeciesRef,
    #[serde(default)]
    pub eta: Option<f64>,
    pub g_mps2: f64,
    #[serde(default)]
    pub origin_potential_m2ps2: f64,
    pub clock_a: ClockSpec,
    pub clock_b: ClockSpec,
    pub duration_s: f64,
    /// Multipliers applied to both clock frequencies to show that the
    /// accumulated dilation does not depend on them.
    #[serde(default = "default_factors")]
    pub frequency_factors: Vec<f64>,
}

impl ClockCompareBody {
    pub fn from_value(value: Value) -> Result<Self> {
        from_value(value, "")
    }

    pub fn species(&self) -> Result<AtomSpecies> {
        apply_eta(self.species.resolve("species")?, self.eta)
    }

    pub fn validate(&self) -> Result<()> {
        finite("g_mps2", self.g_mps2)?;
        finite("origin_potential_m2ps2", self.origin_potential_m2ps2)?;
        finite("clock_a.x_m", self.clock_a.x_m)?;
        finite("clock_b.x_m", self.clock_b.x_m)?;
        if let Some(nu) = self.clock_a.nu_hz {
            positive("clock_a.nu_hz", nu)?;
        }
        if let Some(nu) = self.clock_b.nu_hz {
            positive("clock_b.nu_hz", nu)?;
        }
        positive("duration_s", self.duration_s)?;
        for (i, &k) in self.frequency_factors.iter().enumerate() {
            positive(&format!("frequency_factors.{i}"), k)?;
        }
        Ok(())
    }

    pub fn resolved(&self, species: &AtomSpecies) -> Value {
        let mut v = serde_json::to_value(self).expect("body serializes");
        v["species"] = record_value(species);
        v["eta"] = species.ep_ratio().into();
        for key in ["clock_a", "clock_b"] {
            if v[key]["nu_hz"].is_null() {
                v[key]["nu_hz"] = species.nu0().into();
            }
        }
        v
    }
}

/// Splits `body` into the keys listed in `keys` and the rest.
fn split_keys(value: Value, keys: &[&str]) -> Result<(Value, Value)> {
    let Value::Object(map) = value else {
        return Err(Error::schema(".", "body must be a JSON object"));
    };
    let (mut picked, mut rest) = (Map::new(), Map::new());
    for (k, v) in map {
        if keys.contains(&k.as_str()) {
            picked.insert(k, v);
        } else {
            rest.insert(k, v);
        }
    }
    Ok((Value::Object(picked), Value::Object(rest)))
}

fn extract_f64(map: &mut Value, key: &str, default: f64) -> Result<f64> {
    match map.as_object_mut().and_then(|m| m.remove(key)) {
        None => Ok(default),
        Some(v) => from_value(v, key),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoubleSlitBody {
    pub setup: DoubleSlitSetup,
    pub options: DoubleSlitOptions,
    /// Mass multiplier for the comparison run.
    pub mass_factor: f64,
}

impl Default for DoubleSlitBody {
    fn default() -> Self {
        Self { setup: DoubleSlitSetup::default(), options: DoubleSlitOptions::default(), mass_factor: 2.0 }
    }
}

impl DoubleSlitBody {
    pub fn from_value(value: Value) -> Result<Self> {
        let (options, mut rest) = split_keys(value, &["n_grid", "half_width", "mask"])?;
        let mass_factor = extract_f64(&mut rest, "mass_factor", 2.0)?;
        let body = Self { setup: from_value(rest, "")?, options: from_value(options, "")?, mass_factor };
        body.validate()?;
        Ok(body)
    }

    fn validate(&self) -> Result<()> {
        let s = &self.setup;
        positive("slit_separation", s.slit_separation)?;
        positive("slit_width", s.slit_width)?;
        if s.slit_separation <= s.slit_width {
            return Err(Error::schema("slit_separation", "must exceed slit_width"));
        }
        positive("mass", s.mass)?;
        positive("v", s.v)?;
        positive("propagation_time", s.propagation_time)?;
        positive("mass_factor", self.mass_factor)?;
        if let Some(h) = self.options.half_width {
            positive("half_width", h)?;
        }
        if let Some(n) = self.options.n_grid {
            if n < 2 || !n.is_power_of_two() {
                return Err(Error::schema("n_grid", format!("must be a power of two >= 2, got {n}")));
            }
        }
        Ok(())
    }

    /// Echo with the grid that was actually used.
    pub fn resolved(&self, n_grid: usize, half_width: f64) -> Value {
        let mut v = serde_json::to_value(self.setup).expect("setup serializes");
        v["n_grid"] = n_grid.into();
        v["half_width"] = half_width.into();
        v["mask"] = serde_json::to_value(self.options.mask).expect("mask serializes");
        v["mass_factor"] = self.mass_factor.into();
        v
    }

    pub fn with_mask(&self, mask: SlitMask) -> Self {
        let mut b = self.clone();
        b.options.mask = mask;
        b
    }
}

fn default_tolerance() -> f64 {
    1e-6
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleVerifyBody {
    pub params: OracleParams,
    pub tolerance_rad: f64,
}

impl Default for OracleVerifyBody {
    fn default() -> Self {
        Self { params: OracleParams::standard(), tolerance_rad: default_tolerance() }
    }
}

impl OracleVerifyBody {
    pub fn from_value(mut value: Value) -> Result<Self> {
        let tolerance_rad = extract_f64(&mut value, "tolerance_rad", default_tolerance())?;
        positive("tolerance_rad", tolerance_rad)?;
        let params: OracleParams = from_value(value, "")?;
        params.validate().map_err(|e| Error::schema(".", e.to_string()))?;
        Ok(Self { params, tolerance_rad })
    }

    pub fn resolved(&self) -> Value {
        let mut v = serde_json::to_value(self.params).expect("params serialize");
        v["tolerance_rad"] = self.tolerance_rad.into();
        v
    }
}
