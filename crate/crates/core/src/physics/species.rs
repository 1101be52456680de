use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};

/// On-disk form of a species: `m_gravitational_kg` defaults to the inertial mass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeciesRecord {
    pub label: String,
    pub m_inertial_kg: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_gravitational_kg: Option<f64>,
    pub nu0_hz: f64,
}

/// The particle under test. Inertial and gravitational mass are stored
/// independently so that equivalence-principle violating species are
/// ordinary values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpeciesRecord", into = "SpeciesRecord")]
pub struct AtomSpecies {
    label: String,
    m_inertial: f64,
    m_gravitational: f64,
    nu0: f64,
}

impl AtomSpecies {
    pub fn new(label: impl Into<String>, m_inertial: f64, m_gravitational: f64, nu0: f64) -> Result<Self> {
        ensure_positive("m_inertial", m_inertial)?;
        if !(m_gravitational.is_finite() && m_gravitational >= 0.0) {
            return Err(Error::domain(format!(
                "m_gravitational must be finite and non-negative, got {m_gravitational}"
            )));
        }
        ensure_positive("nu0", nu0)?;
        let species = Self { label: label.into(), m_inertial, m_gravitational, nu0 };
        if !species.ep_ratio().is_finite() {
            return Err(Error::domain("m_gravitational / m_inertial is not finite"));
        }
        Ok(species)
    }

    /// A species obeying the equivalence principle exactly.
    pub fn equivalent(label: impl Into<String>, mass: f64, nu0: f64) -> Result<Self> {
        Self::new(label, mass, mass, nu0)
    }

    /// Shipped presets, looked up case-insensitively (`Cs-133`, `Rb-87`).
    pub fn preset(label: &str) -> Result<Self> {
        presets()
            .iter()
            .find(|s| s.label.eq_ignore_ascii_case(label))
            .cloned()
            .ok_or_else(|| Error::domain(format!("unknown species preset `{label}`")))
    }

    pub fn preset_labels() -> Vec<&'static str> {
        presets().iter().map(|s| s.label.as_str()).collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let record: SpeciesRecord = serde_json::from_str(text)
            .map_err(|e| Error::schema("species", e.to_string()))?;
        Self::try_from(record)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn m_inertial(&self) -> f64 {
        self.m_inertial
    }

    pub fn m_gravitational(&self) -> f64 {
        self.m_gravitational
    }

    pub fn nu0(&self) -> f64 {
        self.nu0
    }

    /// eta = m_g / m_i.
    pub fn ep_ratio(&self) -> f64 {
        self.m_gravitational / self.m_inertial
    }

    /// Same inertial mass, gravitational mass set to `eta * m_i`.
    pub fn with_ep_ratio(&self, eta: f64) -> Result<Self> {
        Self::new(self.label.clone(), self.m_inertial, eta * self.m_inertial, self.nu0)
    }

    pub fn with_inertial_mass(&self, m_inertial: f64) -> Result<Self> {
        let eta = self.ep_ratio();
        Self::new(self.label.clone(), m_inertial, eta * m_inertial, self.nu0)
    }
}

impl TryFrom<SpeciesRecord> for AtomSpecies {
    type Error = Error;

    fn try_from(r: SpeciesRecord) -> Result<Self> {
        let m_g = r.m_gravitational_kg.unwrap_or(r.m_inertial_kg);
        AtomSpecies::new(r.label, r.m_inertial_kg, m_g, r.nu0_hz)
    }
}

impl From<AtomSpecies> for SpeciesRecord {
    fn from(s: AtomSpecies) -> Self {
        SpeciesRecord {
            label: s.label,
            m_inertial_kg: s.m_inertial,
            m_gravitational_kg: Some(s.m_gravitational),
            nu0_hz: s.nu0,
        }
    }
}

fn presets() -> &'static [AtomSpecies] {
    static PRESETS: OnceLock<Vec<AtomSpecies>> = OnceLock::new();
    PRESETS.get_or_init(|| {
        let records: Vec<SpeciesRecord> = serde_json::from_str(include_str!("../../presets/species.json"))
            .expect("embedded species presets are valid JSON");
        records
            .into_iter()
            .map(|r| AtomSpecies::try_from(r).expect("embedded species presets are valid"))
            .collect()
    })
}
