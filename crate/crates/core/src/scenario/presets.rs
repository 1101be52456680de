use serde_json::{json, Value};

use super::ScenarioKind;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub kind: ScenarioKind,
    pub description: &'static str,
    pub body: Value,
}

fn cs_gravimeter() -> Value {
    json!({
        "species": "Cs-133",
        "g_mps2": 9.8,
        "kappa_rad_per_m": 1.4748e7,
        "T_s": 0.1,
        "initial_velocity_mps": 0.0
    })
}

fn all() -> Vec<Preset> {
    let mut eta_scan = cs_gravimeter();
    eta_scan["scan"] = json!({"parameter": "eta", "values": [0.0, 0.5, 1.0]});
    vec![
        Preset {
            name: "cs-gravimeter",
            kind: ScenarioKind::Gravimeter,
            description: "Cs fountain gravimeter, kappa = 1.4748e7 rad/m, T = 0.1 s",
            body: cs_gravimeter(),
        },
        Preset {
            name: "cs-eta-scan",
            kind: ScenarioKind::Gravimeter,
            description: "Cs gravimeter scanned over m_g/m_i in {0, 0.5, 1}",
            body: eta_scan,
        },
        Preset {
            name: "cs-compton",
            kind: ScenarioKind::ComptonCompare,
            description: "Cs gravimeter phase read as a Compton-clock time next to a real clock",
            body: cs_gravimeter(),
        },
        Preset {
            name: "clock-1m",
            kind: ScenarioKind::ClockCompare,
            description: "Two Cs clocks 1 m apart for 1 s",
            body: json!({
                "species": "Cs-133",
                "g_mps2": 9.8,
                "clock_a": {"x_m": 1.0},
                "clock_b": {"x_m": 0.0},
                "duration_s": 1.0
            }),
        },
        Preset {
            name: "scaled-oracle",
            kind: ScenarioKind::OracleVerify,
            description: "Wave-packet interferometer, m = 1, kappa = 10, g = 0.5, T = 1 (hbar = 1)",
            body: json!({}),
        },
        Preset {
            name: "scaled-oracle-ep",
            kind: ScenarioKind::OracleVerify,
            description: "Wave-packet interferometer with m_g = 0.5 m_i",
            body: json!({"m_g": 0.5}),
        },
        Preset {
            name: "scaled-oracle-g0",
            kind: ScenarioKind::OracleVerify,
            description: "Wave-packet interferometer without gravity",
            body: json!({"g": 0.0, "tolerance_rad": 1e-9}),
        },
        Preset {
            name: "double-slit",
            kind: ScenarioKind::DoubleSlit,
            description: "Far-field double slit, d = 1, w = 0.02, m = 1, v = 1, L = 2 (hbar = 1)",
            body: json!({}),
        },
    ]
}

pub fn preset_names() -> Vec<&'static str> {
    all().into_iter().map(|p| p.name).collect()
}

pub fn presets() -> Vec<Preset> {
    all()
}

/// Looks a preset up by name and checks it belongs to `kind`.
pub fn preset(name: &str, kind: ScenarioKind) -> Result<Preset> {
    let p = all()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::Usage(format!("unknown preset `{name}` (available: {})", preset_names().join(", "))))?;
    if p.kind != kind {
        return Err(Error::Usage(format!("preset `{name}` is a {} scenario, not {kind}", p.kind)));
    }
    Ok(p)
}
