use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::ScenarioKind;
use crate::interferometer::FringeRow;

/// Scientific notation with 12 significant digits.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        // normalizes -0.0
        return format!("{:.11e}", 0.0);
    }
    format!("{v:.11e}")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub name: String,
    pub value: f64,
    pub unit: String,
}

/// Two or more routes to the same quantity and how far apart they landed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub forms: Vec<String>,
    /// Relative for `"relative"` checks, radians for `"absolute-rad"`.
    pub max_deviation: f64,
    pub kind: String,
    pub tolerance: f64,
    pub passed: bool,
}

impl IdentityCheck {
    /// Largest pairwise `|a - b| / max(|a|, |b|)` (0 when both are 0).
    pub fn relative(name: &str, forms: &[(&str, f64)], tolerance: f64) -> Self {
        let mut worst = 0.0_f64;
        for (i, (_, a)) in forms.iter().enumerate() {
            for (_, b) in &forms[i + 1..] {
                let scale = a.abs().max(b.abs());
                if scale > 0.0 {
                    worst = worst.max((a - b).abs() / scale);
                }
            }
        }
        Self {
            name: name.into(),
            forms: forms.iter().map(|(n, _)| n.to_string()).collect(),
            max_deviation: worst,
            kind: "relative".into(),
            tolerance,
            passed: worst <= tolerance,
        }
    }

    pub fn absolute(name: &str, forms: &[&str], deviation: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            forms: forms.iter().map(|s| s.to_string()).collect(),
            max_deviation: deviation,
            kind: "absolute-rad".into(),
            tolerance,
            passed: deviation <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub kind: ScenarioKind,
    /// Fully resolved inputs, defaults materialized.
    pub inputs: Value,
    pub results: Vec<Quantity>,
    pub identity_checks: Vec<IdentityCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fringe_table: Option<Vec<FringeRow>>,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
    pub wall_time_s: f64,
}

impl RunReport {
    pub(crate) fn new(kind: ScenarioKind, inputs: Value) -> Self {
        Self {
            kind,
            inputs,
            results: Vec::new(),
            identity_checks: Vec::new(),
            fringe_table: None,
            notes: Vec::new(),
            warnings: Vec::new(),
            wall_time_s: 0.0,
        }
    }

    pub(crate) fn push(&mut self, name: &str, value: f64, unit: &str) {
        self.results.push(Quantity { name: name.into(), value, unit: unit.into() });
    }

    pub fn result(&self, name: &str) -> Option<f64> {
        self.results.iter().find(|q| q.name == name).map(|q| q.value)
    }

    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.identity_checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self) -> bool {
        self.identity_checks.iter().all(|c| c.passed)
    }

    /// `section,name,value,unit` rows. Wall time is left out so identical
    /// inputs give identical bytes.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("section,name,value,unit\n");
        let _ = writeln!(out, "meta,kind,{},", self.kind.as_str());
        let mut inputs = Vec::new();
        flatten("", &self.inputs, &mut inputs);
        for (key, value) in inputs {
            let leaf = key.rsplit('.').next().unwrap_or(&key).to_string();
            let unit = if matches!(value, Value::Number(_)) { unit_for_key(&leaf) } else { "" };
            let _ = writeln!(out, "input,{key},{},{unit}", csv_value(&value));
        }
        for q in &self.results {
            let _ = writeln!(out, "result,{},{},{}", q.name, format_float(q.value), q.unit);
        }
        for c in &self.identity_checks {
            let unit = if c.kind == "relative" { "1" } else { "rad" };
            let _ = writeln!(out, "check,{}.max_deviation,{},{unit}", c.name, format_float(c.max_deviation));
            let _ = writeln!(out, "check,{}.tolerance,{},{unit}", c.name, format_float(c.tolerance));
            let _ = writeln!(out, "check,{}.forms,{},", c.name, quote(&c.forms.join(" ")));
            let _ = writeln!(out, "check,{}.passed,{},", c.name, c.passed);
        }
        for (i, w) in self.warnings.iter().enumerate() {
            let _ = writeln!(out, "warning,{i},{},", quote(w));
        }
        for (i, n) in self.notes.iter().enumerate() {
            let _ = writeln!(out, "note,{i},{},", quote(n));
        }
        out
    }

    /// `value,phase_rad,p_a,p_b`, when the run produced a fringe scan.
    pub fn fringe_csv(&self) -> Option<String> {
        let rows = self.fringe_table.as_ref()?;
        let mut out = String::from("value,phase_rad,p_a,p_b\n");
        for r in rows {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                format_float(r.value),
                format_float(r.phase),
                format_float(r.p_a),
                format_float(r.p_b)
            );
        }
        Some(out)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Short human-readable summary for the terminal.
    pub fn summary(&self) -> String {
        let mut out = format!("{} ({:.3} s)\n", self.kind.as_str(), self.wall_time_s);
        for q in &self.results {
            let _ = writeln!(out, "  {:<32} {:>20} {}", q.name, format_float(q.value), q.unit);
        }
        for c in &self.identity_checks {
            let _ = writeln!(
                out,
                "  check {:<26} dev {} (tol {}) {}",
                c.name,
                format_float(c.max_deviation),
                format_float(c.tolerance),
                if c.passed { "PASS" } else { "FAIL" }
            );
        }
        for w in &self.warnings {
            let _ = writeln!(out, "  warning: {w}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        out
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, Value)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), v, out);
            }
        }
        other => out.push((prefix.to_string(), other.clone())),
    }
}

fn csv_value(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => format_float(n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::String(s) => quote(s),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn unit_for_key(key: &str) -> &'static str {
    match key {
        "g_mps2" => "m/s^2",
        "kappa_rad_per_m" => "rad/m",
        "T_s" | "duration_s" => "s",
        "initial_velocity_mps" => "m/s",
        "initial_height_m" | "x_m" => "m",
        "m_inertial_kg" | "m_gravitational_kg" => "kg",
        "nu0_hz" | "nu_hz" | "photon_nu_hz" => "Hz",
        "origin_potential_m2ps2" => "m^2/s^2",
        "tolerance_rad" => "rad",
        "n_segments" | "n_grid" => "count",
        "eta" | "visibility" | "mass_factor" => "1",
        "m_i" | "m_g" | "g" | "kappa" | "T" | "dt" | "sigma0" | "x0" | "v0" | "slit_separation"
        | "slit_width" | "mass" | "v" | "propagation_time" | "half_width" => "scaled",
        _ => "1",
    }
}
