//! JSON scenarios, embedded presets and the runners behind the `gravsim` CLI.

mod body;
mod presets;
mod report;
mod run;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub use body::{
    ClockCompareBody, ClockSpec, ComptonCompareBody, DoubleSlitBody, GravimeterBody, OracleVerifyBody, ScanSpec,
    SpeciesRef,
};
pub use presets::{preset, preset_names, presets, Preset};
pub use report::{format_float, IdentityCheck, Quantity, RunReport};
pub use run::{
    run_body, run_clock_compare, run_compton_compare, run_double_slit, run_gravimeter, run_oracle_verify,
    RunOutput,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    Gravimeter,
    ClockCompare,
    DoubleSlit,
    OracleVerify,
    ComptonCompare,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 5] = [
        ScenarioKind::Gravimeter,
        ScenarioKind::ClockCompare,
        ScenarioKind::DoubleSlit,
        ScenarioKind::OracleVerify,
        ScenarioKind::ComptonCompare,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioKind::Gravimeter => "gravimeter",
            ScenarioKind::ClockCompare => "clock-compare",
            ScenarioKind::DoubleSlit => "double-slit",
            ScenarioKind::OracleVerify => "oracle-verify",
            ScenarioKind::ComptonCompare => "compton-compare",
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown scenario kind `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub path: Option<String>,
    #[serde(default)]
    pub format: Option<OutputFormat>,
}

/// `{"kind": ..., "body": {...}, "output": {...}}`. A file holding only the
/// body object is accepted too.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioFile {
    pub kind: Option<ScenarioKind>,
    pub body: Value,
    pub output: OutputSpec,
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::schema(".", format!("not valid JSON: {e}")))?;
        let Value::Object(map) = value else {
            return Err(Error::schema(".", "scenario must be a JSON object"));
        };
        if !map.contains_key("body") {
            return Ok(Self { kind: None, body: Value::Object(map), output: OutputSpec::default() });
        }
        let mut kind = None;
        let mut body = Value::Null;
        let mut output = OutputSpec::default();
        for (key, v) in map {
            match key.as_str() {
                "kind" => kind = Some(from_value::<ScenarioKind>(v, "kind")?),
                "body" => body = v,
                "output" => output = from_value(v, "output")?,
                other => return Err(Error::schema(other, "unknown top-level field")),
            }
        }
        if !body.is_object() {
            return Err(Error::schema("body", "expected an object"));
        }
        Ok(Self { kind, body, output })
    }
}

/// The body to run for `kind`: the preset (if any) with the scenario file
/// laid over it, plus the file's output block.
pub fn load(kind: ScenarioKind, scenario: Option<&str>, preset_name: Option<&str>) -> Result<(Value, OutputSpec)> {
    if scenario.is_none() && preset_name.is_none() {
        return Err(Error::Usage("give --scenario, --preset or both".into()));
    }
    let mut body = match preset_name {
        Some(name) => preset(name, kind)?.body,
        None => Value::Object(Default::default()),
    };
    let mut output = OutputSpec::default();
    if let Some(text) = scenario {
        let file = ScenarioFile::parse(text)?;
        if let Some(k) = file.kind {
            if k != kind {
                return Err(Error::Usage(format!("scenario file is a {k} scenario but `{kind}` was requested")));
            }
        }
        merge(&mut body, file.body);
        output = file.output;
    }
    Ok((body, output))
}

/// Overlay `top` on `base`, recursing into objects.
pub fn merge(base: &mut Value, top: Value) {
    match (base, top) {
        (Value::Object(b), Value::Object(t)) => {
            for (k, v) in t {
                match b.get_mut(&k) {
                    Some(slot) if slot.is_object() && v.is_object() => merge(slot, v),
                    _ => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (slot, t) => *slot = t,
    }
}

/// Deserialize with the failing field path in the error.
pub(crate) fn from_value<T: serde::de::DeserializeOwned>(value: Value, prefix: &str) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        let path = match (prefix.is_empty(), inner.as_str()) {
            (true, p) => p.to_string(),
            (false, ".") => prefix.to_string(),
            (false, p) => format!("{prefix}.{p}"),
        };
        Error::schema(path, e.into_inner().to_string())
    })
}
