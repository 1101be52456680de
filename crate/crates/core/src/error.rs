use thiserror::Error;

/// Errors produced by the library. Every variant maps onto one CLI exit code
/// through [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain on which the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The closed form requested assumes m_g = m_i but the species violates it.
    #[error("{form} assumes the equivalence principle (eta = 1) but eta = {eta}; use gravimeter_phase instead")]
    EquivalencePrincipleRequired { form: &'static str, eta: f64 },

    /// Unsupported option or parameter name.
    #[error("usage error: {0}")]
    Usage(String),

    /// Numerical configuration that cannot meet its own resolution contract.
    #[error("configuration error: {0}")]
    Config(String),

    /// A wave packet reached the edge of the periodic grid.
    #[error("boundary contact at step {step}: {detail}")]
    Boundary { step: usize, detail: String },

    /// Post-processing of a numerical result failed.
    #[error("analysis error: {0}")]
    Analysis(String),

    /// Scenario input failed schema validation. `path` is the JSON field path.
    #[error("invalid scenario at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema { path: path.into(), message: message.into() }
    }

    /// 2 for input validation, 3 for runtime or numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::EquivalencePrincipleRequired { .. }
            | Error::Usage(_)
            | Error::Schema { .. } => 2,
            Error::Config(_) | Error::Boundary { .. } | Error::Analysis(_) | Error::Io(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::domain(format!("{name} must be finite, got {value}")))
    }
}

pub(crate) fn ensure_positive(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(format!("{name} must be positive and finite, got {value}")))
    }
}
