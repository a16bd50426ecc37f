use thiserror::Error;

/// Errors produced by the curvature engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FinslerError {
    /// Inconsistent dimensions or malformed model data.
    #[error("structural error: {0}")]
    Structural(String),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A coefficient is singular (or numerically too close to it).
    #[error("singularity at {locus} (s = {s})")]
    Singularity { locus: String, s: f64 },

    /// Adaptive quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge; worst panel [{a}, {b}] with error estimate {estimate:e}")]
    Quadrature { a: f64, b: f64, estimate: f64 },

    /// A required check failed while running in validated mode.
    #[error("validation failed: {0}")]
    Validation(String),

    /// The requested path has no closed form for this family.
    #[error("no closed form available for the {0} family")]
    NoClosedForm(String),

    #[error("unknown catalog entry `{name}`; available: {}", available.join(", "))]
    UnknownEntry { name: String, available: Vec<String> },

    /// Config file could not be read or parsed.
    #[error("config error: {0}")]
    Config(String),
}

impl FinslerError {
    pub(crate) fn singular(locus: impl Into<String>, s: f64) -> Self {
        FinslerError::Singularity {
            locus: locus.into(),
            s,
        }
    }
}

pub type Result<T> = std::result::Result<T, FinslerError>;
