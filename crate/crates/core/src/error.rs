//! Error taxonomy shared by the whole crate.
//!
//! Four things can go wrong: the caller hands us parameters outside a
//! family's domain, asks for a capability a family does not have, hands us a
//! configuration that contradicts itself, or a numerical routine fails to
//! converge. Callers that route between methods additionally need to tell
//! "there is no closed form here" apart from a hard failure, so that case
//! gets its own variant.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Parameter outside the domain of the distribution family or operation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The family does not support the requested operation at all
    /// (e.g. density of a stable law, CF of a lognormal).
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// No closed form exists for this input; the caller should fall back to
    /// quadrature or Monte Carlo. Never silently substituted with a number.
    #[error("closed form unavailable, fallback required: {0}")]
    FallbackRequired(String),

    /// Self-contradictory or incomplete run configuration.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Too little data for the requested estimator.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A numerical method failed to converge or produced a non-finite value.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to: 2 for domain, usage,
    /// and capability problems, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Numerical(_) => 3,
            _ => 2,
        }
    }

    /// Short machine-readable kind tag used in JSON error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Unsupported(_) => "unsupported",
            Error::FallbackRequired(_) => "fallback_required",
            Error::InvalidConfig(_) => "invalid_config",
            Error::InsufficientData(_) => "insufficient_data",
            Error::Numerical(_) => "numerical",
        }
    }
}
