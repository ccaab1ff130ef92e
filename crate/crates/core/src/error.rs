use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested quantity is infinite (pole or non-integrable singularity).
    #[error("divergence: {0}")]
    Divergence(String),

    /// An iterative method hit its cap before reaching the requested accuracy.
    #[error(
        "accuracy not reached: {message} (best estimate {estimate:e}, error estimate {error:e})"
    )]
    Accuracy {
        message: String,
        estimate: f64,
        error: f64,
    },

    /// Condensation requires a trap power below 2.
    #[error("no condensation for trap power eta = {eta} (requires 0 < eta < 2)")]
    NoCondensation { eta: f64 },

    /// Below the critical temperature the chemical potential is pinned at zero.
    #[error("condensed phase: T = {temperature} is not above T_c = {critical}")]
    CondensedPhase { temperature: f64, critical: f64 },

    /// A discrete spectrum has too few levels for the requested occupation sum.
    #[error("spectrum truncated: {0}")]
    Truncation(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
