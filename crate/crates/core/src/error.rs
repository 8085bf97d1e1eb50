use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A malformed argument that is not a domain violation (empty input, bad size).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A series or adaptive scheme did not meet its tolerance within budget.
    #[error("{what} did not converge after {steps} steps (best estimate {estimate:e})")]
    Convergence {
        what: &'static str,
        steps: usize,
        estimate: f64,
    },

    /// The problem is too ill-conditioned for double-precision evaluation.
    #[error("conditioning error: {0}")]
    Conditioning(String),

    /// Failure inside a dense linear-algebra routine.
    #[error("numeric error: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
