use thiserror::Error;

/// Errors raised by the double-precision evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested function.
    #[error("domain error: {0}")]
    Domain(String),

    /// The result is not representable as a finite `f64`; the log-scaled
    /// variant of the evaluator still succeeds.
    #[error("overflow: {0}")]
    Overflow(String),

    /// The requested truncation order exceeds what the coefficient table holds.
    #[error("order {requested} exceeds the coefficient table order {available}")]
    Order { requested: usize, available: usize },

    /// The exact coefficient pipeline produced an inconsistent series.
    #[error("coefficient generation failed: {0}")]
    Generation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
