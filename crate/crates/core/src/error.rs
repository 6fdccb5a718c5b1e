//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias used by all fallible operations in this crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input value (bad vertex id, loop edge, negative count, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A text format failed to parse; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The operation's structural precondition does not hold for this input.
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    /// The operation is defined but deliberately unsupported for this input.
    #[error("not supported: {0}")]
    NotSupported(String),

    /// Derived parameters round to an unusable value; carries the offender.
    #[error("parameter infeasible: {name} = {value} (need {need})")]
    ParameterInfeasible {
        name: &'static str,
        value: f64,
        need: &'static str,
    },

    /// A drawing failed validation.
    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),

    /// A claimed structural property was refuted; the witness is printable.
    #[error("counterexample: {0}")]
    Counterexample(String),

    /// A search or sampling budget ran out before an exact answer.
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
