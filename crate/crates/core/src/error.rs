use thiserror::Error;

/// Errors raised by the bound engine and its supporting modules.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("{op}: domain error: {msg}")]
    Domain { op: &'static str, msg: String },

    /// Malformed input data.
    #[error("parse error at {location}: {msg}")]
    Parse { location: String, msg: String },

    /// A zero table is not sorted in ascending order.
    #[error("ordinates not ascending at record {record}: {next} follows {prev}")]
    NotAscending { record: usize, prev: f64, next: f64 },

    /// A data source contained no records.
    #[error("empty input")]
    EmptyInput,

    /// Structurally valid data that violates a table invariant.
    #[error("invalid data: {0}")]
    Invalid(String),

    /// Parameters for which the requested bound does not apply.
    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    /// A query outside the range covered by the available data.
    #[error("range error: {0}")]
    Range(String),

    /// The request exceeds the configured resource budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Error {
    Error::Domain {
        op,
        msg: msg.into(),
    }
}
