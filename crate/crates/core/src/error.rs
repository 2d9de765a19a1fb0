use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant to an exit status.
#[derive(Debug, Error)]
pub enum Error {
    /// A body description that violates symmetry, boundedness or convexity.
    #[error("invalid body: {0}")]
    InvalidBody(String),

    /// A parameter outside the documented domain of an operation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A mathematical hypothesis of a construction does not hold for the
    /// supplied data (for example, a cap that carries no boundary mass).
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    /// A measure whose Fourier transform is not real was passed where a
    /// symmetric measure is required.
    #[error("asymmetric measure: {0}")]
    AsymmetricMeasure(String),

    /// A search or scan ran out of its iteration/size budget.
    #[error("numeric budget exceeded: {0}")]
    NumericBudget(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid_input(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn invalid_body(msg: impl Into<String>) -> Error {
    Error::InvalidBody(msg.into())
}
