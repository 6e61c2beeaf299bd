use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("signature mismatch: ({0}, {1}) vs ({2}, {3})")]
    SignatureMismatch(usize, usize, usize, usize),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not even: {0}")]
    NotEven(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("reduction not almost complex")]
    ReductionNotAlmostComplex,
    #[error("reduction degenerate")]
    ReductionDegenerate,
    #[error("not a metric candidate: {0}")]
    NotMetricCandidate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("theorem hypothesis violated: {0}")]
    TheoremHypothesis(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
