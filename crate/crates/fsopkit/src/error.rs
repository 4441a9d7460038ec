use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} = {value} exceeds the configured bound {max}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        max: usize,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("boundary composition nonzero at degree {degree}")]
    NotAComplex { degree: usize },
    #[error("poset has no top element")]
    NoTop,
    #[error("poset is not graded")]
    NotGraded,
    #[error("poset is not upper Cohen-Macaulay")]
    NotUpperCm,
    #[error("truncation degrees differ: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("exponential of an element with nonzero constant term")]
    NonzeroConstantTerm,
    #[error("transition map from {from} to {to} is not injective")]
    NonInjective { from: usize, to: usize },
    #[error("functoriality fails for {0}")]
    NotFunctorial(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("json: {0}")]
    Json(String),
    #[error("window too short: need {needed} terms, have {have}")]
    WindowTooShort { needed: usize, have: usize },
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
