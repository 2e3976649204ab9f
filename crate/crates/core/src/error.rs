use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("class with zero constant term is not invertible")]
    NotInvertible,

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("scenario error at `{path}`: {reason}")]
    Scenario { path: String, reason: String },

    #[error("no certificate found: {0}")]
    Inconclusive(String),

    #[error("lemma id mismatch: report is {report}, baseline is {baseline}")]
    LemmaMismatch { report: String, baseline: String },
}

impl Error {
    pub(crate) fn scenario(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Scenario {
            path: path.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
