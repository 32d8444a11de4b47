use thiserror::Error;

use crate::phrase::Boundary;
use crate::thresholds::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} must lie in [0, 100], got {value}")]
    OutOfRange { what: &'static str, value: f64 },

    #[error("invalid thresholds: {0}")]
    InvalidThresholds(String),

    #[error("invalid partition lines: {0}")]
    InvalidLines(String),

    #[error("{family} score is indeterminate for prior {prior} and posterior {posterior}")]
    IndeterminateScore {
        family: Family,
        prior: f64,
        posterior: f64,
    },

    #[error("invalid response record: {0}")]
    InvalidRecord(String),

    #[error("unknown phrase token `{0}`")]
    UnknownPhrase(String),

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("need at least {needed} points for this fit, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("design matrix is singular (are all x values equal?)")]
    SingularDesign,

    #[error(
        "boundary {boundary} is underdetermined: {usable_bands} usable band(s), need at least 2"
    )]
    Underdetermined {
        boundary: Boundary,
        usable_bands: usize,
    },

    #[error("fitted boundary {boundary} is not usable: {reason}")]
    DegenerateFit { boundary: Boundary, reason: String },

    #[error("fitted partition lines are inconsistent: {0}")]
    InconsistentFit(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("parameter document: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by bad input rather than a failed computation.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::IndeterminateScore { .. }
                | Error::SingularDesign
                | Error::TooFewPoints { .. }
                | Error::Underdetermined { .. }
                | Error::DegenerateFit { .. }
                | Error::InconsistentFit(_)
        )
    }
}
