use thiserror::Error;

use crate::report::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed structure: {0}")]
    Malformed(String),

    #[error("invalid {kind}: {report}")]
    Invalid {
        kind: &'static str,
        report: ValidationReport,
    },

    #[error("cannot decale a 0-truncated set")]
    DecaleLevelZero,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("not a horn: {0}")]
    NotAHorn(String),

    #[error("mismatched targets: {0}")]
    MismatchedTargets(String),

    /// A constructed certificate failed its own check. This means a bug, not a
    /// mathematical counterexample.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("unknown fixture `{name}`; available: {available}")]
    UnknownFixture { name: String, available: String },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
