//! Crate-wide error type.

use crate::curve::GenericityReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("curve is not generic: {0} violation(s), first: {1}")]
    NotGeneric(usize, String),

    #[error("operation requires a closed curve")]
    ClosedRequired,

    #[error("operation requires an open curve")]
    OpenRequired,

    #[error("query point lies on the curve")]
    PointOnCurve,

    #[error("basepoint must not be a double point")]
    BasepointAtDoublePoint,

    #[error("curve is not in diagonal position: {0}")]
    NotDiagonal(String),

    #[error("divide is not tree-like")]
    NotTreeLike,

    #[error("no double point with id {0}")]
    NoSuchVertex(usize),

    #[error("no crossing with id {0}")]
    NoSuchCrossing(usize),

    #[error("diagram has {got} component(s), expected {expected}")]
    ComponentCount { expected: usize, got: usize },

    #[error("polynomial is not in normalized form: {0}")]
    Unnormalized(String),

    #[error("construction failed at stage {stage}: {detail}")]
    Construction { stage: &'static str, detail: String },

    #[error("move site rejected: {0}")]
    BadSite(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn not_generic(report: &GenericityReport) -> Self {
        let first = report
            .violations
            .first()
            .map(|v| v.to_string())
            .unwrap_or_else(|| "unknown".to_string());
        Error::NotGeneric(report.violations.len(), first)
    }

    pub fn construction(stage: &'static str, detail: impl Into<String>) -> Self {
        Error::Construction { stage, detail: detail.into() }
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
