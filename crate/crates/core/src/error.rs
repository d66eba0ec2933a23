use alloc::string::String;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("search cap exceeded: {what} (cap {cap})")]
    SearchCap { what: String, cap: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("weight is not stable under the vertex shift: {0}")]
    NotShiftStable(String),
    #[error("completion incomplete: {0}")]
    Incomplete(String),
    #[error("normal basis is infinite or exceeds the basis cap ({0} words)")]
    InfiniteBasis(usize),
    #[error("eigenvalue outside the spectral grid: {0}")]
    StrayEigenvalue(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("relation does not hold: {0}")]
    RelationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;
