use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("genus must be at least {min}, got {got}")]
    Genus { min: usize, got: usize },

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("element {0} is not permissible")]
    NotPermissible(String),

    #[error("no admissible element matches: {0}")]
    NoMatch(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
