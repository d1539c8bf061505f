use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("truncation r = {r} too small: {detail}")]
    Truncation { r: usize, detail: String },

    #[error("malformed wedge: {0}")]
    MalformedWedge(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The engine produced something the theory forbids (a non-antisymmetric
    /// right-hand side, a non-unitriangular bar matrix, ...).
    #[error("internal engine inconsistency: {0}")]
    Engine(String),

    #[error("parse error: {0}")]
    Parse(String),
}
