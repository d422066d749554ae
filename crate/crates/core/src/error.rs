use thiserror::Error;

/// Errors raised by the analysis layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("prime {prime} divides a denominator of the matrix")]
    BadPrime { prime: u64 },

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("index {index} out of range for {bound} variables")]
    BadIndex { index: usize, bound: usize },

    #[error("curve series truncated at order {have}, composition needs order {need}")]
    OrderMismatch { have: usize, need: usize },

    #[error("jet direction lambda is zero")]
    DegenerateJet,

    #[error("projection target {target} invalid for a chart with n = {n}, r = {r}")]
    BadTarget { target: usize, n: usize, r: usize },

    #[error("chart is singular at the sampled point (tangent rank {rank}, need {need})")]
    SingularPoint { rank: usize, need: usize },

    #[error("no smooth sample found after {attempts} attempts")]
    SingularSample { attempts: usize },

    #[error("ambient dimension r = {r} too small, need r >= {need}")]
    AmbientTooSmall { r: usize, need: usize },

    #[error("ambient dimension r = {r}, this check needs r = {need} exactly")]
    AmbientMismatch { r: usize, need: usize },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("symbolic expansion limited to n <= {limit}, got n = {n}")]
    TooLarge { n: usize, limit: usize },

    #[error("random chart not smooth at the base point after {attempts} attempts")]
    SmoothnessFailure { attempts: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
