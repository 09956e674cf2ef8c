use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gram matrix must be square, got {rows} rows with a row of length {len}")]
    NotSquare { rows: usize, len: usize },
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("vector has {got} coordinates but the lattice has rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the zero vector has no orthogonal complement")]
    ZeroVector,
    #[error("lattice is degenerate")]
    Degenerate,
    #[error("lattice is not positive definite")]
    NotPositiveDefinite,
    #[error("rank {rank} exceeds the supported limit of {limit}")]
    RankGuard { rank: usize, limit: usize },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("unknown lattice name `{0}`")]
    UnknownName(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unimplemented: {0}")]
    Unimplemented(&'static str),
}

impl Error {
    /// Guards are computational limits rather than bad input.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::RankGuard { .. } | Error::Overflow(_))
    }
}
