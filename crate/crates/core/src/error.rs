use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("inequality system has no solution")]
    Empty,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error(
        "set is not full-dimensional (affine dimension {found} in ambient dimension {expected})"
    )]
    NotFullDimensional { expected: usize, found: usize },
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),
    #[error("point {0} does not lie in the cone")]
    NotInCone(String),
    #[error("cone is not pointed")]
    NotPointed,
    #[error("generator {0} is not primitive")]
    NonPrimitive(usize),
    #[error("{0} out of range")]
    OutOfRange(String),
    #[error("configuration does not positively span its linear span")]
    NotPositivelySpanning,
    #[error("all-ones vector lies in the column span of the configuration")]
    OnesInColumnSpan,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
