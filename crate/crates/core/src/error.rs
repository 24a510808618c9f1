use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero-area domain")]
    ZeroArea,
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix: rank {rank} < {size}")]
    Singular { rank: usize, size: usize },
    #[error("cardinality mismatch: expected {expected}, got {got}")]
    CardinalityMismatch { expected: usize, got: usize },
    #[error("point {0} is not on the principal lattice of degree {1}")]
    NotOnLattice(String, usize),
    #[error("cell {cell} has zero area")]
    DegenerateCell { cell: usize },
    #[error("cell {cell} boundary is not a simple closed loop: {detail}")]
    BadBoundary { cell: usize, detail: String },
    #[error("not a cellular complex: cell {cell}: {detail}")]
    NotCellular { cell: usize, detail: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
