use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero vector where a nonzero integer vector is required")]
    ZeroVector,
    #[error("not a lattice subspace: {0}")]
    NotLatticeSubspace(String),
    #[error("point does not lie in the subspace")]
    NotInSubspace,
    #[error("polyhedron is empty")]
    Infeasible,
    #[error("polyhedron has integer points")]
    IntegerFeasible,
    #[error("integer hull is empty")]
    EmptyIntegerHull,
    #[error("polyhedron is not full-dimensional")]
    LowerDimensional,
    #[error("unbounded: {0}")]
    Unbounded(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
