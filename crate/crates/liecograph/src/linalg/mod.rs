//! Exact linear algebra over ℚ.

pub mod certified;
pub mod complex;
pub mod sparse;

pub use certified::{certified_rank, IntegerRows, RankCertificate};
pub use complex::{BasedSpace, BigradedComplex, Bidegree, Caps, IdentityViolation, SpectralPages};
pub use sparse::{Echelon, LinearSolver, SparseMatrix, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left:?} against {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("index ({row}, {col}) out of bounds")]
    IndexOutOfBounds { row: usize, col: usize },
    #[error("duplicate basis key")]
    DuplicateBasisKey,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("cap too small: degree {requested} needed, complete only through {complete_through}")]
    CapTooSmall { requested: i32, complete_through: i32 },
}
