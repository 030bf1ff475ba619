//! Bar and cobar functors between cochain algebras, graph and Lie
//! coalgebras, and Lie algebras, realised as truncated bigraded complexes.
//!
//! | functor | input | degree step | weight step |
//! |---------|-------|-------------|-------------|
//! | 𝒢, ℰ    | cochain algebra | +1 | −1 (edge contraction) |
//! | 𝒜̂      | Lie coalgebra   | +1 | +1 (cobracket) |
//! | ℒ       | cocommutative coalgebra | −1 | +1 (coproduct) |
//! | 𝒞       | Lie algebra     | −1 | −1 (bracket) |
//!
//! In every bundle the vertical differential comes from the input's own
//! differential and the horizontal one from its product structure.

mod algebra;
mod checks;
mod coalgebra;
mod format;
mod graphs;
mod harrison;
mod homotopy;
mod lie;
mod words;

use alloc::string::String;
use alloc::vec::Vec;

pub use algebra::{DgcaBuilder, DgcaPresentation, Generator, Monomial, Polynomial};
pub use checks::{
    canonical_twisting, check_duality, check_twisting, DualityReport, DualityViolation, TwistingFunction,
    TwistingOutcome,
};
pub use coalgebra::{Cogenerator, DgccPresentation};
pub use format::{parse_dgca, parse_dgcc, parse_polynomial, FormatError};
pub use graphs::{build_e, build_g, SlotAlgebra};
pub use harrison::harrison_shuffle_model;
pub use homotopy::{homology_by_degree, homotopy_spectral_sequence, rational_homotopy};
pub use lie::{build_l, DgLieAlgebra};
pub use words::{build_a_hat, build_c, DgLieCoalgebra, SymWord};

use crate::graphcoalg::GraphCoalgError;
use crate::liealg::LieError;
use crate::linalg::{BigradedComplex, ComplexError, LinalgError};
use crate::shapes::ShapeError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FunctorError {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("generator `{name}` has degree {degree}; inputs must be simply connected")]
    NotSimplyConnected { name: String, degree: i32 },
    #[error("cap too small: degree {requested} needed, complete only through {complete_through}")]
    CapTooSmall { requested: i32, complete_through: i32 },
    #[error("not dual: {0}")]
    NotDual(String),
    #[error("map has degree {found} on {element}, expected {expected}")]
    DegreeMismatch { element: String, expected: i32, found: i32 },
    #[error(transparent)]
    Graph(#[from] GraphCoalgError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl From<ComplexError> for FunctorError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::CapTooSmall { requested, complete_through } => {
                FunctorError::CapTooSmall { requested, complete_through }
            }
        }
    }
}

/// Requested truncation: largest weight and largest degree built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub max_weight: usize,
    pub max_degree: i32,
}

impl Truncation {
    pub const DEFAULT: Truncation = Truncation { max_weight: 5, max_degree: 12 };

    pub fn new(max_weight: usize, max_degree: i32) -> Self {
        Truncation { max_weight, max_degree }
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Degrees in which a truncation holds every piece: a weight `w` element has
/// degree at least `w·min_degree`, so degree `d` is whole once
/// `d < (max_weight + 1)·min_degree`.
pub(crate) fn complete_through(t: Truncation, min_degree: Option<i32>) -> i32 {
    match min_degree {
        Some(m) if m > 0 => t.max_degree.min((t.max_weight as i32 + 1) * m - 1),
        _ => t.max_degree,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FunctorKind {
    EOfA,
    GOfA,
    AOfE,
    LOfC,
    COfL,
    Harrison,
}

/// A functor's output: the truncated bicomplex, the names of the slots its
/// keys refer to, and the truncation that produced it.
#[derive(Clone, Debug)]
pub struct DgComplexBundle<K> {
    pub kind: FunctorKind,
    pub complex: BigradedComplex<K>,
    /// Name of the slot with identifier `i`.
    pub slot_names: Vec<String>,
    pub truncation: Truncation,
}

impl<K: Ord + Clone> DgComplexBundle<K> {
    /// All basis keys with their bidegrees, in piece order.
    pub fn keys(&self) -> Vec<(crate::linalg::Bidegree, K)> {
        self.complex
            .pieces()
            .flat_map(|(b, p)| p.keys().iter().map(move |k| (*b, k.clone())))
            .collect()
    }

    pub fn slot_name(&self, id: u32) -> String {
        self.slot_names.get(id as usize).cloned().unwrap_or_else(|| alloc::format!("#{id}"))
    }
}
