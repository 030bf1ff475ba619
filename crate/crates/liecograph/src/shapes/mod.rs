//! Combinatorial carriers: S-graphs and planar binary trees.
//!
//! Vertices and leaf labels are 0-based in the API; textual forms print them
//! 1-based.

pub mod graph;
pub mod perm;
pub mod tree;

pub use graph::{
    acc_coaction, asc_coaction, enumerate_graphs, enumerate_graphs_with_cap, enumerate_quotients, validate_graph,
    CoactionTerm, Contraction, CutEdge, GraphQuotient, SGraph,
};
pub use tree::{enumerate_trees, enumerate_trees_with_cap, tree_shapes, Nested, PlanarTree};

/// Largest weight enumerated by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("graph is not connected: vertex {vertex} unreachable")]
    NotConnected { vertex: usize },
    #[error("graph has a cycle through edge {edge:?}")]
    HasCycle { edge: (usize, usize) },
    #[error("bad vertex index {vertex}")]
    BadVertexIndex { vertex: usize },
    #[error("duplicate edge {edge:?}")]
    DuplicateEdge { edge: (usize, usize) },
    #[error("bad edge index {index}")]
    BadEdgeIndex { index: usize },
    #[error("leaf labels are not a permutation")]
    BadLeafLabels,
    #[error("weight {requested} exceeds the enumeration cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("cannot form a quotient with {size} vertices from weight {weight}")]
    BadQuotientSize { size: usize, weight: usize },
}
