//! Marked metric graphs: points of the simplicial completion of Outer space
//! with leaves, their equivalence, stars and stabilizers.

pub mod free_group;
pub mod io;
mod marking;
mod star;

pub use free_group::{basis_inverse, is_basis, simultaneous_conjugator, Word, WordError};
pub use marking::{
    collapse_forest_marked, equivalent_markings, equivalent_strict, identity_marked_rose,
    normalize_marked, project_to_link, standard_marking, Gauge, MarkedGraph,
};
pub use star::{blowups, canonical_marking, stabilizer, Stabilizer, StabilizerElement};

use thiserror::Error;

use crate::complex::ComplexError;
use crate::graph::{Edge, GraphError, VertexId};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum MarkedError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("marked graphs carry no vertex weights")]
    Weighted,
    #[error("edge lengths sum to {0}, expected 1")]
    LengthSum(String),
    #[error("zero-length loop {0}")]
    ZeroLoop(Edge),
    #[error("zero-length edges contain a cycle")]
    ZeroLengthCycle,
    #[error("edge {0} has zero length")]
    ZeroLengthEdge(Edge),
    #[error("edge {0} has positive length")]
    PositiveLength(Edge),
    #[error("tree is not a spanning tree")]
    NotSpanningTree,
    #[error("{0} is not an edge, or is a tree edge")]
    UnknownEdge(Edge),
    #[error("no word for non-tree edge {0}")]
    MissingWord(Edge),
    #[error("no leaf p{0} to carry a word")]
    UnknownLeaf(u32),
    #[error("base vertex {0} out of range")]
    BadBase(VertexId),
    #[error("loop words are not a basis of the free group")]
    NotABasis,
    #[error("marked graphs of different types {left:?} and {right:?}")]
    Mismatch { left: (u32, u32), right: (u32, u32) },
    #[error("{0}")]
    Format(String),
}
