//! Stable graphs, the moduli space of tropical curves and marked graphs.
//!
//! * [`graph`]: half-edge graphs, contraction, canonical forms and
//!   enumeration of stable weighted graphs.
//! * [`complex`]: the cone complex of tropical curves, its link as a
//!   symmetric Δ-complex and rational homology of the link.
//! * [`marked`]: marked metric graphs (points of the simplicial completion of
//!   Outer space), their equivalence, stars and stabilizers.
//! * [`trop`]: dual graphs of curve systems and the logarithmic
//!   tropicalization map.

pub mod complex;
pub mod graph;
pub mod marked;
pub mod scalar;
pub mod trop;

pub use scalar::{Decimal, Field, Rational, Scalar};

/// Graph with exact rational edge lengths.
pub type MetricGraph = graph::Graph<Rational>;
/// Graph with decimal edge lengths.
pub type DecimalGraph = graph::Graph<Decimal>;
