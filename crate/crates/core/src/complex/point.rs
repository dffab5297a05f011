use super::ComplexError;
use crate::graph::{canonical_form, CanonicalGraph, Edge, Graph, GraphError};
use crate::scalar::{Rational, Scalar};

/// Whether to rescale lengths onto the link (total length one).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalizeMode {
    Cone,
    Link,
}

/// A tropical curve: a stable weighted graph in canonical form with strictly
/// positive edge lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TropicalPoint<L: Scalar = Rational> {
    graph: CanonicalGraph<L>,
}

impl<L: Scalar> TropicalPoint<L> {
    pub fn graph(&self) -> &CanonicalGraph<L> {
        &self.graph
    }

    pub fn length(&self, e: Edge) -> &L {
        self.graph.length(e).expect("points carry lengths")
    }

    pub fn total_length(&self) -> L {
        self.graph.total_length().unwrap_or_else(L::zero)
    }

    pub fn is_pure(&self) -> bool {
        self.graph.is_pure()
    }

    /// The underlying combinatorial type, i.e. the cone containing the point.
    pub fn cell(&self) -> CanonicalGraph {
        canonical_form(&self.graph.without_lengths::<Rational>()).0
    }
}

/// Contract every zero-length edge (loops add weight), canonicalize and, in
/// link mode, rescale so the lengths sum to one.
pub fn normalize_point<L: Scalar>(
    g: &Graph<L>,
    mode: NormalizeMode,
) -> Result<TropicalPoint<L>, ComplexError> {
    let lengths = g.lengths().ok_or(GraphError::MissingLengths)?;
    g.check()?;
    if !g.is_stable() {
        return Err(GraphError::Unstable.into());
    }
    let zeros: Vec<Edge> = lengths
        .iter()
        .filter(|(_, l)| l.is_zero())
        .map(|(e, _)| *e)
        .collect();
    let (mut contracted, _) = g.contract_edges(&zeros)?;
    if mode == NormalizeMode::Link {
        let total = contracted.total_length().unwrap_or_else(L::zero);
        if total.is_zero() {
            return Err(ComplexError::NoLinkRepresentative);
        }
        contracted = contracted.map_lengths(|_, l| l.clone() / total.clone());
    }
    Ok(TropicalPoint {
        graph: canonical_form(&contracted).0,
    })
}

/// True iff every vertex weight is zero.
pub fn is_pure<L: Scalar>(p: &TropicalPoint<L>) -> bool {
    p.is_pure()
}
