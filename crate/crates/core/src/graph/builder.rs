use std::collections::BTreeMap;

use super::{Edge, Graph, HalfEdge, VertexId};
use crate::scalar::{Rational, Scalar};

/// Incremental construction of a [`Graph`], allocating half-edges in order.
///
/// An edge added with `edge(u, v)` gets half-edges `h` at `u` and `h + 1` at
/// `v`, so it is oriented from `u` to `v`.
#[derive(Clone, Debug)]
pub struct GraphBuilder<L = Rational> {
    vertices: Vec<Vec<HalfEdge>>,
    involution: Vec<HalfEdge>,
    leaves: BTreeMap<HalfEdge, u32>,
    weights: Vec<u32>,
    lengths: BTreeMap<Edge, L>,
}

impl<L: Scalar> Default for GraphBuilder<L> {
    fn default() -> Self {
        Self::new()
    }
}

impl<L: Scalar> GraphBuilder<L> {
    pub fn new() -> Self {
        GraphBuilder {
            vertices: Vec::new(),
            involution: Vec::new(),
            leaves: BTreeMap::new(),
            weights: Vec::new(),
            lengths: BTreeMap::new(),
        }
    }

    pub fn vertex(&mut self, weight: u32) -> VertexId {
        self.vertices.push(Vec::new());
        self.weights.push(weight);
        self.vertices.len() - 1
    }

    pub fn edge(&mut self, u: VertexId, v: VertexId) -> Edge {
        let h = self.involution.len();
        self.involution.push(h + 1);
        self.involution.push(h);
        self.vertices[u].push(h);
        self.vertices[v].push(h + 1);
        Edge::new(h, h + 1)
    }

    pub fn edge_with_length(&mut self, u: VertexId, v: VertexId, length: L) -> Edge {
        let e = self.edge(u, v);
        self.lengths.insert(e, length);
        e
    }

    pub fn leaf(&mut self, v: VertexId, label: u32) -> HalfEdge {
        let h = self.involution.len();
        self.involution.push(h);
        self.vertices[v].push(h);
        self.leaves.insert(h, label);
        h
    }

    /// The graph, with lengths attached iff at least one was given.
    pub fn build(self) -> Graph<L> {
        let g = Graph::<L>::from_parts(self.vertices, self.involution, self.leaves, self.weights);
        if self.lengths.is_empty() {
            g
        } else {
            g.with_lengths(self.lengths)
        }
    }

    /// The graph with the given lengths map, possibly empty.
    pub fn build_metric(self) -> Graph<L> {
        let lengths = self.lengths;
        Graph::<L>::from_parts(self.vertices, self.involution, self.leaves, self.weights)
            .with_lengths(lengths)
    }
}
