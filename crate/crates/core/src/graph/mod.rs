//! Finite connected graphs in the half-edge formalism.
//!
//! A graph is a set of half-edges `0..h`, a partition of that set into
//! vertices and an involution. Two-element orbits of the involution are
//! edges, fixed points are leaves and carry the labels `p_1..p_n`. Vertices
//! carry nonnegative integer weights; edges may carry lengths.
//!
//! Values of [`Graph`] are not validated on construction so that malformed
//! input can be inspected with [`Graph::validate`]. Every other operation
//! assumes a valid graph.

mod builder;
mod canon;
mod contract;
mod enumerate;
pub mod io;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::{Rational, Scalar};

pub use builder::GraphBuilder;
pub use canon::{
    permutation_sign, are_isomorphic, automorphisms, canonical_form, isomorphisms, AutomorphismGroup,
    CanonicalGraph, GraphIso,
};
pub use enumerate::{enumerate_stable_graphs, enumerate_stable_graphs_with, EnumerationLimits};

pub type HalfEdge = usize;
pub type VertexId = usize;

/// An edge, identified by its two half-edges with `lo < hi`.
///
/// The edge is oriented from the vertex of `lo` to the vertex of `hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    lo: HalfEdge,
    hi: HalfEdge,
}

impl Edge {
    pub fn new(a: HalfEdge, b: HalfEdge) -> Self {
        if a <= b {
            Edge { lo: a, hi: b }
        } else {
            Edge { lo: b, hi: a }
        }
    }

    pub fn lo(&self) -> HalfEdge {
        self.lo
    }

    pub fn hi(&self) -> HalfEdge {
        self.hi
    }

    pub fn contains(&self, h: HalfEdge) -> bool {
        self.lo == h || self.hi == h
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.lo, self.hi)
    }
}

/// A failed structural invariant, as reported by [`Graph::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    WeightCount { vertices: usize, weights: usize },
    HalfEdgeOutOfRange(HalfEdge),
    MissingFromPartition(HalfEdge),
    DuplicateInPartition(HalfEdge),
    NotInvolution(HalfEdge),
    UnlabeledLeaf(HalfEdge),
    LabeledNonLeaf(HalfEdge),
    DuplicateLeafLabel(u32),
    MissingLeafLabel(u32),
    LeafLabelOutOfRange(u32),
    EmptyVertex(VertexId),
    Disconnected,
    MissingLength(Edge),
    LengthOnLeaf(HalfEdge),
    NegativeLength(Edge),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WeightCount { vertices, weights } => {
                write!(f, "{weights} weights given for {vertices} vertices")
            }
            Violation::HalfEdgeOutOfRange(h) => write!(f, "half-edge {h} out of range"),
            Violation::MissingFromPartition(h) => write!(f, "half-edge {h} is in no vertex"),
            Violation::DuplicateInPartition(h) => {
                write!(f, "half-edge {h} is in more than one vertex")
            }
            Violation::NotInvolution(h) => write!(f, "involution is not an involution at {h}"),
            Violation::UnlabeledLeaf(h) => write!(f, "unlabeled leaf {h}"),
            Violation::LabeledNonLeaf(h) => write!(f, "half-edge {h} is labeled but not a leaf"),
            Violation::DuplicateLeafLabel(k) => write!(f, "duplicate leaf label p{k}"),
            Violation::MissingLeafLabel(k) => write!(f, "leaf label p{k} is not used"),
            Violation::LeafLabelOutOfRange(k) => write!(f, "leaf label p{k} is out of range"),
            Violation::EmptyVertex(v) => write!(f, "vertex {v} has no half-edges"),
            Violation::Disconnected => write!(f, "graph is disconnected"),
            Violation::MissingLength(e) => write!(f, "edge {e} has no length"),
            Violation::LengthOnLeaf(h) => write!(f, "leaf {h} carries a length"),
            Violation::NegativeLength(e) => write!(f, "edge {e} has negative length"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid graph: {}", first(.0))]
    Invalid(Vec<Violation>),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("not contractible: half-edge {0} is not part of an edge")]
    NotContractible(HalfEdge),
    #[error("not a forest: edge {0} is a loop when contracted")]
    NotAForest(Edge),
    #[error("unstable range: 2g-2+n <= 0 for (g,n) = ({g},{n})")]
    UnstableRange { g: u32, n: u32 },
    #[error("resource bound exceeded: more than {0} cells")]
    ResourceBound(usize),
    #[error("graph is not stable")]
    Unstable,
    #[error("graph has no edge lengths")]
    MissingLengths,
}

fn first(v: &[Violation]) -> String {
    v.first().map(|x| x.to_string()).unwrap_or_default()
}

/// Check that `(g, n)` lies in the stable range `2g - 2 + n > 0`.
pub fn check_stable_range(g: u32, n: u32) -> Result<(), GraphError> {
    if 2 * g as i64 - 2 + n as i64 > 0 {
        Ok(())
    } else {
        Err(GraphError::UnstableRange { g, n })
    }
}

/// A graph with vertex weights and optional edge lengths of type `L`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph<L = Rational> {
    pub(crate) vertices: Vec<Vec<HalfEdge>>,
    pub(crate) involution: Vec<HalfEdge>,
    pub(crate) leaves: BTreeMap<HalfEdge, u32>,
    pub(crate) weights: Vec<u32>,
    pub(crate) lengths: Option<BTreeMap<Edge, L>>,
}

impl<L: Scalar> Graph<L> {
    /// Assemble a graph from raw parts without checking anything.
    ///
    /// `leaves` maps a half-edge to the index `k` of its label `p_k`.
    pub fn from_parts(
        vertices: Vec<Vec<HalfEdge>>,
        involution: Vec<HalfEdge>,
        leaves: BTreeMap<HalfEdge, u32>,
        weights: Vec<u32>,
    ) -> Self {
        Graph {
            vertices,
            involution,
            leaves,
            weights,
            lengths: None,
        }
    }

    pub fn with_lengths<M: Scalar>(self, lengths: BTreeMap<Edge, M>) -> Graph<M> {
        Graph {
            vertices: self.vertices,
            involution: self.involution,
            leaves: self.leaves,
            weights: self.weights,
            lengths: Some(lengths),
        }
    }

    /// The same combinatorial graph with lengths dropped.
    pub fn without_lengths<M: Scalar>(&self) -> Graph<M> {
        Graph {
            vertices: self.vertices.clone(),
            involution: self.involution.clone(),
            leaves: self.leaves.clone(),
            weights: self.weights.clone(),
            lengths: None,
        }
    }

    pub fn map_lengths<M: Scalar>(&self, mut f: impl FnMut(Edge, &L) -> M) -> Graph<M> {
        Graph {
            vertices: self.vertices.clone(),
            involution: self.involution.clone(),
            leaves: self.leaves.clone(),
            weights: self.weights.clone(),
            lengths: self
                .lengths
                .as_ref()
                .map(|ls| ls.iter().map(|(e, l)| (*e, f(*e, l))).collect()),
        }
    }

    pub fn num_half_edges(&self) -> usize {
        self.involution.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vec<HalfEdge>] {
        &self.vertices
    }

    pub fn vertex(&self, v: VertexId) -> &[HalfEdge] {
        &self.vertices[v]
    }

    pub fn involution(&self) -> &[HalfEdge] {
        &self.involution
    }

    pub fn partner(&self, h: HalfEdge) -> HalfEdge {
        self.involution[h]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, v: VertexId) -> u32 {
        self.weights[v]
    }

    pub fn total_weight(&self) -> u32 {
        self.weights.iter().sum()
    }

    pub fn valence(&self, v: VertexId) -> usize {
        self.vertices[v].len()
    }

    pub fn is_leaf(&self, h: HalfEdge) -> bool {
        self.involution[h] == h
    }

    pub fn leaf_label(&self, h: HalfEdge) -> Option<u32> {
        self.leaves.get(&h).copied()
    }

    /// Leaves as `(half-edge, label index)`.
    pub fn leaves(&self) -> impl Iterator<Item = (HalfEdge, u32)> + '_ {
        self.leaves.iter().map(|(h, k)| (*h, *k))
    }

    pub fn num_leaves(&self) -> usize {
        self.leaves.len()
    }

    /// The half-edge carrying label `p_k`.
    pub fn leaf_with_label(&self, k: u32) -> Option<HalfEdge> {
        self.leaves.iter().find(|(_, l)| **l == k).map(|(h, _)| *h)
    }

    /// Edges in increasing order of their smaller half-edge.
    pub fn edges(&self) -> Vec<Edge> {
        (0..self.involution.len())
            .filter(|&h| self.involution[h] > h)
            .map(|h| Edge::new(h, self.involution[h]))
            .collect()
    }

    pub fn num_edges(&self) -> usize {
        (0..self.involution.len())
            .filter(|&h| self.involution[h] > h)
            .count()
    }

    pub fn is_edge(&self, e: Edge) -> bool {
        e.lo != e.hi && e.hi < self.involution.len() && self.involution[e.lo] == e.hi
    }

    pub fn lengths(&self) -> Option<&BTreeMap<Edge, L>> {
        self.lengths.as_ref()
    }

    pub fn length(&self, e: Edge) -> Option<&L> {
        self.lengths.as_ref().and_then(|m| m.get(&e))
    }

    pub fn total_length(&self) -> Option<L> {
        self.lengths
            .as_ref()
            .map(|m| m.values().fold(L::zero(), |acc, l| acc + l.clone()))
    }

    /// Vertex index of every half-edge.
    pub fn vertex_map(&self) -> Vec<VertexId> {
        let mut map = vec![usize::MAX; self.involution.len()];
        for (v, part) in self.vertices.iter().enumerate() {
            for &h in part {
                if h < map.len() {
                    map[h] = v;
                }
            }
        }
        map
    }

    /// The vertices of `lo` and `hi`, in that order.
    pub fn endpoints(&self, e: Edge) -> (VertexId, VertexId) {
        let vm = self.vertex_map();
        (vm[e.lo], vm[e.hi])
    }

    pub fn is_loop(&self, e: Edge) -> bool {
        let (a, b) = self.endpoints(e);
        a == b
    }

    /// All invariant violations, in a fixed order. Empty iff the graph is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let h = self.involution.len();
        if self.weights.len() != self.vertices.len() {
            out.push(Violation::WeightCount {
                vertices: self.vertices.len(),
                weights: self.weights.len(),
            });
        }
        let mut seen = vec![0usize; h];
        for part in &self.vertices {
            for &x in part {
                if x >= h {
                    out.push(Violation::HalfEdgeOutOfRange(x));
                } else {
                    seen[x] += 1;
                }
            }
        }
        for (x, &count) in seen.iter().enumerate() {
            if count == 0 {
                out.push(Violation::MissingFromPartition(x));
            } else if count > 1 {
                out.push(Violation::DuplicateInPartition(x));
            }
        }
        for (x, &y) in self.involution.iter().enumerate() {
            if y >= h {
                out.push(Violation::HalfEdgeOutOfRange(y));
            } else if self.involution[y] != x {
                out.push(Violation::NotInvolution(x));
            }
        }
        let structural_ok = out.is_empty();

        let mut label_uses: BTreeMap<u32, usize> = BTreeMap::new();
        for (&x, &k) in &self.leaves {
            if x >= h {
                out.push(Violation::HalfEdgeOutOfRange(x));
                continue;
            }
            if self.involution[x] != x {
                out.push(Violation::LabeledNonLeaf(x));
            }
            *label_uses.entry(k).or_default() += 1;
        }
        for x in 0..h {
            if self.involution[x] == x && !self.leaves.contains_key(&x) {
                out.push(Violation::UnlabeledLeaf(x));
            }
        }
        for (&k, &uses) in &label_uses {
            if uses > 1 {
                out.push(Violation::DuplicateLeafLabel(k));
            }
        }
        let num_fixed = (0..h).filter(|&x| self.involution[x] == x).count() as u32;
        for k in 1..=num_fixed {
            if !label_uses.contains_key(&k) {
                out.push(Violation::MissingLeafLabel(k));
            }
        }
        for &k in label_uses.keys() {
            if k == 0 || k > num_fixed {
                out.push(Violation::LeafLabelOutOfRange(k));
            }
        }

        if self.vertices.len() > 1 {
            for (v, part) in self.vertices.iter().enumerate() {
                if part.is_empty() {
                    out.push(Violation::EmptyVertex(v));
                }
            }
        }
        if self.vertices.is_empty() || (structural_ok && !self.connected_unchecked()) {
            out.push(Violation::Disconnected);
        }

        if let (Some(lengths), true) = (&self.lengths, structural_ok) {
            for e in self.edges() {
                match lengths.get(&e) {
                    None => out.push(Violation::MissingLength(e)),
                    Some(l) if *l < L::zero() => out.push(Violation::NegativeLength(e)),
                    _ => {}
                }
            }
            for e in lengths.keys() {
                if !self.is_edge(*e) {
                    out.push(Violation::LengthOnLeaf(e.lo));
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Return `Err` with all violations unless the graph is valid.
    pub fn check(&self) -> Result<(), GraphError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(GraphError::Invalid(v))
        }
    }

    fn connected_unchecked(&self) -> bool {
        let nv = self.vertices.len();
        if nv == 0 {
            return false;
        }
        let vm = self.vertex_map();
        let mut seen = vec![false; nv];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &x in &self.vertices[v] {
                let w = vm[self.involution[x]];
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_unchecked()
    }

    /// First Betti number `|E| - |V| + 1`.
    pub fn betti_number(&self) -> Result<usize, GraphError> {
        if !self.connected_unchecked() {
            return Err(GraphError::Disconnected);
        }
        Ok(self.num_edges() + 1 - self.num_vertices())
    }

    /// Sum of the vertex weights plus the first Betti number.
    pub fn genus(&self) -> Result<u32, GraphError> {
        Ok(self.total_weight() + self.betti_number()? as u32)
    }

    /// Weight-zero vertices have valence at least 3 and weight-one vertices
    /// valence at least 1. Leaves count towards valence.
    pub fn is_stable(&self) -> bool {
        self.vertices
            .iter()
            .zip(&self.weights)
            .all(|(part, &w)| match w {
                0 => part.len() >= 3,
                1 => !part.is_empty(),
                _ => true,
            })
    }

    pub fn is_pure(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    /// Relabel half-edges by `map` (old to new), renumbering vertices by
    /// their smallest new half-edge. Empty vertices go last.
    pub fn relabel(&self, map: &[HalfEdge]) -> Graph<L> {
        let h = self.involution.len();
        let mut involution = vec![0; h];
        for x in 0..h {
            involution[map[x]] = map[self.involution[x]];
        }
        let mut parts: Vec<(Vec<HalfEdge>, u32)> = self
            .vertices
            .iter()
            .zip(&self.weights)
            .map(|(part, &w)| {
                let mut p: Vec<HalfEdge> = part.iter().map(|&x| map[x]).collect();
                p.sort_unstable();
                (p, w)
            })
            .collect();
        parts.sort_by(|a, b| match (a.0.first(), b.0.first()) {
            (Some(x), Some(y)) => x.cmp(y),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => a.1.cmp(&b.1),
        });
        let (vertices, weights) = parts.into_iter().unzip();
        Graph {
            vertices,
            involution,
            leaves: self.leaves.iter().map(|(x, k)| (map[*x], *k)).collect(),
            weights,
            lengths: self.lengths.as_ref().map(|ls| {
                ls.iter()
                    .map(|(e, l)| (Edge::new(map[e.lo], map[e.hi]), l.clone()))
                    .collect()
            }),
        }
    }
}
