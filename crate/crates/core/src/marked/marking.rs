//! Marked metric graphs.
//!
//! A marking is stored through a homotopy inverse `ψ: G -> R` to the thorned
//! rose: every oriented edge (from the vertex of its `lo` half-edge to that
//! of its `hi` half-edge) is sent to a word, and every leaf `p_k` to a word
//! `ℓ_k` describing the path from the image of its vertex to the rose's
//! basepoint. Homotopies act by a gauge `c_v` per vertex:
//! `ψ(e) -> c_s⁻¹ ψ(e) c_t` and `ℓ_k -> c_v⁻¹ ℓ_k`.
//!
//! The stored form is normalized with respect to a spanning tree: tree edges
//! map to the identity, and when `n ≥ 1` also `ℓ_1 = 1`, which leaves no gauge
//! freedom. With `n = 0` a base vertex is fixed and the data is determined up
//! to one global conjugation.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::free_group::{basis_inverse, simultaneous_conjugator, Word};
use super::MarkedError;
use crate::complex::{normalize_point, NormalizeMode, TropicalPoint};
use crate::graph::{isomorphisms, Edge, Graph, GraphBuilder, GraphIso, VertexId};
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedGraph {
    pub(crate) graph: Graph<Rational>,
    pub(crate) tree: BTreeSet<Edge>,
    /// Words of the non-tree edges.
    pub(crate) words: BTreeMap<Edge, Word>,
    /// `ℓ_k` for `k ≥ 2` (every leaf when `n = 0`, i.e. none).
    pub(crate) leaf_words: BTreeMap<u32, Word>,
    pub(crate) base: VertexId,
}

/// An unnormalized homotopy inverse: a word for every edge and every leaf.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Gauge {
    pub edges: BTreeMap<Edge, Word>,
    pub leaves: BTreeMap<u32, Word>,
}

impl Gauge {
    fn edge(&self, e: Edge) -> Word {
        self.edges.get(&e).cloned().unwrap_or_default()
    }

    fn leaf(&self, k: u32) -> Word {
        self.leaves.get(&k).cloned().unwrap_or_default()
    }
}

pub(crate) struct UnionFind(Vec<usize>);

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    /// False if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

fn base_vertex(g: &Graph<Rational>, base: VertexId) -> VertexId {
    match g.leaf_with_label(1) {
        Some(h) => g.vertex_map()[h],
        None => base,
    }
}

/// Tree-normalizes `gauge`: returns the non-tree edge words and `ℓ_k` for
/// `k ≥ 2`.
fn normalize(
    g: &Graph<Rational>,
    tree: &BTreeSet<Edge>,
    base: VertexId,
    gauge: &Gauge,
) -> (BTreeMap<Edge, Word>, BTreeMap<u32, Word>) {
    let vm = g.vertex_map();
    let mut path: Vec<Option<Word>> = vec![None; g.num_vertices()];
    path[base] = Some(Word::identity());
    let mut stack = vec![base];
    while let Some(u) = stack.pop() {
        for e in tree {
            let (s, t) = (vm[e.lo()], vm[e.hi()]);
            let pu = path[u].clone().unwrap();
            if s == u && path[t].is_none() {
                path[t] = Some(pu.mul(&gauge.edge(*e)));
                stack.push(t);
            } else if t == u && path[s].is_none() {
                path[s] = Some(pu.mul(&gauge.edge(*e).inverse()));
                stack.push(s);
            }
        }
    }
    let shift = if g.num_leaves() > 0 {
        gauge.leaf(1).inverse()
    } else {
        Word::identity()
    };
    let pre: Vec<Word> = path
        .into_iter()
        .map(|p| shift.mul(&p.expect("tree spans")))
        .collect();
    let words = g
        .edges()
        .into_iter()
        .filter(|e| !tree.contains(e))
        .map(|e| {
            let w = pre[vm[e.lo()]]
                .mul(&gauge.edge(e))
                .mul(&pre[vm[e.hi()]].inverse());
            (e, w)
        })
        .collect();
    let leaves = g
        .leaves()
        .filter(|&(_, k)| k >= 2)
        .map(|(h, k)| (k, pre[vm[h]].mul(&gauge.leaf(k))))
        .collect();
    (words, leaves)
}

impl MarkedGraph {
    /// Builds and validates a marking given in tree-normalized form. Missing
    /// leaf words default to the identity.
    pub fn new(
        graph: Graph<Rational>,
        tree: BTreeSet<Edge>,
        words: BTreeMap<Edge, Word>,
        mut leaf_words: BTreeMap<u32, Word>,
        base: VertexId,
    ) -> Result<Self, MarkedError> {
        check_graph(&graph)?;
        check_tree(&graph, &tree)?;
        for (h, k) in graph.leaves() {
            let _ = h;
            if k >= 2 {
                leaf_words.entry(k).or_default();
            }
        }
        if let Some(&k) = leaf_words.keys().find(|&&k| k < 2 || graph.leaf_with_label(k).is_none()) {
            return Err(MarkedError::UnknownLeaf(k));
        }
        if base >= graph.num_vertices() {
            return Err(MarkedError::BadBase(base));
        }
        let base = base_vertex(&graph, base);
        let m = MarkedGraph {
            graph,
            tree,
            words,
            leaf_words,
            base,
        };
        m.check_words()?;
        Ok(m)
    }

    /// Normalizes an arbitrary homotopy inverse with respect to `tree`.
    pub fn from_gauge(
        graph: Graph<Rational>,
        tree: BTreeSet<Edge>,
        base: VertexId,
        gauge: &Gauge,
    ) -> Result<Self, MarkedError> {
        check_graph(&graph)?;
        check_tree(&graph, &tree)?;
        if base >= graph.num_vertices() {
            return Err(MarkedError::BadBase(base));
        }
        let base = base_vertex(&graph, base);
        for k in gauge.leaves.keys() {
            if graph.leaf_with_label(*k).is_none() {
                return Err(MarkedError::UnknownLeaf(*k));
            }
        }
        for e in gauge.edges.keys() {
            if !graph.is_edge(*e) {
                return Err(MarkedError::UnknownEdge(*e));
            }
        }
        let (words, leaf_words) = normalize(&graph, &tree, base, gauge);
        MarkedGraph::new(graph, tree, words, leaf_words, base)
    }

    pub fn graph(&self) -> &Graph<Rational> {
        &self.graph
    }

    pub fn tree(&self) -> &BTreeSet<Edge> {
        &self.tree
    }

    pub fn words(&self) -> &BTreeMap<Edge, Word> {
        &self.words
    }

    /// Word of edge `e` read from its `lo` end; identity on tree edges.
    pub fn word(&self, e: Edge) -> Word {
        self.words.get(&e).cloned().unwrap_or_default()
    }

    pub fn leaf_words(&self) -> &BTreeMap<u32, Word> {
        &self.leaf_words
    }

    pub fn base(&self) -> VertexId {
        self.base
    }

    pub fn genus(&self) -> u32 {
        self.graph.betti_number().unwrap_or(0) as u32
    }

    pub fn num_leaves(&self) -> u32 {
        self.graph.num_leaves() as u32
    }

    /// The homotopy inverse with every edge and leaf listed.
    pub fn gauge(&self) -> Gauge {
        let mut edges: BTreeMap<Edge, Word> =
            self.graph.edges().into_iter().map(|e| (e, Word::identity())).collect();
        edges.extend(self.words.iter().map(|(e, w)| (*e, w.clone())));
        let mut leaves = self.leaf_words.clone();
        if self.graph.num_leaves() > 0 {
            leaves.insert(1, Word::identity());
        }
        Gauge { edges, leaves }
    }

    /// Non-tree edges in order, with their words.
    pub fn loop_words(&self) -> Vec<Word> {
        self.words.values().cloned().collect()
    }

    /// Each generator `a_j` as a word in the loop words, indexed like
    /// [`loop_words`](Self::loop_words).
    pub fn inverse_words(&self) -> Vec<Word> {
        basis_inverse(&self.loop_words(), self.genus()).expect("validated marking")
    }

    fn check_words(&self) -> Result<(), MarkedError> {
        for e in self.graph.edges() {
            if !self.tree.contains(&e) && !self.words.contains_key(&e) {
                return Err(MarkedError::MissingWord(e));
            }
        }
        if let Some(e) = self.words.keys().find(|e| self.tree.contains(e) || !self.graph.is_edge(**e)) {
            return Err(MarkedError::UnknownEdge(*e));
        }
        let g = self.genus();
        if self.leaf_words.values().any(|w| w.rank_used() > g) {
            return Err(MarkedError::NotABasis);
        }
        if basis_inverse(&self.loop_words(), g).is_none() {
            return Err(MarkedError::NotABasis);
        }
        Ok(())
    }

    /// Re-expresses the marking through an isomorphism `φ` onto the graph
    /// `φ(G)`, so that `ψ' = ψ ∘ φ⁻¹`.
    pub fn transport(&self, iso: &GraphIso) -> MarkedGraph {
        let graph = self.graph.relabel(iso.as_slice());
        let mut gauge = Gauge {
            edges: BTreeMap::new(),
            leaves: self.gauge().leaves,
        };
        for (e, w) in self.gauge().edges {
            let f = iso.edge(e);
            let w = if iso.apply(e.lo()) == f.lo() { w } else { w.inverse() };
            gauge.edges.insert(f, w);
        }
        let tree = self.tree.iter().map(|e| iso.edge(*e)).collect();
        let h = self.graph.vertex(self.base)[0];
        let base = graph.vertex_map()[iso.apply(h)];
        MarkedGraph::from_gauge(graph, tree, base, &gauge).expect("isomorphic image is valid")
    }

    /// The same marking with new edge lengths, e.g. to move a blow-up off
    /// its zero-length face into the open cell.
    pub fn with_lengths(&self, lengths: BTreeMap<Edge, Rational>) -> Result<MarkedGraph, MarkedError> {
        let graph = self.graph.without_lengths::<Rational>().with_lengths(lengths);
        MarkedGraph::from_gauge(graph, self.tree.clone(), self.base, &self.gauge())
    }

    /// Post-composes the marking with the automorphism `a_j -> images[j-1]`
    /// of the free group.
    pub fn apply_automorphism(&self, images: &[Word]) -> Result<MarkedGraph, MarkedError> {
        if images.len() != self.genus() as usize {
            return Err(MarkedError::NotABasis);
        }
        let words = self.words.iter().map(|(e, w)| (*e, w.substitute(images))).collect();
        let leaves = self.leaf_words.iter().map(|(k, w)| (*k, w.substitute(images))).collect();
        MarkedGraph::new(self.graph.clone(), self.tree.clone(), words, leaves, self.base)
    }

    /// `ψ ∘ φ` as a gauge on `from`, for an isomorphism `φ: from -> self.graph`.
    fn pullback(&self, iso: &GraphIso, from: &Graph<Rational>) -> Gauge {
        let mine = self.gauge();
        let mut edges = BTreeMap::new();
        for e in from.edges() {
            let f = iso.edge(e);
            let w = mine.edges[&f].clone();
            edges.insert(e, if iso.apply(e.lo()) == f.lo() { w } else { w.inverse() });
        }
        Gauge {
            edges,
            leaves: mine.leaves,
        }
    }

    /// Words of `other ∘ φ` normalized against this marking's tree.
    pub(crate) fn pulled_back(&self, other: &MarkedGraph, iso: &GraphIso) -> (BTreeMap<Edge, Word>, BTreeMap<u32, Word>) {
        normalize(&self.graph, &self.tree, self.base, &other.pullback(iso, &self.graph))
    }
}

fn check_graph(g: &Graph<Rational>) -> Result<(), MarkedError> {
    g.check()?;
    if !g.is_pure() {
        return Err(MarkedError::Weighted);
    }
    if !g.is_stable() {
        return Err(crate::graph::GraphError::Unstable.into());
    }
    let lengths = g.lengths().ok_or(crate::graph::GraphError::MissingLengths)?;
    for (e, l) in lengths {
        if l.is_zero() && g.is_loop(*e) {
            return Err(MarkedError::ZeroLoop(*e));
        }
    }
    let total = g.total_length().unwrap();
    if g.num_edges() > 0 && !total.is_one() {
        return Err(MarkedError::LengthSum(total.to_string()));
    }
    Ok(())
}

fn check_tree(g: &Graph<Rational>, tree: &BTreeSet<Edge>) -> Result<(), MarkedError> {
    let mut uf = UnionFind::new(g.num_vertices());
    for e in tree {
        if !g.is_edge(*e) {
            return Err(MarkedError::UnknownEdge(*e));
        }
        let (a, b) = g.endpoints(*e);
        if !uf.union(a, b) {
            return Err(MarkedError::NotSpanningTree);
        }
    }
    if tree.len() + 1 != g.num_vertices() {
        return Err(MarkedError::NotSpanningTree);
    }
    Ok(())
}

/// Some spanning tree, grown from `first`, then `prefer`, then any edge.
pub(crate) fn spanning_tree(g: &Graph<Rational>, first: &[Edge], prefer: &[Edge]) -> Option<BTreeSet<Edge>> {
    let mut uf = UnionFind::new(g.num_vertices());
    let mut tree = BTreeSet::new();
    for (i, e) in first.iter().chain(prefer).chain(g.edges().iter()).enumerate() {
        let (a, b) = g.endpoints(*e);
        if uf.union(a, b) {
            tree.insert(*e);
        } else if i < first.len() {
            return None;
        }
    }
    Some(tree)
}

/// The thorned rose with loop `i` marked `a_i`, trivial leaf words and equal
/// lengths.
pub fn identity_marked_rose(g: u32, n: u32) -> Result<MarkedGraph, MarkedError> {
    crate::graph::check_stable_range(g, n)?;
    let mut b = GraphBuilder::<Rational>::new();
    let v = b.vertex(0);
    for _ in 0..g {
        b.edge_with_length(v, v, Rational::new(1.into(), (g as i64).into()));
    }
    for k in 1..=n {
        b.leaf(v, k);
    }
    let mut graph = b.build();
    if g == 0 {
        graph = graph.with_lengths(BTreeMap::new());
    }
    let words = graph
        .edges()
        .into_iter()
        .enumerate()
        .map(|(i, e)| (e, Word::generator(i as u32 + 1)))
        .collect();
    MarkedGraph::new(graph, BTreeSet::new(), words, BTreeMap::new(), 0)
}

/// Marks a weight-zero metric graph by a spanning tree, labeling the
/// non-tree edges `a_1, a_2, ...` in order.
pub fn standard_marking(graph: Graph<Rational>) -> Result<MarkedGraph, MarkedError> {
    check_graph(&graph)?;
    let tree = spanning_tree(&graph, &[], &[]).expect("connected graph");
    let words = graph
        .edges()
        .into_iter()
        .filter(|e| !tree.contains(e))
        .enumerate()
        .map(|(i, e)| (e, Word::generator(i as u32 + 1)))
        .collect();
    MarkedGraph::new(graph, tree, words, BTreeMap::new(), 0)
}

/// Equivalence with lengths compared as values, zero included.
pub fn equivalent_strict(m1: &MarkedGraph, m2: &MarkedGraph) -> Option<GraphIso> {
    if m1.graph.num_half_edges() != m2.graph.num_half_edges() || m1.num_leaves() != m2.num_leaves() {
        return None;
    }
    for iso in isomorphisms(&m1.graph, &m2.graph, true) {
        let (words, leaves) = m1.pulled_back(m2, &iso);
        let same = if m1.num_leaves() > 0 {
            words == m1.words && leaves == m1.leaf_words
        } else {
            let pairs: Vec<(Word, Word)> = m1
                .words
                .iter()
                .map(|(e, w)| (w.clone(), words[e].clone()))
                .collect();
            simultaneous_conjugator(&pairs).is_some()
        };
        if same {
            return Some(iso);
        }
    }
    None
}

/// Whether two marked graphs are the same point. Zero-length edges are
/// collapsed first; the isomorphism returned is between the collapsed graphs.
pub fn equivalent_markings(m1: &MarkedGraph, m2: &MarkedGraph) -> Result<Option<GraphIso>, MarkedError> {
    if (m1.genus(), m1.num_leaves()) != (m2.genus(), m2.num_leaves()) {
        return Err(MarkedError::Mismatch {
            left: (m1.genus(), m1.num_leaves()),
            right: (m2.genus(), m2.num_leaves()),
        });
    }
    let a = normalize_marked(m1)?;
    let b = normalize_marked(m2)?;
    Ok(equivalent_strict(&a, &b))
}

/// Collapses all zero-length edges, which must form a forest.
pub fn normalize_marked(m: &MarkedGraph) -> Result<MarkedGraph, MarkedError> {
    let zeros: Vec<Edge> = m
        .graph
        .lengths()
        .unwrap()
        .iter()
        .filter(|(_, l)| l.is_zero())
        .map(|(e, _)| *e)
        .collect();
    let mut uf = UnionFind::new(m.graph.num_vertices());
    for e in &zeros {
        let (a, b) = m.graph.endpoints(*e);
        if !uf.union(a, b) {
            return Err(MarkedError::ZeroLengthCycle);
        }
    }
    collapse_forest_marked(m, &zeros)
}

/// Contracts a forest of zero-length edges, carrying the marking along.
pub fn collapse_forest_marked(m: &MarkedGraph, forest: &[Edge]) -> Result<MarkedGraph, MarkedError> {
    let forest: Vec<Edge> = forest.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if forest.is_empty() {
        return Ok(m.clone());
    }
    for e in &forest {
        match m.graph.length(*e) {
            None => return Err(MarkedError::UnknownEdge(*e)),
            Some(l) if !l.is_zero() => return Err(MarkedError::PositiveLength(*e)),
            _ => {}
        }
    }
    let (contracted, hmap) = m.graph.contract_forest_mapped(&forest)?;
    let prefer: Vec<Edge> = m.tree.iter().copied().collect();
    let tree = spanning_tree(&m.graph, &forest, &prefer).ok_or(MarkedError::ZeroLengthCycle)?;
    let (words, leaves) = normalize(&m.graph, &tree, m.base, &m.gauge());

    let image = |e: &Edge| Edge::new(hmap[e.lo()].unwrap(), hmap[e.hi()].unwrap());
    let new_tree: BTreeSet<Edge> = tree.iter().filter(|e| !forest.contains(e)).map(image).collect();
    let new_words: BTreeMap<Edge, Word> = words
        .into_iter()
        .map(|(e, w)| {
            let f = image(&e);
            (f, if hmap[e.lo()].unwrap() == f.lo() { w } else { w.inverse() })
        })
        .collect();

    let mut uf = UnionFind::new(m.graph.num_vertices());
    for e in &forest {
        let (a, b) = m.graph.endpoints(*e);
        uf.union(a, b);
    }
    let vm = m.graph.vertex_map();
    let new_vm = contracted.vertex_map();
    let root = uf.find(m.base);
    let base = (0..m.graph.num_half_edges())
        .find(|&h| hmap[h].is_some() && uf.find(vm[h]) == root)
        .map(|h| new_vm[hmap[h].unwrap()])
        .unwrap_or(0);
    MarkedGraph::new(contracted, new_tree, new_words, leaves, base)
}

/// Forgets the marking and normalizes onto the link; zero-length loops would
/// add weight but are excluded by construction.
pub fn project_to_link(m: &MarkedGraph) -> Result<TropicalPoint, MarkedError> {
    Ok(normalize_point(&m.graph, NormalizeMode::Link)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::automorphisms;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    pub(crate) fn theta(ls: [Rational; 3]) -> MarkedGraph {
        let mut b = GraphBuilder::new();
        let u = b.vertex(0);
        let v = b.vertex(0);
        for l in ls {
            b.edge_with_length(u, v, l);
        }
        standard_marking(b.build()).unwrap()
    }

    #[test]
    fn roses() {
        let r = identity_marked_rose(2, 0).unwrap();
        assert_eq!(r.loop_words(), vec![w("a1"), w("a2")]);
        assert!(r.graph().lengths().unwrap().values().all(|l| *l == q(1, 2)));
        let r = identity_marked_rose(1, 1).unwrap();
        assert_eq!(r.loop_words(), vec![w("a1")]);
        let r = identity_marked_rose(0, 3).unwrap();
        assert!(r.loop_words().is_empty());
        assert_eq!(r.leaf_words().len(), 2);
        assert!(r.leaf_words().values().all(Word::is_identity));
        assert!(identity_marked_rose(0, 2).is_err());
    }

    #[test]
    fn non_basis_is_rejected() {
        let r = identity_marked_rose(2, 0).unwrap();
        assert_eq!(
            r.apply_automorphism(&[w("a1 a1"), w("a2")]),
            Err(MarkedError::NotABasis)
        );
        assert!(r.apply_automorphism(&[w("a1"), w("a1 a2")]).is_ok());
    }

    #[test]
    fn rose_equivalences() {
        let r = identity_marked_rose(2, 0).unwrap();
        let transvect = r.apply_automorphism(&[w("a1"), w("a1 a2")]).unwrap();
        assert_eq!(equivalent_markings(&r, &transvect), Ok(None));
        let flipped = r.apply_automorphism(&[w("A1"), w("a2")]).unwrap();
        assert!(equivalent_markings(&r, &flipped).unwrap().is_some());
        let swapped = r.apply_automorphism(&[w("a2"), w("a1")]).unwrap();
        assert!(equivalent_markings(&r, &swapped).unwrap().is_some());
        // inner automorphisms do not change the point when n = 0
        let inner = r.apply_automorphism(&[w("A2 a1 a2"), w("a2")]).unwrap();
        assert!(equivalent_markings(&r, &inner).unwrap().is_some());
    }

    #[test]
    fn inner_automorphism_matters_with_a_leaf() {
        let r = identity_marked_rose(2, 1).unwrap();
        let inner = r.apply_automorphism(&[w("A2 a1 a2"), w("a2")]).unwrap();
        assert_eq!(equivalent_markings(&r, &inner), Ok(None));
    }

    #[test]
    fn transport_through_automorphisms() {
        let t = theta([q(1, 3), q(1, 3), q(1, 3)]);
        for a in automorphisms(t.graph(), true).elements {
            let moved = t.transport(&a);
            assert!(equivalent_markings(&t, &moved).unwrap().is_some());
        }
    }

    #[test]
    fn collapse_theta_to_rose() {
        let t = theta([q(1, 2), q(1, 2), q(0, 1)]);
        let zero = *t
            .graph()
            .lengths()
            .unwrap()
            .iter()
            .find(|(_, l)| l.is_zero())
            .unwrap()
            .0;
        let r = collapse_forest_marked(&t, &[zero]).unwrap();
        assert_eq!(r.graph().num_vertices(), 1);
        assert_eq!(r.graph().num_edges(), 2);
        assert!(crate::marked::free_group::is_basis(&r.loop_words()));
        assert_eq!(collapse_forest_marked(&t, &[]).unwrap(), t);
        let positive = t.graph().edges().into_iter().find(|e| *e != zero).unwrap();
        assert_eq!(
            collapse_forest_marked(&t, &[positive]),
            Err(MarkedError::PositiveLength(positive))
        );
        assert_eq!(project_to_link(&r).unwrap(), project_to_link(&t).unwrap());
    }

    #[test]
    fn zero_loops_are_rejected() {
        let mut b = GraphBuilder::new();
        let v = b.vertex(0);
        b.edge_with_length(v, v, q(0, 1));
        b.edge_with_length(v, v, q(1, 1));
        b.leaf(v, 1);
        assert!(matches!(standard_marking(b.build()), Err(MarkedError::ZeroLoop(_))));
    }

    #[test]
    fn lengths_must_sum_to_one() {
        assert!(matches!(
            standard_marking(theta([q(1, 2), q(1, 2), q(0, 1)]).graph().map_lengths(|_, l| l * q(2, 1))),
            Err(MarkedError::LengthSum(_))
        ));
    }
}
