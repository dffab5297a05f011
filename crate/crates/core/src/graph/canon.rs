//! Canonical labeling, isomorphism and automorphism groups.
//!
//! Half-edges are coloured by (leaf label, vertex weight, valence, loop flag,
//! length rank) and the colouring is refined until stable: a half-edge's new
//! colour is its old colour, its partner's colour and the multiset of colours
//! at its vertex. Non-discrete colourings are split by individualizing each
//! member of the first non-singleton cell in turn. Every discrete colouring
//! reached is a relabeling; the canonical form is the least relabeled graph
//! under the derived order on [`Graph`], and the relabelings that reach it
//! differ exactly by automorphisms.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Deref;

use sha2::{Digest, Sha256};

use super::{Edge, Graph, HalfEdge};
use crate::scalar::{Rational, Scalar};

/// A bijection of half-edges, `map[old] = new`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphIso {
    map: Vec<HalfEdge>,
}

impl GraphIso {
    pub fn identity(n: usize) -> Self {
        GraphIso {
            map: (0..n).collect(),
        }
    }

    pub fn from_map(map: Vec<HalfEdge>) -> Self {
        GraphIso { map }
    }

    pub fn as_slice(&self) -> &[HalfEdge] {
        &self.map
    }

    pub fn apply(&self, h: HalfEdge) -> HalfEdge {
        self.map[h]
    }

    pub fn edge(&self, e: Edge) -> Edge {
        Edge::new(self.map[e.lo()], self.map[e.hi()])
    }

    pub fn inverse(&self) -> GraphIso {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        GraphIso { map: inv }
    }

    /// First `self`, then `next`.
    pub fn then(&self, next: &GraphIso) -> GraphIso {
        GraphIso {
            map: self.map.iter().map(|&y| next.map[y]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Whether this is an isomorphism `from -> to` preserving partition,
    /// involution, leaf labels, weights and (optionally) lengths.
    pub fn is_isomorphism<L: Scalar>(
        &self,
        from: &Graph<L>,
        to: &Graph<L>,
        respect_lengths: bool,
    ) -> bool {
        if self.map.len() != from.num_half_edges() || to.num_half_edges() != self.map.len() {
            return false;
        }
        let mut image = from.relabel(&self.map);
        let mut target = to.relabel(&(0..self.map.len()).collect::<Vec<_>>());
        if !respect_lengths {
            image.lengths = None;
            target.lengths = None;
        }
        image == target
    }

    /// Sign of the permutation induced on `g.edges()` by an automorphism of `g`.
    pub fn edge_permutation_sign<L: Scalar>(&self, g: &Graph<L>) -> i32 {
        let edges = g.edges();
        let perm: Vec<usize> = edges
            .iter()
            .map(|e| {
                let img = self.edge(*e);
                edges.binary_search(&img).expect("automorphism maps edges to edges")
            })
            .collect();
        permutation_sign(&perm)
    }
}

impl fmt::Display for GraphIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Sign of a permutation of `0..n` given as a vector of images.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// A graph in canonical labeled form. Equality of values is isomorphism of
/// the underlying graphs.
#[derive(Clone, Debug)]
pub struct CanonicalGraph<L = Rational> {
    graph: Graph<L>,
    hash: u64,
}

impl<L: Scalar> CanonicalGraph<L> {
    fn new(graph: Graph<L>) -> Self {
        let hash = digest(&graph);
        CanonicalGraph { graph, hash }
    }

    pub fn graph(&self) -> &Graph<L> {
        &self.graph
    }

    pub fn into_graph(self) -> Graph<L> {
        self.graph
    }

    /// A stable 64-bit digest of the canonical labeling.
    pub fn hash_value(&self) -> u64 {
        self.hash
    }

    pub fn hash_hex(&self) -> String {
        format!("{:016x}", self.hash)
    }
}

impl<L> Deref for CanonicalGraph<L> {
    type Target = Graph<L>;

    fn deref(&self) -> &Graph<L> {
        &self.graph
    }
}

impl<L: PartialEq> PartialEq for CanonicalGraph<L> {
    fn eq(&self, other: &Self) -> bool {
        self.hash == other.hash && self.graph == other.graph
    }
}

impl<L: Eq> Eq for CanonicalGraph<L> {}

impl<L: Eq> Hash for CanonicalGraph<L> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.hash);
    }
}

impl<L: Ord> PartialOrd for CanonicalGraph<L> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<L: Ord> Ord for CanonicalGraph<L> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.graph.cmp(&other.graph)
    }
}

fn digest<L: Scalar>(g: &Graph<L>) -> u64 {
    let mut bytes: Vec<u8> = Vec::new();
    let put = |bytes: &mut Vec<u8>, x: u64| bytes.extend_from_slice(&x.to_le_bytes());
    put(&mut bytes, g.involution.len() as u64);
    for &x in &g.involution {
        put(&mut bytes, x as u64);
    }
    put(&mut bytes, g.vertices.len() as u64);
    for (part, &w) in g.vertices.iter().zip(&g.weights) {
        put(&mut bytes, part.len() as u64);
        for &x in part {
            put(&mut bytes, x as u64);
        }
        put(&mut bytes, w as u64);
    }
    for (&h, &k) in &g.leaves {
        put(&mut bytes, h as u64);
        put(&mut bytes, k as u64);
    }
    if let Some(ls) = &g.lengths {
        put(&mut bytes, u64::MAX);
        for (e, l) in ls {
            put(&mut bytes, e.lo() as u64);
            put(&mut bytes, e.hi() as u64);
            bytes.extend_from_slice(l.to_string().as_bytes());
            bytes.push(0);
        }
    }
    let out = Sha256::digest(&bytes);
    u64::from_le_bytes(out[..8].try_into().unwrap())
}

struct Search<'a, L> {
    g: &'a Graph<L>,
    vertex_of: Vec<usize>,
    best: Option<Graph<L>>,
    best_labelings: Vec<Vec<HalfEdge>>,
}

impl<'a, L: Scalar> Search<'a, L> {
    fn new(g: &'a Graph<L>) -> Self {
        Search {
            g,
            vertex_of: g.vertex_map(),
            best: None,
            best_labelings: Vec::new(),
        }
    }

    fn initial_colors(&self) -> Vec<u32> {
        let g = self.g;
        let h = g.num_half_edges();
        let ranks: Vec<usize> = match &g.lengths {
            Some(ls) => {
                let mut values: Vec<&L> = ls.values().collect();
                values.sort();
                values.dedup();
                (0..h)
                    .map(|x| {
                        ls.get(&Edge::new(x, g.involution[x]))
                            .map(|l| values.binary_search(&l).unwrap() + 1)
                            .unwrap_or(0)
                    })
                    .collect()
            }
            None => vec![0; h],
        };
        let keys: Vec<(u32, u32, usize, bool, usize)> = (0..h)
            .map(|x| {
                let v = self.vertex_of[x];
                let partner_v = self.vertex_of[g.involution[x]];
                (
                    g.leaves.get(&x).copied().unwrap_or(0),
                    g.weights[v],
                    g.vertices[v].len(),
                    v == partner_v && g.involution[x] != x,
                    ranks[x],
                )
            })
            .collect();
        rank_keys(&keys)
    }

    /// Refine to the coarsest equitable colouring below `colors`; returns
    /// the number of colours. Output colours are `0..k`.
    fn refine(&self, colors: &mut Vec<u32>) -> usize {
        let g = self.g;
        let h = colors.len();
        let mut count = {
            let mut c = colors.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        loop {
            let per_vertex: Vec<Vec<u32>> = g
                .vertices
                .iter()
                .map(|part| {
                    let mut cs: Vec<u32> = part.iter().map(|&x| colors[x]).collect();
                    cs.sort_unstable();
                    cs
                })
                .collect();
            let sigs: Vec<(u32, u32, &Vec<u32>)> = (0..h)
                .map(|x| {
                    (
                        colors[x],
                        colors[g.involution[x]],
                        &per_vertex[self.vertex_of[x]],
                    )
                })
                .collect();
            let new_colors = rank_keys(&sigs);
            let new_count = new_colors.iter().max().map(|&m| m as usize + 1).unwrap_or(0);
            *colors = new_colors;
            if new_count == count {
                return count;
            }
            count = new_count;
        }
    }

    fn descend(&mut self, mut colors: Vec<u32>) {
        let h = colors.len();
        let k = self.refine(&mut colors);
        if k == h {
            let labeling: Vec<HalfEdge> = colors.iter().map(|&c| c as usize).collect();
            self.visit_leaf(labeling);
            return;
        }
        let mut counts = vec![0usize; k];
        for &c in &colors {
            counts[c as usize] += 1;
        }
        let target = counts.iter().position(|&n| n > 1).unwrap() as u32;
        let members: Vec<HalfEdge> = (0..h).filter(|&x| colors[x] == target).collect();
        for chosen in members {
            let child: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(y, &c)| 2 * c + u32::from(c == target && y != chosen))
                .collect();
            self.descend(child);
        }
    }

    fn visit_leaf(&mut self, labeling: Vec<HalfEdge>) {
        let candidate = self.g.relabel(&labeling);
        match &self.best {
            Some(best) if candidate > *best => {}
            Some(best) if candidate == *best => self.best_labelings.push(labeling),
            _ => {
                self.best = Some(candidate);
                self.best_labelings = vec![labeling];
            }
        }
    }

    fn run(mut self) -> (Graph<L>, Vec<Vec<HalfEdge>>) {
        let colors = self.initial_colors();
        self.descend(colors);
        (self.best.expect("search reaches a leaf"), self.best_labelings)
    }
}

fn rank_keys<K: Ord>(keys: &[K]) -> Vec<u32> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut out = vec![0u32; keys.len()];
    let mut color = 0u32;
    for (i, &x) in order.iter().enumerate() {
        if i > 0 && keys[order[i - 1]] != keys[x] {
            color += 1;
        }
        out[x] = color;
    }
    out
}

/// Canonical form of `g`, respecting weights, leaf labels and any lengths,
/// with the isomorphism from `g` onto it.
pub fn canonical_form<L: Scalar>(g: &Graph<L>) -> (CanonicalGraph<L>, GraphIso) {
    let (best, labelings) = Search::new(g).run();
    let iso = GraphIso::from_map(labelings.into_iter().next().unwrap());
    (CanonicalGraph::new(best), iso)
}

fn strip<L: Scalar>(g: &Graph<L>, respect_lengths: bool) -> std::borrow::Cow<'_, Graph<L>> {
    if respect_lengths || g.lengths.is_none() {
        std::borrow::Cow::Borrowed(g)
    } else {
        std::borrow::Cow::Owned(g.without_lengths())
    }
}

/// Some isomorphism `g1 -> g2`, if one exists.
pub fn are_isomorphic<L: Scalar>(
    g1: &Graph<L>,
    g2: &Graph<L>,
    respect_lengths: bool,
) -> Option<GraphIso> {
    if g1.num_half_edges() != g2.num_half_edges() || g1.num_vertices() != g2.num_vertices() {
        return None;
    }
    let (c1, i1) = canonical_form(&strip(g1, respect_lengths));
    let (c2, i2) = canonical_form(&strip(g2, respect_lengths));
    (c1 == c2).then(|| i1.then(&i2.inverse()))
}

/// Every isomorphism `g1 -> g2`.
pub fn isomorphisms<L: Scalar>(
    g1: &Graph<L>,
    g2: &Graph<L>,
    respect_lengths: bool,
) -> Vec<GraphIso> {
    let Some(base) = are_isomorphic(g1, g2, respect_lengths) else {
        return Vec::new();
    };
    automorphisms(g2, respect_lengths)
        .elements
        .iter()
        .map(|gamma| base.then(gamma))
        .collect()
}

/// The automorphism group, listed in full together with a generating set.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub generators: Vec<GraphIso>,
    pub elements: Vec<GraphIso>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Automorphisms of `g` preserving weights and leaves, and lengths when
/// `respect_lengths` is set.
pub fn automorphisms<L: Scalar>(g: &Graph<L>, respect_lengths: bool) -> AutomorphismGroup {
    let stripped = strip(g, respect_lengths);
    let (_, labelings) = Search::new(&stripped).run();
    let back = GraphIso::from_map(labelings[0].clone()).inverse();
    let mut elements: Vec<GraphIso> = labelings
        .into_iter()
        .map(|lab| GraphIso::from_map(lab).then(&back))
        .collect();
    elements.sort();
    let generators = generating_set(&elements);
    AutomorphismGroup {
        generators,
        elements,
    }
}

fn generating_set(elements: &[GraphIso]) -> Vec<GraphIso> {
    let Some(first) = elements.first() else {
        return Vec::new();
    };
    let identity = GraphIso::identity(first.map.len());
    let mut gens: Vec<GraphIso> = Vec::new();
    let mut closure: HashSet<GraphIso> = HashSet::from([identity.clone()]);
    for el in elements {
        if closure.contains(el) {
            continue;
        }
        gens.push(el.clone());
        let mut queue: VecDeque<GraphIso> = closure.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for s in &gens {
                let y = x.then(s);
                if closure.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;
    use std::collections::BTreeMap;

    fn theta() -> Graph {
        let mut b = GraphBuilder::new();
        let u = b.vertex(0);
        let v = b.vertex(0);
        for _ in 0..3 {
            b.edge(u, v);
        }
        b.build()
    }

    fn dumbbell() -> Graph {
        let mut b = GraphBuilder::new();
        let u = b.vertex(0);
        let v = b.vertex(0);
        b.edge(u, u);
        b.edge(u, v);
        b.edge(v, v);
        b.build()
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn relabeled_theta_has_same_canonical_form() {
        let g = theta();
        let perm = vec![3, 5, 0, 1, 4, 2];
        let h = g.relabel(&perm);
        assert_ne!(g, h);
        let (cg, ig) = canonical_form(&g);
        let (ch, _) = canonical_form(&h);
        assert_eq!(cg, ch);
        assert!(ig.is_isomorphism(&g, cg.graph(), true));
    }

    #[test]
    fn canonical_form_is_idempotent() {
        for g in [theta(), dumbbell()] {
            let (c, _) = canonical_form(&g);
            let (c2, iso) = canonical_form(c.graph());
            assert_eq!(c, c2);
            assert_eq!(c.graph(), c2.graph());
            assert!(iso.is_isomorphism(c.graph(), c2.graph(), true));
        }
    }

    #[test]
    fn theta_and_dumbbell_differ() {
        assert_ne!(canonical_form(&theta()).0, canonical_form(&dumbbell()).0);
        assert!(are_isomorphic(&theta(), &dumbbell(), false).is_none());
    }

    #[test]
    fn leaf_labels_are_fixed() {
        let tree = |a: u32, b: u32, c: u32, d: u32| {
            let mut bld: GraphBuilder<Rational> = GraphBuilder::new();
            let u = bld.vertex(0);
            let v = bld.vertex(0);
            bld.edge(u, v);
            bld.leaf(u, a);
            bld.leaf(u, b);
            bld.leaf(v, c);
            bld.leaf(v, d);
            bld.build()
        };
        let t1 = tree(1, 2, 3, 4);
        let t2 = tree(1, 3, 2, 4);
        let t3 = tree(3, 4, 2, 1);
        assert!(are_isomorphic(&t1, &t2, false).is_none());
        assert!(are_isomorphic(&t1, &t3, false).is_some());
    }

    #[test]
    fn metric_theta_isomorphism_permutes_edges() {
        let metric = |ls: [Rational; 3]| {
            let mut b = GraphBuilder::new();
            let u = b.vertex(0);
            let v = b.vertex(0);
            for l in ls {
                b.edge_with_length(u, v, l);
            }
            b.build()
        };
        let g1 = metric([q(1, 2), q(1, 4), q(1, 4)]);
        let g2 = metric([q(1, 4), q(1, 2), q(1, 4)]);
        let iso = are_isomorphic(&g1, &g2, true).expect("edge permutation");
        assert!(iso.is_isomorphism(&g1, &g2, true));
        // the half-edges of the long edge go to the half-edges of the long edge
        assert_eq!(iso.edge(Edge::new(0, 1)), Edge::new(2, 3));
        let g3 = metric([q(1, 3), q(1, 3), q(1, 3)]);
        assert!(are_isomorphic(&g1, &g3, true).is_none());
        assert!(are_isomorphic(&g1, &g3, false).is_some());
    }

    #[test]
    fn automorphism_orders() {
        assert_eq!(automorphisms(&theta(), false).order(), 12);
        assert_eq!(automorphisms(&dumbbell(), false).order(), 8);
        let mut b: GraphBuilder<Rational> = GraphBuilder::new();
        let v = b.vertex(0);
        b.edge(v, v);
        b.leaf(v, 1);
        assert_eq!(automorphisms(&b.build(), false).order(), 2);
    }

    #[test]
    fn generators_generate() {
        let group = automorphisms(&theta(), false);
        assert!(group.generators.len() <= 3);
        let mut closure: HashSet<GraphIso> = HashSet::from([GraphIso::identity(6)]);
        let mut frontier = vec![GraphIso::identity(6)];
        while let Some(x) = frontier.pop() {
            for s in &group.generators {
                let y = x.then(s);
                if closure.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        assert_eq!(closure.len(), 12);
    }

    #[test]
    fn theta_transpositions_are_odd() {
        let g = theta();
        let group = automorphisms(&g, false);
        assert!(group
            .elements
            .iter()
            .any(|a| a.edge_permutation_sign(&g) == -1));
    }

    #[test]
    fn edge_free_graph() {
        let g: Graph = Graph::from_parts(vec![vec![]], vec![], BTreeMap::new(), vec![3]);
        let (c, iso) = canonical_form(&g);
        assert_eq!(c.graph(), &g);
        assert!(iso.is_identity());
        assert_eq!(automorphisms(&g, true).order(), 1);
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }
}
