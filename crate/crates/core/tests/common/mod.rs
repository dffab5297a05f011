//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's canonical forms, automorphism search or enumeration.

#![allow(dead_code)]

use std::collections::BTreeSet;

use tropmod::graph::{Graph, GraphBuilder};
use tropmod::{Rational, Scalar};

/// A stable graph as plain data: vertex weights, the vertex of each leaf
/// `p1..pn`, and the sorted list of edges as vertex pairs `(u <= v)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multigraph {
    pub weights: Vec<u32>,
    pub leaf_at: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl Multigraph {
    fn permuted(&self, p: &[usize]) -> Multigraph {
        let mut weights = vec![0; self.weights.len()];
        for (v, &w) in self.weights.iter().enumerate() {
            weights[p[v]] = w;
        }
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
            .collect();
        edges.sort_unstable();
        Multigraph {
            weights,
            leaf_at: self.leaf_at.iter().map(|&v| p[v]).collect(),
            edges,
        }
    }

    /// Least relabeling over all vertex permutations.
    pub fn brute_canonical(&self) -> Multigraph {
        let mut best: Option<Multigraph> = None;
        for p in permutations(self.weights.len()) {
            let q = self.permuted(&p);
            if best.as_ref().is_none_or(|b| q < *b) {
                best = Some(q);
            }
        }
        best.unwrap()
    }

    fn valences(&self) -> Vec<usize> {
        let mut val = vec![0; self.weights.len()];
        for &(u, v) in &self.edges {
            val[u] += 1;
            val[v] += 1;
        }
        for &v in &self.leaf_at {
            val[v] += 1;
        }
        val
    }

    fn connected(&self) -> bool {
        let n = self.weights.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &(u, v) in &self.edges {
                for (a, b) in [(u, v), (v, u)] {
                    if a == x && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    fn stable(&self) -> bool {
        self.weights
            .iter()
            .zip(self.valences())
            .all(|(&w, val)| 2 * w as i64 - 2 + val as i64 > 0)
    }

    pub fn from_graph<L: Scalar>(g: &Graph<L>) -> Multigraph {
        let mut vertex_of = vec![0; g.num_half_edges()];
        for (v, part) in g.vertices().iter().enumerate() {
            for &h in part {
                vertex_of[h] = v;
            }
        }
        let inv = g.involution();
        let mut edges = Vec::new();
        for h in 0..inv.len() {
            if inv[h] > h {
                let (u, v) = (vertex_of[h], vertex_of[inv[h]]);
                edges.push((u.min(v), u.max(v)));
            }
        }
        edges.sort_unstable();
        let mut leaf_at = vec![0; g.num_leaves()];
        for (h, k) in g.leaves() {
            leaf_at[k as usize - 1] = vertex_of[h];
        }
        Multigraph {
            weights: g.weights().to_vec(),
            leaf_at,
            edges,
        }
    }

    pub fn to_graph(&self) -> Graph<Rational> {
        let mut b = GraphBuilder::<Rational>::new();
        for &w in &self.weights {
            b.vertex(w);
        }
        for &(u, v) in &self.edges {
            b.edge(u, v);
        }
        for (k, &v) in self.leaf_at.iter().enumerate() {
            b.leaf(v, k as u32 + 1);
        }
        b.build()
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// All multisets of size `k` drawn from `0..m`, as sorted vectors.
fn multisets(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in multisets(m, k - 1) {
        let lo = rest.last().copied().unwrap_or(0);
        for x in lo..m {
            let mut r = rest.clone();
            r.push(x);
            out.push(r);
        }
    }
    out
}

/// Ways to write `total` as an ordered sum of `parts` non-negative integers.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every stable graph of type `(g, n)` up to isomorphism, found by listing
/// all weighted multigraphs with leaves and at most `3g - 3 + n` edges and
/// keeping the brute-force canonical representative of each.
pub fn naive_stable_graphs(g: u32, n: u32) -> BTreeSet<Multigraph> {
    let max_edges = (3 * g + n) as usize - 3;
    let mut found = BTreeSet::new();
    for e in 0..=max_edges {
        for v in 1..=e + 1 {
            let b1 = e + 1 - v;
            if b1 as u32 > g {
                continue;
            }
            let pairs: Vec<(usize, usize)> =
                (0..v).flat_map(|a| (a..v).map(move |b| (a, b))).collect();
            let edge_sets = multisets(pairs.len(), e);
            let leaf_sets = tuples(v, n as usize);
            for weights in compositions(g - b1 as u32, v) {
                for es in &edge_sets {
                    let edges: Vec<(usize, usize)> = es.iter().map(|&i| pairs[i]).collect();
                    for leaf_at in &leaf_sets {
                        let m = Multigraph {
                            weights: weights.clone(),
                            leaf_at: leaf_at.clone(),
                            edges: edges.clone(),
                        };
                        if m.stable() && m.connected() {
                            found.insert(m.brute_canonical());
                        }
                    }
                }
            }
        }
    }
    found
}

fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Number of half-edge bijections `g1 -> g2` that respect vertices, weights,
/// the involution and leaf labels, found by plain backtracking. With
/// `first_only` the search stops at the first witness.
pub fn brute_isomorphisms<L: Scalar>(g1: &Graph<L>, g2: &Graph<L>, first_only: bool) -> usize {
    let h = g1.num_half_edges();
    if h != g2.num_half_edges() || g1.num_vertices() != g2.num_vertices() {
        return 0;
    }
    let vertex_of = |g: &Graph<L>| {
        let mut out = vec![0; g.num_half_edges()];
        for (v, part) in g.vertices().iter().enumerate() {
            for &x in part {
                out[x] = v;
            }
        }
        out
    };
    let (v1, v2) = (vertex_of(g1), vertex_of(g2));
    let mut st = Search {
        g1,
        g2,
        v1,
        v2,
        map: vec![usize::MAX; h],
        used: vec![false; h],
        vmap: vec![usize::MAX; g1.num_vertices()],
        vused: vec![false; g1.num_vertices()],
        count: 0,
        first_only,
    };
    st.go(0);
    // vertices without half-edges can only be edge-free graphs
    if h == 0 {
        let mut a = g1.weights().to_vec();
        let mut b = g2.weights().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        return usize::from(a == b);
    }
    st.count
}

struct Search<'a, L: Scalar> {
    g1: &'a Graph<L>,
    g2: &'a Graph<L>,
    v1: Vec<usize>,
    v2: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    vmap: Vec<usize>,
    vused: Vec<bool>,
    count: usize,
    first_only: bool,
}

impl<L: Scalar> Search<'_, L> {
    fn go(&mut self, x: usize) {
        if self.first_only && self.count > 0 {
            return;
        }
        let h = self.map.len();
        if x == h {
            self.count += 1;
            return;
        }
        let (i1, i2) = (self.g1.involution(), self.g2.involution());
        for y in 0..h {
            if self.used[y] || self.g1.leaf_label(x) != self.g2.leaf_label(y) {
                continue;
            }
            let (a, b) = (self.v1[x], self.v2[y]);
            let fresh = self.vmap[a] == usize::MAX;
            if fresh {
                if self.vused[b] || self.g1.weight(a) != self.g2.weight(b) {
                    continue;
                }
                if self.g1.vertex(a).len() != self.g2.vertex(b).len() {
                    continue;
                }
            } else if self.vmap[a] != b {
                continue;
            }
            let p = i1[x];
            if p < x && i2[y] != self.map[p] {
                continue;
            }
            if p == x && i2[y] != y {
                continue;
            }
            if p > x && i2[y] == y {
                continue;
            }
            self.map[x] = y;
            self.used[y] = true;
            if fresh {
                self.vmap[a] = b;
                self.vused[b] = true;
            }
            self.go(x + 1);
            self.map[x] = usize::MAX;
            self.used[y] = false;
            if fresh {
                self.vmap[a] = usize::MAX;
                self.vused[b] = false;
            }
        }
    }
}

/// A uniformly random relabeling of half-edges.
pub fn shuffled<L: Scalar>(g: &Graph<L>, rng: &mut impl rand::Rng) -> Graph<L> {
    use rand::seq::SliceRandom;
    let mut map: Vec<usize> = (0..g.num_half_edges()).collect();
    map.shuffle(rng);
    g.relabel(&map)
}

/// The `(g, n)` pairs in the stable range with `3g - 3 + n <= d`.
pub fn stable_types(d: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for g in 0..=(d + 3) / 3 {
        for n in 0..=(d + 3) {
            if 2 * g + n > 2 && 3 * g + n <= d + 3 {
                out.push((g, n));
            }
        }
    }
    out
}
