use std::collections::HashMap;

use rayon::prelude::*;

use crate::graph::{
    canonical_form, enumerate_stable_graphs_with, CanonicalGraph, EnumerationLimits, GraphError,
};

/// Stable classes of type `(g, n)` ordered by edge contraction.
///
/// Nodes are sorted by edge count, then by canonical form. A cover `(a, b)`
/// means `b` is obtained from `a` by contracting one edge.
#[derive(Clone, Debug)]
pub struct StrataPoset {
    g: u32,
    n: u32,
    nodes: Vec<CanonicalGraph>,
    index: HashMap<CanonicalGraph, usize>,
    covers: Vec<(usize, usize)>,
}

pub fn build_strata_poset(g: u32, n: u32) -> Result<StrataPoset, GraphError> {
    build_strata_poset_with(g, n, EnumerationLimits::default())
}

pub fn build_strata_poset_with(
    g: u32,
    n: u32,
    limits: EnumerationLimits,
) -> Result<StrataPoset, GraphError> {
    let mut nodes = enumerate_stable_graphs_with(g, n, false, limits)?;
    nodes.sort_by(|a, b| a.num_edges().cmp(&b.num_edges()).then_with(|| a.cmp(b)));
    let index: HashMap<CanonicalGraph, usize> =
        nodes.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let per_node: Vec<Vec<(usize, usize)>> = nodes
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let mut below: Vec<usize> = c
                .edges()
                .into_iter()
                .map(|e| index[&canonical_form(&c.contract_edge(e).unwrap()).0])
                .collect();
            below.sort_unstable();
            below.dedup();
            below.into_iter().map(|j| (i, j)).collect()
        })
        .collect();
    let mut covers: Vec<(usize, usize)> = per_node.into_iter().flatten().collect();
    covers.sort_unstable();
    Ok(StrataPoset {
        g,
        n,
        nodes,
        index,
        covers,
    })
}

impl StrataPoset {
    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn num_leaves(&self) -> u32 {
        self.n
    }

    pub fn nodes(&self) -> &[CanonicalGraph] {
        &self.nodes
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn index_of(&self, c: &CanonicalGraph) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.nodes[i].num_edges()
    }

    /// The edge-free class. Every node contracts onto it.
    pub fn minimum(&self) -> usize {
        0
    }

    /// Minimal elements under contraction; a poset with a unique minimum
    /// returns one index.
    pub fn minimal_elements(&self) -> Vec<usize> {
        let mut has_lower = vec![false; self.nodes.len()];
        for &(a, _) in &self.covers {
            has_lower[a] = true;
        }
        (0..self.nodes.len()).filter(|&i| !has_lower[i]).collect()
    }

    /// Whether `b` is reachable from `a` by contracting edges (reflexive).
    pub fn contracts_to(&self, a: usize, b: usize) -> bool {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            if x == b {
                return true;
            }
            if std::mem::replace(&mut seen[x], true) {
                continue;
            }
            let start = self.covers.partition_point(|&(p, _)| p < x);
            stack.extend(self.covers[start..].iter().take_while(|&&(p, _)| p == x).map(|&(_, q)| q));
        }
        false
    }

    /// DOT Hasse diagram, nodes named by canonical hash.
    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph strata_{}_{} {{\n  rankdir=BT;\n", self.g, self.n);
        for c in &self.nodes {
            out.push_str(&format!(
                "  \"{}\" [label=\"{} edges, weights {:?}\"];\n",
                c.hash_hex(),
                c.num_edges(),
                c.weights()
            ));
        }
        for &(a, b) in &self.covers {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\";\n",
                self.nodes[b].hash_hex(),
                self.nodes[a].hash_hex()
            ));
        }
        out.push_str("}\n");
        out
    }
}
