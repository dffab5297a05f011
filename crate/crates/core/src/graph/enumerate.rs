//! Enumeration of stable weighted graphs of type `(g, n)`.
//!
//! Every stable weighted graph is a contraction of a trivalent weight-zero
//! graph with `3g - 3 + n` edges, so the trivalent graphs are generated
//! first and the set is then closed under single-edge contraction, one edge
//! count at a time.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{canonical_form, check_stable_range, CanonicalGraph, Graph, GraphError, HalfEdge};
use crate::scalar::{Rational, Scalar};

/// Resource bounds for enumeration.
#[derive(Clone, Copy, Debug)]
pub struct EnumerationLimits {
    pub max_classes: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_classes: 1_000_000,
        }
    }
}

/// One representative per isomorphism class of stable genus-`g` graphs with
/// `n` labeled leaves, sorted. With `only_pure`, weight-zero graphs only.
pub fn enumerate_stable_graphs(
    g: u32,
    n: u32,
    only_pure: bool,
) -> Result<Vec<CanonicalGraph>, GraphError> {
    enumerate_stable_graphs_with(g, n, only_pure, EnumerationLimits::default())
}

pub fn enumerate_stable_graphs_with(
    g: u32,
    n: u32,
    only_pure: bool,
    limits: EnumerationLimits,
) -> Result<Vec<CanonicalGraph>, GraphError> {
    check_stable_range(g, n)?;
    let top = trivalent_graphs::<Rational>(g, n, limits)?;
    let mut all: BTreeSet<CanonicalGraph> = BTreeSet::new();
    let mut level = top;
    while !level.is_empty() {
        all.extend(level.iter().cloned());
        if all.len() > limits.max_classes {
            return Err(GraphError::ResourceBound(limits.max_classes));
        }
        let next: BTreeSet<CanonicalGraph> = level
            .par_iter()
            .flat_map_iter(|c| {
                let graph = c.graph();
                graph
                    .edges()
                    .into_iter()
                    .filter(move |e| !only_pure || !graph.is_loop(*e))
                    .map(move |e| canonical_form(&graph.contract_edge(e).unwrap()).0)
            })
            .collect();
        level = next.into_iter().collect();
    }
    Ok(all.into_iter().collect())
}

/// Trivalent weight-zero graphs: `2g - 2 + n` vertices, `3g - 3 + n` edges.
fn trivalent_graphs<L: Scalar>(
    g: u32,
    n: u32,
    limits: EnumerationLimits,
) -> Result<Vec<CanonicalGraph<L>>, GraphError> {
    let nv = (2 * g + n - 2) as usize;
    let mut found: BTreeSet<CanonicalGraph<L>> = BTreeSet::new();
    let mut leaf_home = vec![0usize; n as usize];
    let mut err = None;
    assign_leaves(nv, 0, 0, &mut leaf_home, &mut |homes| {
        if err.is_some() {
            return;
        }
        let mut free = vec![3usize; nv];
        for &v in homes {
            free[v] -= 1;
        }
        let mut pairs = Vec::new();
        pair_slots(&mut free, &mut pairs, &mut |pairs| {
            let graph = assemble::<L>(nv, homes, pairs);
            if graph.is_connected() {
                found.insert(canonical_form(&graph).0);
            }
        });
        if found.len() > limits.max_classes {
            err = Some(GraphError::ResourceBound(limits.max_classes));
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(found.into_iter().collect()),
    }
}

/// Leaves go to vertices in restricted-growth order, at most three per vertex.
fn assign_leaves(
    nv: usize,
    k: usize,
    used: usize,
    homes: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if k == homes.len() {
        visit(homes);
        return;
    }
    for v in 0..nv.min(used + 1) {
        if homes[..k].iter().filter(|&&w| w == v).count() == 3 {
            continue;
        }
        homes[k] = v;
        assign_leaves(nv, k + 1, used.max(v + 1), homes, visit);
    }
}

/// Pair up free slots. The free slots at one vertex are interchangeable, so
/// only the choice of partner vertex matters.
fn pair_slots(
    free: &mut [usize],
    pairs: &mut Vec<(usize, usize)>,
    visit: &mut dyn FnMut(&[(usize, usize)]),
) {
    let Some(u) = free.iter().position(|&f| f > 0) else {
        visit(pairs);
        return;
    };
    free[u] -= 1;
    for v in u..free.len() {
        if free[v] == 0 {
            continue;
        }
        free[v] -= 1;
        pairs.push((u, v));
        pair_slots(free, pairs, visit);
        pairs.pop();
        free[v] += 1;
    }
    free[u] += 1;
}

fn assemble<L: Scalar>(nv: usize, homes: &[usize], pairs: &[(usize, usize)]) -> Graph<L> {
    let mut vertices: Vec<Vec<HalfEdge>> = vec![Vec::new(); nv];
    let mut involution = Vec::new();
    let mut leaves = std::collections::BTreeMap::new();
    for &(u, v) in pairs {
        let h = involution.len();
        involution.push(h + 1);
        involution.push(h);
        vertices[u].push(h);
        vertices[v].push(h + 1);
    }
    for (k, &v) in homes.iter().enumerate() {
        let h = involution.len();
        involution.push(h);
        vertices[v].push(h);
        leaves.insert(h, k as u32 + 1);
    }
    Graph::from_parts(vertices, involution, leaves, vec![0; nv])
}
