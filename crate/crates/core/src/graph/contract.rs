//! Edge and forest contraction.
//!
//! Contracting a non-loop edge merges its endpoints and adds their weights.
//! Contracting a loop raises the weight of its vertex by one. Both rules keep
//! the genus fixed.

use std::collections::BTreeSet;

use super::{Edge, Graph, GraphError, HalfEdge};
use crate::scalar::Scalar;

/// For each old half-edge, its index after a contraction (`None` if removed).
pub type HalfEdgeMap = Vec<Option<HalfEdge>>;

impl<L: Scalar> Graph<L> {
    /// Contract one edge with the weighted rule.
    pub fn contract_edge(&self, e: Edge) -> Result<Graph<L>, GraphError> {
        self.contract_edge_mapped(e).map(|(g, _)| g)
    }

    /// Contract one edge and report where the surviving half-edges went.
    pub fn contract_edge_mapped(&self, e: Edge) -> Result<(Graph<L>, HalfEdgeMap), GraphError> {
        if !self.is_edge(e) {
            return Err(GraphError::NotContractible(e.lo()));
        }
        let h = self.num_half_edges();
        let mut map: HalfEdgeMap = vec![None; h];
        let mut next = 0;
        for (x, slot) in map.iter_mut().enumerate() {
            if !e.contains(x) {
                *slot = Some(next);
                next += 1;
            }
        }
        let vm = self.vertex_map();
        let (u, v) = (vm[e.lo()], vm[e.hi()]);

        let remap_part = |part: &[HalfEdge]| -> Vec<HalfEdge> {
            part.iter().filter_map(|&x| map[x]).collect()
        };
        let mut vertices = Vec::with_capacity(self.num_vertices());
        let mut weights = Vec::with_capacity(self.num_vertices());
        let (keep, drop) = (u.min(v), u.max(v));
        for (w, part) in self.vertices.iter().enumerate() {
            if u != v && w == drop {
                continue;
            }
            let mut p = remap_part(part);
            let mut weight = self.weights[w];
            if w == keep {
                if u == v {
                    weight += 1;
                } else {
                    p.extend(remap_part(&self.vertices[drop]));
                    weight += self.weights[drop];
                }
                p.sort_unstable();
            }
            vertices.push(p);
            weights.push(weight);
        }

        let mut involution = vec![0; next];
        for x in 0..h {
            if let Some(nx) = map[x] {
                involution[nx] = map[self.involution[x]].expect("partner survives");
            }
        }
        let leaves = self
            .leaves
            .iter()
            .map(|(x, k)| (map[*x].expect("leaves survive"), *k))
            .collect();
        let lengths = self.lengths.as_ref().map(|ls| {
            ls.iter()
                .filter(|(f, _)| **f != e)
                .map(|(f, l)| {
                    (
                        Edge::new(map[f.lo()].unwrap(), map[f.hi()].unwrap()),
                        l.clone(),
                    )
                })
                .collect()
        });
        Ok((
            Graph {
                vertices,
                involution,
                leaves,
                weights,
                lengths,
            },
            map,
        ))
    }

    /// Contract every edge of `set` in turn; loops arising on the way add
    /// weight. The result does not depend on the order.
    pub fn contract_edges(&self, set: &[Edge]) -> Result<(Graph<L>, HalfEdgeMap), GraphError> {
        self.contract_sequence(set, true)
    }

    /// Contract a forest. Fails if some edge is, or becomes, a loop.
    pub fn contract_forest(&self, forest: &[Edge]) -> Result<Graph<L>, GraphError> {
        self.contract_forest_mapped(forest).map(|(g, _)| g)
    }

    pub fn contract_forest_mapped(
        &self,
        forest: &[Edge],
    ) -> Result<(Graph<L>, HalfEdgeMap), GraphError> {
        self.contract_sequence(forest, false)
    }

    fn contract_sequence(
        &self,
        set: &[Edge],
        allow_loops: bool,
    ) -> Result<(Graph<L>, HalfEdgeMap), GraphError> {
        let distinct: BTreeSet<Edge> = set.iter().copied().collect();
        for e in &distinct {
            if !self.is_edge(*e) {
                return Err(GraphError::NotContractible(e.lo()));
            }
        }
        let mut g = self.clone();
        let mut total: HalfEdgeMap = (0..self.num_half_edges()).map(Some).collect();
        for e in distinct {
            let cur = Edge::new(total[e.lo()].unwrap(), total[e.hi()].unwrap());
            if !allow_loops && g.is_loop(cur) {
                return Err(GraphError::NotAForest(e));
            }
            let (next, step) = g.contract_edge_mapped(cur)?;
            for slot in total.iter_mut() {
                *slot = slot.and_then(|x| step[x]);
            }
            g = next;
        }
        Ok((g, total))
    }
}
