//! Homology of the link through its barycentric subdivision.
//!
//! A `k`-simplex is a class of a stable graph `G` with at least one edge
//! together with a surjective level function `E(G) -> {0..k}`, stored as a
//! `Graph<u32>` whose edge lengths are the levels. Vertex `i` of the simplex
//! is the barycenter of the cell obtained by contracting every edge of level
//! above `i`. Automorphisms preserving the levels fix every vertex, so the
//! quotient is an ordinary semi-simplicial set.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use super::chain::{betti_from, euler_from};
use super::linalg::IntMatrix;
use super::poset::build_strata_poset;
use super::ComplexError;
use crate::graph::{canonical_form, CanonicalGraph, Edge, Graph};
use crate::scalar::{Field, Rational};

#[derive(Clone, Debug)]
pub struct OracleComplex {
    pub simplices: Vec<Vec<CanonicalGraph<u32>>>,
    pub boundaries: Vec<IntMatrix>,
}

impl OracleComplex {
    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn betti<F: Field>(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.boundaries.par_iter().map(|m| m.rank::<F>()).collect();
        betti_from(&self.counts(), &ranks)
    }

    pub fn betti_rational(&self) -> Vec<usize> {
        self.betti::<Rational>()
    }

    pub fn euler(&self) -> i64 {
        euler_from(&self.counts())
    }

    pub fn boundary_squares_to_zero(&self) -> bool {
        self.boundaries
            .windows(2)
            .all(|w| w[0].rows() == 0 || w[0].mul(&w[1]).is_zero())
    }
}

/// Builds the subdivided link, failing once more than `max_simplices`
/// simplices would be needed.
pub fn barycentric_oracle(g: u32, n: u32, max_simplices: usize) -> Result<OracleComplex, ComplexError> {
    let poset = build_strata_poset(g, n)?;
    let cells: Vec<&CanonicalGraph> = poset.nodes().iter().filter(|c| c.num_edges() > 0).collect();
    let top = cells.iter().map(|c| c.num_edges()).max().unwrap_or(0);

    let mut estimate = 0usize;
    for c in &cells {
        let m = c.num_edges() as u32;
        estimate = estimate.saturating_add((0..m).map(|k| (k as usize + 1).saturating_pow(m)).sum());
    }
    if estimate > max_simplices.saturating_mul(64) {
        return Err(ComplexError::ResourceBound(max_simplices));
    }

    let found: Vec<Vec<CanonicalGraph<u32>>> = cells
        .par_iter()
        .map(|c| {
            let base: Graph<u32> = c.without_lengths();
            let edges = c.edges();
            let mut out = Vec::new();
            for k in 0..edges.len() {
                for levels in surjections(edges.len(), k + 1) {
                    let map: BTreeMap<Edge, u32> =
                        edges.iter().copied().zip(levels.into_iter().map(|l| l as u32)).collect();
                    out.push(canonical_form(&base.clone().with_lengths(map)).0);
                }
            }
            out
        })
        .collect();
    let mut by_dim: Vec<BTreeSet<CanonicalGraph<u32>>> = vec![BTreeSet::new(); top];
    for s in found.into_iter().flatten() {
        let k = top_level(&s) as usize;
        by_dim[k].insert(s);
    }
    let simplices: Vec<Vec<CanonicalGraph<u32>>> =
        by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
    let total: usize = simplices.iter().map(Vec::len).sum();
    if total > max_simplices {
        return Err(ComplexError::ResourceBound(max_simplices));
    }

    let boundaries = (0..top)
        .into_par_iter()
        .map(|k| {
            if k == 0 {
                return IntMatrix::zeros(0, simplices[0].len());
            }
            let rows: HashMap<&CanonicalGraph<u32>, usize> =
                simplices[k - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
            let mut m = IntMatrix::zeros(simplices[k - 1].len(), simplices[k].len());
            for (col, s) in simplices[k].iter().enumerate() {
                for i in 0..=k {
                    let f = face(s, i, k);
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    m.add(rows[&f], col, sign);
                }
            }
            m
        })
        .collect();
    Ok(OracleComplex {
        simplices,
        boundaries,
    })
}

fn top_level(s: &Graph<u32>) -> u32 {
    s.lengths().unwrap().values().copied().max().unwrap()
}

/// Face opposite vertex `i` of a `k`-simplex.
fn face(s: &Graph<u32>, i: usize, k: usize) -> CanonicalGraph<u32> {
    let i = i as u32;
    if i as usize == k {
        let top: Vec<Edge> = s
            .lengths()
            .unwrap()
            .iter()
            .filter(|(_, &l)| l == i)
            .map(|(e, _)| *e)
            .collect();
        canonical_form(&s.contract_edges(&top).unwrap().0).0
    } else {
        let merged = s.map_lengths(|_, &l| if l > i { l - 1 } else { l });
        canonical_form(&merged).0
    }
}

/// All surjections `{0..m} -> {0..k}` as value vectors.
fn surjections(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; m];
    loop {
        let mut hit = vec![false; k];
        for &x in &cur {
            hit[x] = true;
        }
        if hit.iter().all(|&b| b) {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == m {
                return out;
            }
            cur[i] += 1;
            if cur[i] < k {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_counts() {
        assert_eq!(surjections(3, 1).len(), 1);
        assert_eq!(surjections(3, 2).len(), 6);
        assert_eq!(surjections(3, 3).len(), 6);
        assert_eq!(surjections(4, 2).len(), 14);
    }

    #[test]
    fn small_links() {
        let o = barycentric_oracle(1, 1, 10_000).unwrap();
        assert_eq!(o.counts(), vec![1]);
        assert_eq!(o.betti_rational(), vec![1]);
        let o = barycentric_oracle(0, 4, 10_000).unwrap();
        assert_eq!(o.betti_rational(), vec![3]);
    }

    #[test]
    fn genus_two() {
        let o = barycentric_oracle(2, 0, 10_000).unwrap();
        assert!(o.boundary_squares_to_zero());
        assert_eq!(o.betti_rational(), vec![1, 0, 0]);
    }

    #[test]
    fn bound() {
        assert_eq!(
            barycentric_oracle(0, 6, 10).unwrap_err(),
            ComplexError::ResourceBound(10)
        );
    }
}
