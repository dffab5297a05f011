use std::collections::HashMap;

use rayon::prelude::*;

use super::linalg::IntMatrix;
use super::poset::{build_strata_poset, StrataPoset};
use super::report::HomologyReport;
use crate::graph::{automorphisms, canonical_form, permutation_sign, CanonicalGraph, GraphError};
use crate::scalar::{Field, Rational};

/// A cell of the link: a stable class with at least one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkCell {
    pub graph: CanonicalGraph,
    pub dim: usize,
}

pub fn link_cells(g: u32, n: u32) -> Result<Vec<LinkCell>, GraphError> {
    let poset = build_strata_poset(g, n)?;
    Ok(cells_of(&poset))
}

/// The link cells of an already built poset.
pub fn cells_of(poset: &StrataPoset) -> Vec<LinkCell> {
    poset
        .nodes()
        .iter()
        .filter(|c| c.num_edges() > 0)
        .map(|c| LinkCell {
            graph: c.clone(),
            dim: c.num_edges() - 1,
        })
        .collect()
}

/// Rational cellular chains of the link. `cells[k]` lists the `k`-cells
/// with no odd edge symmetry; `boundaries[k]` maps `C_k` to `C_{k-1}`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub cells: Vec<Vec<CanonicalGraph>>,
    pub boundaries: Vec<IntMatrix>,
}

fn orientable(c: &CanonicalGraph) -> bool {
    automorphisms(c.graph(), false)
        .elements
        .iter()
        .all(|a| a.edge_permutation_sign(c.graph()) == 1)
}

pub fn cellular_chain_complex(g: u32, n: u32) -> Result<ChainComplex, GraphError> {
    let poset = build_strata_poset(g, n)?;
    Ok(chain_complex_of(&poset))
}

pub fn chain_complex_of(poset: &StrataPoset) -> ChainComplex {
    let top = poset.nodes().iter().map(|c| c.num_edges()).max().unwrap_or(0);
    let keep: Vec<bool> = poset.nodes().par_iter().map(orientable).collect();
    let mut cells: Vec<Vec<CanonicalGraph>> = vec![Vec::new(); top];
    for (c, ok) in poset.nodes().iter().zip(keep) {
        if ok && c.num_edges() > 0 {
            cells[c.num_edges() - 1].push(c.clone());
        }
    }
    let boundaries = (0..top)
        .into_par_iter()
        .map(|k| {
            if k == 0 {
                return IntMatrix::zeros(0, cells[0].len());
            }
            let rows: HashMap<&CanonicalGraph, usize> =
                cells[k - 1].iter().enumerate().map(|(i, c)| (c, i)).collect();
            let mut m = IntMatrix::zeros(cells[k - 1].len(), cells[k].len());
            for (col, c) in cells[k].iter().enumerate() {
                for (face, coeff) in boundary_terms(c) {
                    if let Some(&row) = rows.get(&face) {
                        m.add(row, col, coeff);
                    }
                }
            }
            m
        })
        .collect();
    ChainComplex { cells, boundaries }
}

/// Faces of `c` with their orientation coefficients. Contracting the `j`-th
/// edge contributes `(-1)^j` times the sign of the induced edge order on the
/// canonical form of the face.
fn boundary_terms(c: &CanonicalGraph) -> Vec<(CanonicalGraph, i64)> {
    let edges = c.edges();
    edges
        .iter()
        .enumerate()
        .map(|(j, &e)| {
            let (contracted, hmap) = c.contract_edge_mapped(e).unwrap();
            let (face, iso) = canonical_form(&contracted);
            let face_edges = face.edges();
            let pos: HashMap<_, usize> = face_edges.iter().enumerate().map(|(i, f)| (*f, i)).collect();
            let perm: Vec<usize> = edges
                .iter()
                .filter(|&&f| f != e)
                .map(|f| {
                    let lo = iso.apply(hmap[f.lo()].unwrap());
                    let hi = iso.apply(hmap[f.hi()].unwrap());
                    pos[&crate::graph::Edge::new(lo, hi)]
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            (face, sign * permutation_sign(&perm) as i64)
        })
        .collect()
}

impl ChainComplex {
    pub fn dims(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Checks that consecutive boundary maps compose to zero.
    pub fn boundary_squares_to_zero(&self) -> bool {
        self.boundaries
            .windows(2)
            .all(|w| w[0].rows() == 0 || w[0].mul(&w[1]).is_zero())
    }

    pub fn ranks<F: Field>(&self) -> Vec<usize> {
        self.boundaries.par_iter().map(|m| m.rank::<F>()).collect()
    }

    pub fn betti<F: Field>(&self) -> Vec<usize> {
        betti_from(&self.dims(), &self.ranks::<F>())
    }

    pub fn euler(&self) -> i64 {
        euler_from(&self.dims())
    }

    pub fn report(&self) -> HomologyReport {
        HomologyReport {
            betti: self.betti::<Rational>(),
            euler: self.euler(),
            empty: self.is_empty(),
            chain_dims: self.dims(),
            oracle_agrees: None,
        }
    }
}

pub(crate) fn betti_from(dims: &[usize], ranks: &[usize]) -> Vec<usize> {
    (0..dims.len())
        .map(|k| dims[k] - ranks[k] - ranks.get(k + 1).copied().unwrap_or(0))
        .collect()
}

pub(crate) fn euler_from(dims: &[usize]) -> i64 {
    dims.iter()
        .enumerate()
        .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

/// Rational Betti numbers of the link.
pub fn homology_link(g: u32, n: u32) -> Result<HomologyReport, GraphError> {
    Ok(cellular_chain_complex(g, n)?.report())
}
