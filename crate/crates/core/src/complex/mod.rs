//! The moduli space of tropical curves as a generalized cone complex, its
//! strata poset, and rational homology of its link.

mod chain;
mod linalg;
mod oracle;
mod point;
mod poset;
pub mod report;

pub use chain::{
    cells_of, cellular_chain_complex, chain_complex_of, homology_link, link_cells, ChainComplex,
    LinkCell,
};
pub use linalg::IntMatrix;
pub use oracle::{barycentric_oracle, OracleComplex};
pub use point::{is_pure, normalize_point, NormalizeMode, TropicalPoint};
pub use poset::{build_strata_poset, build_strata_poset_with, StrataPoset};
pub use report::HomologyReport;

use thiserror::Error;

use crate::graph::GraphError;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ComplexError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cone point has no link representative")]
    NoLinkRepresentative,
    #[error("resource bound exceeded: more than {0} simplices")]
    ResourceBound(usize),
}
