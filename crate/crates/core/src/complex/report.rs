//! JSON-facing summaries of posets, link cells and homology.

use serde::{Deserialize, Serialize};

use super::chain::LinkCell;
use super::oracle::OracleComplex;
use super::poset::StrataPoset;
use crate::graph::io::GraphJson;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub betti: Vec<usize>,
    pub euler: i64,
    pub empty: bool,
    pub chain_dims: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodeReport {
    pub hash: String,
    pub edges: usize,
    pub graph: GraphJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetReport {
    pub g: u32,
    pub n: u32,
    pub nodes: Vec<NodeReport>,
    /// Pairs `[upper, lower]` of canonical hashes.
    pub covers: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub simplex_counts: Vec<usize>,
    pub betti: Vec<usize>,
    pub euler: i64,
}

impl OracleReport {
    pub fn new(o: &OracleComplex) -> Self {
        OracleReport {
            simplex_counts: o.counts(),
            betti: o.betti_rational(),
            euler: o.euler(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinkReport {
    pub g: u32,
    pub n: u32,
    pub cells: Vec<CellReport>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellReport {
    pub hash: String,
    pub dim: usize,
    pub graph: GraphJson,
}

impl PosetReport {
    /// Nodes and covers sorted by hash.
    pub fn new(p: &StrataPoset) -> Self {
        let mut nodes: Vec<NodeReport> = p
            .nodes()
            .iter()
            .map(|c| NodeReport {
                hash: c.hash_hex(),
                edges: c.num_edges(),
                graph: GraphJson::from_graph(c.graph(), None),
            })
            .collect();
        nodes.sort_by(|a, b| a.hash.cmp(&b.hash));
        let mut covers: Vec<[String; 2]> = p
            .covers()
            .iter()
            .map(|&(a, b)| [p.nodes()[a].hash_hex(), p.nodes()[b].hash_hex()])
            .collect();
        covers.sort();
        PosetReport {
            g: p.genus(),
            n: p.num_leaves(),
            nodes,
            covers,
        }
    }
}

pub fn cell_reports(cells: &[LinkCell]) -> Vec<CellReport> {
    let mut out: Vec<CellReport> = cells
        .iter()
        .map(|c| CellReport {
            hash: c.graph.hash_hex(),
            dim: c.dim,
            graph: GraphJson::from_graph(c.graph.graph(), None),
        })
        .collect();
    out.sort_by(|a, b| a.hash.cmp(&b.hash));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_strata_poset;

    #[test]
    fn poset_report_is_sorted() {
        let r = PosetReport::new(&build_strata_poset(0, 4).unwrap());
        assert_eq!(r.nodes.len(), 4);
        assert!(r.nodes.windows(2).all(|w| w[0].hash < w[1].hash));
        assert_eq!(r.covers.len(), 3);
        let text = serde_json::to_string(&r).unwrap();
        let back: PosetReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back.covers, r.covers);
    }

    #[test]
    fn homology_json_shape() {
        let h = HomologyReport {
            betti: vec![1, 0],
            euler: 1,
            empty: false,
            chain_dims: vec![2, 1],
            oracle_agrees: Some(true),
        };
        let v = serde_json::to_value(&h).unwrap();
        assert_eq!(v["betti"], serde_json::json!([1, 0]));
        assert_eq!(v["euler"], 1);
    }
}
