//! JSON and DOT forms of graphs.
//!
//! ```json
//! {"half_edges": [0, 1, 2], "vertices": [[0, 1, 2]], "involution": {"0": 1, "1": 0, "2": 2},
//!  "leaves": {"2": "p1"}, "weights": [0], "lengths": {"0,1": "1"}}
//! ```
//!
//! Half-edge ids may be JSON numbers or strings. An edge key is the pair of
//! its half-edge ids joined by a comma, smaller id first (numeric ids compare
//! as numbers). Missing involution entries are fixed points; missing weights
//! are zero.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Edge, Graph, HalfEdge};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Id {
    Num(u64),
    Str(String),
}

impl fmt::Display for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Id::Num(x) => write!(f, "{x}"),
            Id::Str(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub half_edges: Vec<Id>,
    pub vertices: Vec<Vec<Id>>,
    #[serde(default)]
    pub involution: BTreeMap<String, Id>,
    #[serde(default)]
    pub leaves: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lengths: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown half-edge id {0:?}")]
    UnknownHalfEdge(String),
    #[error("half-edge id {0:?} listed twice")]
    DuplicateId(String),
    #[error("bad leaf label {0:?}, expected p<k>")]
    BadLeafLabel(String),
    #[error("bad edge key {0:?}, expected \"id,id\"")]
    BadEdgeKey(String),
    #[error("bad number {0:?}")]
    BadNumber(String),
    #[error("{0}")]
    Other(String),
}

/// Names of half-edges as they appear in the input, indexed by half-edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfEdgeNames {
    names: Vec<String>,
    index: HashMap<String, HalfEdge>,
}

impl HalfEdgeNames {
    pub fn numeric(n: usize) -> Self {
        Self::from_names((0..n).map(|x| x.to_string()).collect())
    }

    fn from_names(names: Vec<String>) -> Self {
        let index = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        HalfEdgeNames { names, index }
    }

    pub fn name(&self, h: HalfEdge) -> &str {
        &self.names[h]
    }

    pub fn lookup(&self, s: &str) -> Result<HalfEdge, FormatError> {
        self.index
            .get(s)
            .copied()
            .ok_or_else(|| FormatError::UnknownHalfEdge(s.to_string()))
    }

    /// Parse `"a,b"` into the two half-edges in the order written.
    pub fn parse_edge_key(&self, key: &str) -> Result<(HalfEdge, HalfEdge), FormatError> {
        let mut it = key.split(',');
        match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => Ok((self.lookup(a.trim())?, self.lookup(b.trim())?)),
            _ => Err(FormatError::BadEdgeKey(key.to_string())),
        }
    }

    /// The key of `e` with its halves in id order, and whether that order
    /// is reversed relative to `(e.lo(), e.hi())`.
    pub fn edge_key(&self, e: Edge) -> (String, bool) {
        let (a, b) = (self.name(e.lo()), self.name(e.hi()));
        if compare_ids(a, b) == Ordering::Greater {
            (format!("{b},{a}"), true)
        } else {
            (format!("{a},{b}"), false)
        }
    }
}

fn compare_ids(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        _ => a.cmp(b),
    }
}

pub fn parse_leaf_label(s: &str) -> Result<u32, FormatError> {
    s.strip_prefix('p')
        .and_then(|k| k.parse().ok())
        .ok_or_else(|| FormatError::BadLeafLabel(s.to_string()))
}

impl GraphJson {
    /// Convert to a graph; the result is not validated.
    pub fn to_graph<L: Scalar + FromStr>(&self) -> Result<(Graph<L>, HalfEdgeNames), FormatError> {
        let names: Vec<String> = self.half_edges.iter().map(|i| i.to_string()).collect();
        let table = HalfEdgeNames::from_names(names.clone());
        if table.index.len() != names.len() {
            let mut seen = std::collections::HashSet::new();
            let dup = names.iter().find(|s| !seen.insert(*s)).unwrap();
            return Err(FormatError::DuplicateId(dup.clone()));
        }
        let h = names.len();
        let vertices = self
            .vertices
            .iter()
            .map(|part| {
                part.iter()
                    .map(|id| table.lookup(&id.to_string()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut involution: Vec<HalfEdge> = (0..h).collect();
        for (k, v) in &self.involution {
            involution[table.lookup(k)?] = table.lookup(&v.to_string())?;
        }
        let mut leaves = BTreeMap::new();
        for (k, v) in &self.leaves {
            leaves.insert(table.lookup(k)?, parse_leaf_label(v)?);
        }
        let weights = self
            .weights
            .clone()
            .unwrap_or_else(|| vec![0; vertices.len()]);
        let mut graph = Graph::from_parts(vertices, involution, leaves, weights);
        if let Some(ls) = &self.lengths {
            let mut lengths = BTreeMap::new();
            for (k, v) in ls {
                let (a, b) = table.parse_edge_key(k)?;
                let l: L = v
                    .trim()
                    .parse()
                    .map_err(|_| FormatError::BadNumber(v.clone()))?;
                lengths.insert(Edge::new(a, b), l);
            }
            graph = graph.with_lengths(lengths);
        }
        Ok((graph, table))
    }

    pub fn from_graph<L: Scalar>(g: &Graph<L>, names: Option<&HalfEdgeNames>) -> Self {
        let numeric;
        let names = match names {
            Some(n) => n,
            None => {
                numeric = HalfEdgeNames::numeric(g.num_half_edges());
                &numeric
            }
        };
        let id = |h: HalfEdge| -> Id {
            let s = names.name(h);
            match s.parse::<u64>() {
                Ok(x) if x.to_string() == s => Id::Num(x),
                _ => Id::Str(s.to_string()),
            }
        };
        GraphJson {
            half_edges: (0..g.num_half_edges()).map(id).collect(),
            vertices: g
                .vertices()
                .iter()
                .map(|p| p.iter().map(|&x| id(x)).collect())
                .collect(),
            involution: (0..g.num_half_edges())
                .map(|x| (names.name(x).to_string(), id(g.partner(x))))
                .collect(),
            leaves: g
                .leaves()
                .map(|(x, k)| (names.name(x).to_string(), format!("p{k}")))
                .collect(),
            weights: Some(g.weights().to_vec()),
            lengths: g.lengths().map(|ls| {
                ls.iter()
                    .map(|(e, l)| (names.edge_key(*e).0, l.to_string()))
                    .collect()
            }),
        }
    }
}

pub fn graph_to_json<L: Scalar>(g: &Graph<L>) -> serde_json::Value {
    serde_json::to_value(GraphJson::from_graph(g, None)).expect("graph serializes")
}

pub fn graph_from_json<L: Scalar + FromStr>(s: &str) -> Result<(Graph<L>, HalfEdgeNames), FormatError> {
    let raw: GraphJson = serde_json::from_str(s)?;
    raw.to_graph()
}

/// DOT text for `g`. Vertices show their weight; leaves are terminal nodes.
/// `edge_label` overrides the default label (the length, if any).
pub fn graph_to_dot<L: Scalar>(
    g: &Graph<L>,
    name: &str,
    edge_label: &dyn Fn(Edge) -> Option<String>,
) -> String {
    let mut out = String::new();
    writeln!(out, "graph {name} {{").unwrap();
    for (v, w) in g.weights().iter().enumerate() {
        writeln!(out, "  v{v} [label=\"w={w}\"];").unwrap();
    }
    let vm = g.vertex_map();
    for (h, k) in g.leaves() {
        writeln!(out, "  p{k} [shape=plaintext, label=\"p{k}\"];").unwrap();
        writeln!(out, "  v{} -- p{k};", vm[h]).unwrap();
    }
    for e in g.edges() {
        let label = edge_label(e).or_else(|| g.length(e).map(|l| l.to_string()));
        match label {
            Some(l) => writeln!(out, "  v{} -- v{} [label=\"{l}\"];", vm[e.lo()], vm[e.hi()]),
            None => writeln!(out, "  v{} -- v{};", vm[e.lo()], vm[e.hi()]),
        }
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{GraphBuilder, Violation};
    use crate::scalar::Rational;

    #[test]
    fn named_rose_parses() {
        let text = r#"{"half_edges": ["a", "A", "b", "B"], "vertices": [["a", "A", "b", "B"]],
            "involution": {"a": "A", "A": "a", "b": "B", "B": "b"}, "weights": [0],
            "lengths": {"a,A": "1/3", "B,b": "2/3"}}"#;
        let (g, names): (Graph<Rational>, _) = graph_from_json(text).unwrap();
        assert!(g.is_valid());
        assert_eq!(g.betti_number(), Ok(2));
        assert_eq!(names.name(2), "b");
        assert_eq!(g.total_length(), Some(Rational::from_integer(1.into())));
    }

    #[test]
    fn unlabeled_fixed_point_is_a_violation() {
        let text = r#"{"half_edges": [0, 1, 2], "vertices": [[0, 1, 2]], "involution": {"0": 1, "1": 0}}"#;
        let (g, _): (Graph<Rational>, _) = graph_from_json(text).unwrap();
        assert_eq!(g.validate()[0], Violation::UnlabeledLeaf(2));
    }

    #[test]
    fn json_round_trip() {
        let mut b = GraphBuilder::new();
        let u = b.vertex(1);
        let v = b.vertex(0);
        b.edge_with_length(u, v, Rational::new(1.into(), 3.into()));
        b.edge_with_length(v, v, Rational::new(2.into(), 3.into()));
        b.leaf(v, 1);
        let g = b.build();
        let text = serde_json::to_string(&graph_to_json(&g)).unwrap();
        let (back, _): (Graph<Rational>, _) = graph_from_json(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn dot_output() {
        let mut b: GraphBuilder<Rational> = GraphBuilder::new();
        let u = b.vertex(2);
        b.leaf(u, 1);
        let dot = graph_to_dot(&b.build(), "G", &|_| None);
        assert!(dot.contains("v0 [label=\"w=2\"]"));
        assert!(dot.contains("v0 -- p1"));
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(
            graph_from_json::<Rational>(r#"{"half_edges": [0], "vertices": [[1]]}"#),
            Err(FormatError::UnknownHalfEdge(_))
        ));
        assert!(matches!(
            graph_from_json::<Rational>(r#"{"half_edges": [0], "vertices": [[0]], "leaves": {"0": "q1"}}"#),
            Err(FormatError::BadLeafLabel(_))
        ));
        assert!(matches!(
            graph_from_json::<Rational>("{"),
            Err(FormatError::Json(_))
        ));
    }
}
