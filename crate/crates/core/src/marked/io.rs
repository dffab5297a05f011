//! JSON and DOT for marked graphs.
//!
//! The JSON extends the graph format with `tree` (edge keys), `loop_words`
//! (edge key to word, read from the first id's end to the second's),
//! `leaf_words` (`"p<k>"` to word) and, when there are no leaves, `base`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Gauge, MarkedError, MarkedGraph, Word};
use crate::graph::io::{graph_to_dot, parse_leaf_label, GraphJson, HalfEdgeNames};
use crate::graph::Edge;
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkingJson {
    #[serde(flatten)]
    pub graph: GraphJson,
    #[serde(default)]
    pub tree: Vec<String>,
    #[serde(default)]
    pub loop_words: BTreeMap<String, String>,
    #[serde(default)]
    pub leaf_words: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<usize>,
}

fn fmt_err(e: impl std::fmt::Display) -> MarkedError {
    MarkedError::Format(e.to_string())
}

impl MarkingJson {
    pub fn to_marked(&self) -> Result<MarkedGraph, MarkedError> {
        let (graph, names) = self.graph.to_graph::<Rational>().map_err(fmt_err)?;
        graph.check()?;
        let oriented = |key: &str| -> Result<(Edge, bool), MarkedError> {
            let (a, b) = names.parse_edge_key(key).map_err(fmt_err)?;
            let e = Edge::new(a, b);
            if !graph.is_edge(e) {
                return Err(MarkedError::Format(format!("{key:?} is not an edge")));
            }
            Ok((e, a == e.lo()))
        };
        let mut tree = BTreeSet::new();
        for key in &self.tree {
            tree.insert(oriented(key)?.0);
        }
        let mut gauge = Gauge::default();
        for (key, text) in &self.loop_words {
            let (e, forward) = oriented(key)?;
            let w: Word = text.parse().map_err(fmt_err)?;
            gauge.edges.insert(e, if forward { w } else { w.inverse() });
        }
        if let Some(e) = graph
            .edges()
            .into_iter()
            .find(|e| !tree.contains(e) && !gauge.edges.contains_key(e))
        {
            return Err(MarkedError::MissingWord(e));
        }
        for (label, text) in &self.leaf_words {
            let k = parse_leaf_label(label).map_err(fmt_err)?;
            gauge.leaves.insert(k, text.parse().map_err(fmt_err)?);
        }
        MarkedGraph::from_gauge(graph, tree, self.base.unwrap_or(0), &gauge)
    }

    pub fn from_marked(m: &MarkedGraph) -> Self {
        let names = HalfEdgeNames::numeric(m.graph().num_half_edges());
        let loop_words = m
            .words()
            .iter()
            .map(|(e, w)| {
                let (key, reversed) = names.edge_key(*e);
                (key, if reversed { w.inverse() } else { w.clone() }.to_string())
            })
            .collect();
        MarkingJson {
            graph: GraphJson::from_graph(m.graph(), Some(&names)),
            tree: m.tree().iter().map(|e| names.edge_key(*e).0).collect(),
            loop_words,
            leaf_words: m
                .leaf_words()
                .iter()
                .map(|(k, w)| (format!("p{k}"), w.to_string()))
                .collect(),
            base: (m.num_leaves() == 0).then_some(m.base()),
        }
    }
}

pub fn marked_from_json(text: &str) -> Result<MarkedGraph, MarkedError> {
    let raw: MarkingJson = serde_json::from_str(text).map_err(fmt_err)?;
    raw.to_marked()
}

pub fn marked_to_json(m: &MarkedGraph) -> serde_json::Value {
    serde_json::to_value(MarkingJson::from_marked(m)).expect("marking serializes")
}

/// DOT text with non-tree edges labeled by their words and lengths.
pub fn marked_to_dot(m: &MarkedGraph, name: &str) -> String {
    let label = |e: Edge| {
        let l = m.graph().length(e).map(|l| l.to_string()).unwrap_or_default();
        match m.words().get(&e) {
            Some(w) => Some(format!("{w} ({l})")),
            None => Some(format!("tree ({l})")),
        }
    };
    graph_to_dot(m.graph(), name, &label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marked::identity_marked_rose;

    #[test]
    fn round_trip() {
        for (g, n) in [(2, 0), (1, 1), (0, 3), (2, 2)] {
            let m = identity_marked_rose(g, n).unwrap();
            let text = marked_to_json(&m).to_string();
            assert_eq!(marked_from_json(&text).unwrap(), m);
        }
    }

    #[test]
    fn named_theta() {
        let text = r#"{"half_edges": ["a", "b", "c", "A", "B", "C"],
            "vertices": [["a", "b", "c"], ["A", "B", "C"]],
            "involution": {"a": "A", "A": "a", "b": "B", "B": "b", "c": "C", "C": "c"},
            "lengths": {"a,A": "1/3", "b,B": "1/3", "c,C": "1/3"},
            "tree": ["a,A"], "loop_words": {"b,B": "a1", "C,c": "A2"}}"#;
        let m = marked_from_json(text).unwrap();
        assert_eq!(m.genus(), 2);
        // the word on c was given against the lo-to-hi orientation
        assert_eq!(m.word(Edge::new(2, 5)), "a2".parse().unwrap());
        assert!(marked_to_dot(&m, "theta").contains("a1 (1/3)"));
    }

    #[test]
    fn violations() {
        let base = r#""half_edges": [0, 1], "vertices": [[0, 1]], "involution": {"0": 1, "1": 0},
            "lengths": {"0,1": "1"}, "leaves": {}"#;
        let missing = format!("{{{base}}}");
        assert!(matches!(marked_from_json(&missing), Err(MarkedError::Graph(_)) | Err(MarkedError::MissingWord(_))));
        let rose = r#"{"half_edges": [0, 1, 2, 3], "vertices": [[0, 1, 2, 3]],
            "involution": {"0": 1, "1": 0, "2": 3, "3": 2}, "lengths": {"0,1": "1/2", "2,3": "1/2"},
            "loop_words": {"0,1": "a1 a1", "2,3": "a2"}}"#;
        assert_eq!(marked_from_json(rose), Err(MarkedError::NotABasis));
        let rose = rose.replace("\"a1 a1\"", "\"a1\"");
        assert!(marked_from_json(&rose).is_ok());
        let unmarked = rose.replace(", \"2,3\": \"a2\"", "");
        assert_eq!(marked_from_json(&unmarked), Err(MarkedError::MissingWord(Edge::new(2, 3))));
    }
}
