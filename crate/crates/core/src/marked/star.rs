use num_traits::Zero;
use rayon::prelude::*;

use super::free_group::Word;
use super::marking::{equivalent_strict, MarkedGraph};
use super::MarkedError;
use crate::graph::{automorphisms, canonical_form, Edge, GraphIso};
use crate::scalar::Rational;

/// All single-edge blow-ups of `m`: a vertex's half-edges split into two
/// parts of size at least two, joined by a new edge of length zero that
/// joins the spanning tree. One representative per class, the least in
/// canonical labeling, sorted.
pub fn blowups(m: &MarkedGraph) -> Result<Vec<MarkedGraph>, MarkedError> {
    let lengths = m.graph.lengths().unwrap();
    if let Some((e, _)) = lengths.iter().find(|(_, l)| l.is_zero()) {
        return Err(MarkedError::ZeroLengthEdge(*e));
    }
    let splits: Vec<(usize, Vec<usize>)> = (0..m.graph.num_vertices())
        .flat_map(|v| {
            let hs = m.graph.vertex(v).to_vec();
            let k = hs.len();
            let mut out = Vec::new();
            if k >= 4 {
                // subsets containing the first half-edge, to skip mirror images
                for mask in 0u64..(1 << (k - 1)) {
                    let part: Vec<usize> = std::iter::once(hs[0])
                        .chain((1..k).filter(|i| mask >> (i - 1) & 1 == 1).map(|i| hs[i]))
                        .collect();
                    if part.len() >= 2 && k - part.len() >= 2 {
                        out.push((v, part));
                    }
                }
            }
            out
        })
        .collect();
    let candidates: Vec<MarkedGraph> = splits
        .par_iter()
        .map(|(v, part)| split_vertex(m, *v, part))
        .collect::<Result<_, _>>()?;

    let mut classes: Vec<MarkedGraph> = Vec::new();
    let mut keyed: Vec<MarkedGraph> = candidates.into_par_iter().map(|c| canonical_marking(&c)).collect();
    keyed.sort();
    for c in keyed {
        if !classes.iter().any(|k| equivalent_strict(k, &c).is_some()) {
            classes.push(c);
        }
    }
    Ok(classes)
}

fn split_vertex(m: &MarkedGraph, v: usize, part: &[usize]) -> Result<MarkedGraph, MarkedError> {
    let mut graph = m.graph.clone();
    let h = graph.num_half_edges();
    let rest: Vec<usize> = graph.vertices[v].iter().copied().filter(|x| !part.contains(x)).collect();
    let mut kept = part.to_vec();
    kept.push(h);
    graph.vertices[v] = kept;
    graph.vertices.push(rest.into_iter().chain([h + 1]).collect());
    graph.weights.push(0);
    graph.involution.push(h + 1);
    graph.involution.push(h);
    let new_edge = Edge::new(h, h + 1);
    graph.lengths.as_mut().unwrap().insert(new_edge, Rational::zero());
    let mut tree = m.tree.clone();
    tree.insert(new_edge);
    MarkedGraph::new(graph, tree, m.words.clone(), m.leaf_words.clone(), m.base)
}

/// `m` carried onto the canonical labeling of its metric graph.
pub fn canonical_marking(m: &MarkedGraph) -> MarkedGraph {
    let (_, iso) = canonical_form(m.graph());
    m.transport(&iso)
}

/// A length- and leaf-preserving automorphism together with its action on
/// the free group: `a_j` goes to `images[j - 1]`. When `n = 0` the images are
/// defined up to a common conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerElement {
    pub iso: GraphIso,
    pub images: Vec<Word>,
}

#[derive(Clone, Debug)]
pub struct Stabilizer {
    pub generators: Vec<GraphIso>,
    pub elements: Vec<StabilizerElement>,
}

impl Stabilizer {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

pub fn stabilizer(m: &MarkedGraph) -> Stabilizer {
    let group = automorphisms(m.graph(), true);
    let inverse = m.inverse_words();
    let elements = group
        .elements
        .iter()
        .map(|iso| {
            let (words, _) = m.pulled_back(m, iso);
            let pulled: Vec<Word> = words.into_values().collect();
            StabilizerElement {
                iso: iso.clone(),
                images: inverse.iter().map(|w| w.substitute(&pulled)).collect(),
            }
        })
        .collect();
    Stabilizer {
        generators: group.generators,
        elements,
    }
}
