use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::log::neg_log_ratio;
use super::TropError;
use crate::complex::{normalize_point, NormalizeMode, TropicalPoint};
use crate::graph::io::{parse_leaf_label, Id};
use crate::graph::{canonical_form, CanonicalGraph, Edge, Graph, GraphBuilder};
use crate::scalar::{Decimal, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub id: Id,
    #[serde(default)]
    pub genus: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Curve {
    pub id: Id,
    pub sides: [Id; 2],
}

/// Components of a surface cut along a multicurve, the curves with the
/// components on either side, and where the marked points lie.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSystem {
    pub components: Vec<Component>,
    #[serde(default)]
    pub curves: Vec<Curve>,
    /// `"p<k>"` to component id.
    #[serde(default)]
    pub leaves: BTreeMap<String, Id>,
    /// Curve id to hyperbolic length, as decimal text.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lengths: Option<BTreeMap<String, String>>,
}

/// The dual graph with the edge of each curve, in canonical labeling.
#[derive(Clone, Debug)]
pub struct DualGraph {
    pub graph: CanonicalGraph,
    pub genus: u32,
    pub curve_edges: BTreeMap<String, Edge>,
}

/// A positive constant below which curves count as short.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Epsilon(Decimal);

impl Epsilon {
    pub fn new(eps: Decimal) -> Result<Self, TropError> {
        if eps.is_positive() {
            Ok(Epsilon(eps))
        } else {
            Err(TropError::BadEpsilon(eps.to_string()))
        }
    }

    pub fn value(&self) -> &Decimal {
        &self.0
    }
}

impl FromStr for Epsilon {
    type Err = TropError;

    fn from_str(s: &str) -> Result<Self, TropError> {
        let d = Decimal::from_str(s.trim()).map_err(|_| TropError::BadNumber(s.to_string()))?;
        Epsilon::new(d)
    }
}

impl CurveSystem {
    pub fn from_json(text: &str) -> Result<Self, TropError> {
        serde_json::from_str(text).map_err(|e| TropError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("curve system serializes")
    }

    /// The same system without curve `id`; its two sides merge into one
    /// component of summed genus, plus one if both sides were the same.
    pub fn drop_curve(&self, id: &str) -> Result<CurveSystem, TropError> {
        let pos = self
            .curves
            .iter()
            .position(|c| c.id.to_string() == id)
            .ok_or_else(|| TropError::UnknownCurve(id.to_string()))?;
        let [a, b] = self.curves[pos].sides.clone();
        let mut out = self.clone();
        out.curves.remove(pos);
        if let Some(ls) = out.lengths.as_mut() {
            ls.remove(id);
        }
        if a == b {
            let c = out
                .components
                .iter_mut()
                .find(|c| c.id == a)
                .ok_or_else(|| TropError::UnknownComponent(a.to_string()))?;
            c.genus += 1;
            return Ok(out);
        }
        let gb = self
            .components
            .iter()
            .find(|c| c.id == b)
            .ok_or_else(|| TropError::UnknownComponent(b.to_string()))?
            .genus;
        out.components.retain(|c| c.id != b);
        let ca = out
            .components
            .iter_mut()
            .find(|c| c.id == a)
            .ok_or_else(|| TropError::UnknownComponent(a.to_string()))?;
        ca.genus += gb;
        for c in out.curves.iter_mut() {
            for s in c.sides.iter_mut() {
                if *s == b {
                    *s = a.clone();
                }
            }
        }
        for v in out.leaves.values_mut() {
            if *v == b {
                *v = a.clone();
            }
        }
        Ok(out)
    }

    /// The dual graph in builder labeling, with the edge of each curve.
    fn assemble(&self) -> Result<(Graph<Rational>, Vec<(String, Edge)>), TropError> {
        let mut b = GraphBuilder::<Rational>::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        for c in &self.components {
            let key = c.id.to_string();
            if index.insert(key.clone(), b.vertex(c.genus)).is_some() {
                return Err(TropError::DuplicateId(key));
            }
        }
        let vertex = |id: &Id| {
            index
                .get(&id.to_string())
                .copied()
                .ok_or_else(|| TropError::UnknownComponent(id.to_string()))
        };
        let mut edges = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for c in &self.curves {
            let key = c.id.to_string();
            if !seen.insert(key.clone()) {
                return Err(TropError::DuplicateId(key));
            }
            let (u, v) = (vertex(&c.sides[0])?, vertex(&c.sides[1])?);
            edges.push((key, b.edge(u, v)));
        }
        for (label, comp) in &self.leaves {
            let k = parse_leaf_label(label).map_err(|_| TropError::BadLeaf(label.clone()))?;
            b.leaf(vertex(comp)?, k);
        }
        let graph = b.build();
        if self.components.is_empty() || !graph.is_connected() {
            return Err(TropError::Disconnected);
        }
        graph.check()?;
        Ok((graph, edges))
    }

    /// Curve lengths, parsed.
    pub fn parsed_lengths(&self) -> Result<BTreeMap<String, Decimal>, TropError> {
        let Some(ls) = &self.lengths else {
            return Ok(BTreeMap::new());
        };
        ls.iter()
            .map(|(k, v)| {
                Decimal::from_str(v.trim())
                    .map(|d| (k.clone(), d))
                    .map_err(|_| TropError::BadNumber(v.clone()))
            })
            .collect()
    }
}

/// Vertices for components (weighted by genus), edges for curves, leaves for
/// marked points.
pub fn dual_graph(cs: &CurveSystem) -> Result<DualGraph, TropError> {
    let (graph, edges) = cs.assemble()?;
    let genus = graph.genus()?;
    let (canon, iso) = canonical_form(&graph);
    Ok(DualGraph {
        graph: canon,
        genus,
        curve_edges: edges.into_iter().map(|(k, e)| (k, iso.edge(e))).collect(),
    })
}

/// `-ln(ℓ_e / ε)` for every curve, rounded to `precision` digits.
pub fn lambda_lengths(
    cs: &CurveSystem,
    eps: &Epsilon,
    precision: u32,
) -> Result<BTreeMap<String, Decimal>, TropError> {
    let given = cs.parsed_lengths()?;
    let mut out = BTreeMap::new();
    for c in &cs.curves {
        let id = c.id.to_string();
        let l = given.get(&id).ok_or_else(|| TropError::MissingLength(id.clone()))?;
        if !l.is_positive() {
            return Err(TropError::NonPositiveLength(id));
        }
        if l > eps.value() {
            return Err(TropError::NotShort(id));
        }
        out.insert(id, neg_log_ratio(l, eps.value(), precision));
    }
    Ok(out)
}

/// The tropical curve of a system of short curves: the dual graph with edge
/// lengths `-ln(ℓ/ε)`, zero-length edges contracted, no rescaling.
pub fn cgp_lambda(
    cs: &CurveSystem,
    eps: &Epsilon,
    precision: u32,
) -> Result<TropicalPoint<Decimal>, TropError> {
    let lengths = lambda_lengths(cs, eps, precision)?;
    let (graph, edges) = cs.assemble()?;
    let map: BTreeMap<Edge, Decimal> = edges
        .into_iter()
        .map(|(id, e)| (e, lengths[&id].clone()))
        .collect();
    let metric: Graph<Decimal> = graph.without_lengths::<Decimal>().with_lengths(map);
    Ok(normalize_point(&metric, NormalizeMode::Cone)?)
}
