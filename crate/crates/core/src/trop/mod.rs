//! Dual graphs of curve systems and the logarithmic map to tropical curves.

mod curves;
pub mod log;

pub use curves::{
    cgp_lambda, dual_graph, lambda_lengths, Component, Curve, CurveSystem, DualGraph, Epsilon,
};

use thiserror::Error;

use crate::complex::ComplexError;
use crate::graph::GraphError;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum TropError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("malformed curve system: {0}")]
    Json(String),
    #[error("unknown component {0}")]
    UnknownComponent(String),
    #[error("unknown curve {0}")]
    UnknownCurve(String),
    #[error("id {0} used twice")]
    DuplicateId(String),
    #[error("bad leaf label {0:?}, expected p<k>")]
    BadLeaf(String),
    #[error("incidence structure is disconnected")]
    Disconnected,
    #[error("no length for curve {0}")]
    MissingLength(String),
    #[error("curve {0} has non-positive length")]
    NonPositiveLength(String),
    #[error("curve {0} not ε-short")]
    NotShort(String),
    #[error("ε must be positive, got {0}")]
    BadEpsilon(String),
    #[error("bad number {0:?}")]
    BadNumber(String),
}
