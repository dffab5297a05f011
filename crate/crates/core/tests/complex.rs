mod common;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::{shuffled, stable_types};
use tropmod::complex::{
    barycentric_oracle, cellular_chain_complex, link_cells, normalize_point, ComplexError,
    NormalizeMode,
};
use tropmod::graph::{enumerate_stable_graphs, Edge, Graph};
use tropmod::Rational;

fn pool() -> &'static [(u32, Graph)] {
    static POOL: OnceLock<Vec<(u32, Graph)>> = OnceLock::new();
    POOL.get_or_init(|| {
        stable_types(3)
            .into_iter()
            .flat_map(|(g, n)| {
                enumerate_stable_graphs(g, n, false)
                    .unwrap()
                    .into_iter()
                    .map(move |c| (g, c.into_graph()))
            })
            .collect()
    })
}

/// A relabeled class with lengths in `{0, 1/4, ..., 2}`, zeros allowed.
fn metric() -> impl Strategy<Value = (u32, Graph)> {
    (0..pool().len(), any::<u64>(), prop::collection::vec(0u32..9, 6)).prop_map(|(i, seed, ks)| {
        let (g, graph) = &pool()[i];
        let graph = shuffled(graph, &mut StdRng::seed_from_u64(seed));
        let lengths: BTreeMap<Edge, Rational> = graph
            .edges()
            .into_iter()
            .zip(ks)
            .map(|(e, k)| (e, Rational::new(k.into(), 4.into())))
            .collect();
        (*g, graph.with_lengths(lengths))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cone_normalization_is_idempotent((g, graph) in metric()) {
        let p = normalize_point(&graph, NormalizeMode::Cone).unwrap();
        prop_assert_eq!(p.graph().genus(), Ok(g));
        prop_assert!(p.graph().is_stable());
        prop_assert!(p.graph().edges().iter().all(|e| !p.length(*e).is_zero()));
        prop_assert_eq!(p.total_length(), graph.total_length().unwrap());
        let q = normalize_point(p.graph().graph(), NormalizeMode::Cone).unwrap();
        prop_assert_eq!(q, p);
    }

    #[test]
    fn link_normalization((g, graph) in metric()) {
        match normalize_point(&graph, NormalizeMode::Link) {
            Ok(p) => {
                prop_assert_eq!(p.graph().genus(), Ok(g));
                prop_assert!(p.total_length().is_one());
                let q = normalize_point(p.graph().graph(), NormalizeMode::Link).unwrap();
                prop_assert_eq!(q, p);
            }
            Err(e) => {
                prop_assert_eq!(e, ComplexError::NoLinkRepresentative);
                prop_assert!(graph.total_length().unwrap().is_zero());
            }
        }
    }

    #[test]
    fn rescaling_does_not_move_link_points((_g, graph) in metric(), k in 1u32..9) {
        prop_assume!(!graph.total_length().unwrap().is_zero());
        let factor = Rational::new(k.into(), 3.into());
        let scaled = graph.map_lengths(|_, l| l * &factor);
        prop_assert_eq!(
            normalize_point(&scaled, NormalizeMode::Link).unwrap(),
            normalize_point(&graph, NormalizeMode::Link).unwrap()
        );
    }
}

#[test]
fn link_dimension() {
    for (g, n) in stable_types(4) {
        let max = link_cells(g, n).unwrap().iter().map(|c| c.dim).max();
        let expect = ((3 * g + n) as usize).checked_sub(4);
        assert_eq!(max, expect, "({g},{n})");
    }
}

#[test]
fn boundaries_compose_to_zero() {
    for (g, n) in stable_types(4) {
        let cx = cellular_chain_complex(g, n).unwrap();
        assert!(cx.boundary_squares_to_zero(), "({g},{n})");
    }
}

#[test]
fn euler_characteristics_agree() {
    for (g, n) in stable_types(3) {
        let cx = cellular_chain_complex(g, n).unwrap();
        let oracle = barycentric_oracle(g, n, 1_000_000).unwrap();
        let alternating: i64 = cx
            .betti::<Rational>()
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        assert_eq!(cx.euler(), oracle.euler(), "({g},{n})");
        assert_eq!(cx.euler(), alternating, "({g},{n})");
    }
}

#[test]
fn oracle_respects_its_bound() {
    assert_eq!(barycentric_oracle(0, 6, 100).unwrap_err(), ComplexError::ResourceBound(100));
}

/// Larger types, cellular side only; the barycentric oracle confirms these
/// in release builds but takes too long for the default test run.
#[test]
fn larger_betti_numbers() {
    for ((g, n), want) in [
        ((1, 4), vec![1, 0, 0, 3]),
        ((3, 0), vec![1, 0, 0, 0, 0, 1]),
        ((0, 7), vec![1, 0, 0, 120]),
    ] {
        let cx = cellular_chain_complex(g, n).unwrap();
        assert!(cx.boundary_squares_to_zero());
        assert_eq!(cx.betti::<Rational>(), want, "({g},{n})");
    }
}
