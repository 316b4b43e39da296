use dirgap_core::cheeger::{brute_force_local_cheeger_constant, cheeger_ratio};
use dirgap_core::clustering::{embed, rank_nodes, two_means};
use dirgap_core::graph::{ball, build_graph, edge_boundary, resolve_boundary, volume, BoundaryRule, Graph, NodeSet};
use dirgap_core::ingest::{format_edge_list, format_float, parse_edge_list_str};
use dirgap_core::spectral::{build_dirichlet_laplacian, build_normalized_laplacian, EigenSolver};
use proptest::prelude::*;

/// Graphs on up to `max_n` labels from random pairs; may be disconnected,
/// never has isolated nodes.
fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    prop::collection::vec((0..max_n, 0..max_n), 1..3 * max_n).prop_filter_map("only self-loops", |pairs| {
        let pairs: Vec<(String, String)> =
            pairs.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (a.to_string(), b.to_string())).collect();
        if pairs.is_empty() {
            return None;
        }
        Some(build_graph(pairs).unwrap().0)
    })
}

fn graph_and_set(max_n: usize) -> impl Strategy<Value = (Graph, NodeSet)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.node_count();
        (Just(g), prop::collection::vec(any::<bool>(), n))
            .prop_map(move |(g, mask)| (g, NodeSet::new(n, (0..n).filter(|&v| mask[v])).unwrap()))
    })
}

proptest! {
    #[test]
    fn boundary_is_symmetric_under_complement((g, s) in graph_and_set(25)) {
        prop_assert_eq!(edge_boundary(&g, &s), edge_boundary(&g, &s.complement()));
    }

    #[test]
    fn volumes_sum_to_twice_edges((g, s) in graph_and_set(25)) {
        prop_assert_eq!(volume(&g, &s) + volume(&g, &s.complement()), 2 * g.edge_count());
    }

    #[test]
    fn balls_grow((g, c, r) in graph(25).prop_flat_map(|g| { let n = g.node_count(); (Just(g), 0..n, 0usize..6) })) {
        let small = ball(&g, c, r);
        let big = ball(&g, c, r + 1);
        prop_assert!(small.contains(c));
        prop_assert!(small.is_subset(&big));
    }

    #[test]
    fn cheeger_ratio_symmetric((g, s) in graph_and_set(20)) {
        prop_assume!(!s.is_empty() && !s.is_full());
        let a = cheeger_ratio(&g, &s).unwrap();
        let b = cheeger_ratio(&g, &s.complement()).unwrap();
        prop_assert!(a == b || (a.is_nan() && b.is_nan()));
    }

    #[test]
    fn edge_list_round_trip(g in graph(30)) {
        let (back, report) = parse_edge_list_str(&format_edge_list(&g)).unwrap();
        prop_assert_eq!(report.duplicates + report.self_loops, 0);
        prop_assert_eq!(back, g);
    }

    #[test]
    fn laplacian_spectrum_in_range(g in graph(20)) {
        let m = build_normalized_laplacian(&g).unwrap();
        let r = EigenSolver::default().smallest(&m, m.dim()).unwrap();
        prop_assert!(r.values[0].abs() < 1e-10);
        prop_assert!(r.values.iter().all(|&l| (-1e-9..=2.0 + 1e-9).contains(&l)));
        prop_assert!(r.orthonormality_error() < 1e-10);
    }

    /// A smaller interior is a principal submatrix, so its smallest
    /// eigenvalue cannot go down.
    #[test]
    fn dirichlet_gap_grows_with_boundary((g, extra) in graph(18).prop_flat_map(|g| { let n = g.node_count(); (Just(g), 0..n) })) {
        let small = resolve_boundary(&g, &BoundaryRule::Explicit(vec![]));
        prop_assume!(small.is_ok());
        let solver = EigenSolver::default();
        let before = solver.smallest(&build_dirichlet_laplacian(&g, &small.unwrap()).unwrap(), 1).unwrap().values[0];
        let b = resolve_boundary(&g, &BoundaryRule::Explicit(vec![extra])).unwrap();
        let after = solver.smallest(&build_dirichlet_laplacian(&g, &b).unwrap(), 1).unwrap().values[0];
        prop_assert!(after >= before - 1e-12);
    }

    #[test]
    fn local_cheeger_upper_bound((g, boundary) in graph(12).prop_flat_map(|g| {
        let n = g.node_count();
        (Just(g), prop::collection::vec(0..n, 1..n.max(2)))
    })) {
        let b = resolve_boundary(&g, &BoundaryRule::Explicit(boundary));
        prop_assume!(b.is_ok());
        let b = b.unwrap();
        let h = brute_force_local_cheeger_constant(&g, &b, 12).unwrap().h;
        let lambda = EigenSolver::default().smallest(&build_dirichlet_laplacian(&g, &b).unwrap(), 1).unwrap().values[0];
        prop_assert!(h >= lambda - 1e-12);
        prop_assert!(lambda >= h * h / 2.0 - 1e-9);
    }

    #[test]
    fn float_format_keeps_six_digits(x in prop::num::f64::NORMAL) {
        let back: f64 = format_float(x).parse().unwrap();
        prop_assert!(((back - x) / x).abs() <= 5e-6);
    }

    #[test]
    fn ranking_is_a_permutation(g in graph(20)) {
        let m = build_normalized_laplacian(&g).unwrap();
        prop_assume!(m.dim() >= 2);
        let e = embed(&g, &m).unwrap();
        let km = two_means(&e);
        prop_assume!(km.is_ok());
        let mut order = rank_nodes(&e, &km.unwrap());
        order.sort_unstable();
        prop_assert_eq!(order, (0..g.node_count()).collect::<Vec<_>>());
    }
}
