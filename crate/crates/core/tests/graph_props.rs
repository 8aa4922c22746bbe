use std::collections::BTreeSet;

use proptest::prelude::*;
use rumor_core::graph::{homogeneous_count, SignedGraph};

fn params() -> impl Strategy<Value = (usize, usize, f64, u64)> {
    (1usize..=5).prop_flat_map(|half| {
        let z = 2 * half;
        (z + 1..300usize, Just(z), 0f64..=1.0, any::<u64>())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn simple_graph_with_preserved_edge_count((n, z, r, seed) in params()) {
        let g = SignedGraph::<f64>::generate_small_world(n, z, r, seed).unwrap();
        prop_assert_eq!(g.edge_count(), n * z / 2);
        let mut seen = BTreeSet::new();
        for (u, v, _) in g.edges() {
            prop_assert!(u != v);
            prop_assert!(seen.insert((u.min(v), u.max(v))));
        }
        let degree_sum: usize = (0..n).map(|i| g.degree(i)).sum();
        prop_assert_eq!(degree_sum, n * z);
        prop_assert!(g.opinions().iter().all(|w| (0.0..=1.0).contains(w)));
    }

    #[test]
    fn labels_hit_the_exact_fraction((n, z, r, seed) in params(), phi in 0f64..=1.0, label_seed in any::<u64>()) {
        let g = SignedGraph::<f64>::generate_small_world(n, z, r, seed).unwrap();
        let a = g.label_edges(phi, label_seed).unwrap();
        let m = g.edge_count();
        prop_assert_eq!(a.homogeneous_edge_count(), (phi * m as f64).round() as usize);
        prop_assert_eq!(a.homogeneous_edge_count(), homogeneous_count(phi, m));
        let b = g.label_edges(phi, label_seed).unwrap();
        prop_assert_eq!(a.to_doc(), b.to_doc());
    }

    #[test]
    fn labels_are_nested_in_phi((n, z, r, seed) in params(), p1 in 0f64..=1.0, p2 in 0f64..=1.0) {
        let (lo, hi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        let g = SignedGraph::<f64>::generate_small_world(n, z, r, seed).unwrap();
        let a = g.label_edges(lo, seed ^ 1).unwrap();
        let b = g.label_edges(hi, seed ^ 1).unwrap();
        for ((_, _, ha), (_, _, hb)) in a.edges().zip(b.edges()) {
            prop_assert!(!ha || hb);
        }
    }

    #[test]
    fn same_seed_same_graph((n, z, r, seed) in params()) {
        let a = SignedGraph::<f64>::generate_small_world(n, z, r, seed).unwrap();
        let b = SignedGraph::<f64>::generate_small_world(n, z, r, seed).unwrap();
        prop_assert_eq!(a.to_doc(), b.to_doc());
    }
}

#[test]
fn rewired_degree_statistics_match_direct_tally() {
    let (n, z) = (5000, 8);
    let mut mean_acc = 0.0;
    let mut var_acc = 0.0;
    for seed in 0..100 {
        let g = SignedGraph::<f64>::generate_small_world(n, z, 1.0, seed).unwrap();
        let mut tally = vec![0usize; n];
        for (u, v, _) in g.edges() {
            tally[u] += 1;
            tally[v] += 1;
        }
        let mean = tally.iter().sum::<usize>() as f64 / n as f64;
        let var = tally.iter().map(|&d| (d as f64 - mean).powi(2)).sum::<f64>() / n as f64;
        assert_eq!(mean, 8.0);
        let dist = g.degree_distribution();
        let dist_mean: f64 = dist.iter().map(|&(k, w)| k as f64 * w).sum();
        assert!((dist_mean - mean).abs() < 1e-12);
        mean_acc += mean;
        var_acc += var;
    }
    assert_eq!(mean_acc / 100.0, 8.0);
    // One-endpoint rewiring keeps z/2 edges per node, so the degree is
    // z/2 + Poisson(z/2)-like with variance near 4.
    let var = var_acc / 100.0;
    assert!(var > 3.0 && var < 5.0, "{var}");
}
