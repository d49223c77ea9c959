use bipspar_core::localbip::{
    find_bipartite_cluster, find_directed_cluster, top_laplacian_vector, two_sided_sweep, FinderParams,
};
use bipspar_core::measures::{bipartiteness, bipartiteness_ratio, flow_ratio};
use bipspar_core::synth::{sbm_directed, sbm_undirected, DirectedSbm, UndirectedSbm};
use bipspar_core::{ClusterPair, WeightedGraph};
use proptest::prelude::*;

#[test]
fn planted_bipartiteness_concentrates() {
    let (n, p, q) = (500.0f64, 0.3, 0.03);
    // expected cross weight over expected volume
    let expected = p * n / (p * n + q * (n - 1.0));
    let mut mean = 0.0;
    for seed in 0..10 {
        let (g, pair) = sbm_undirected(&UndirectedSbm { n1: 500, n2: 500, p, q, seed }).unwrap();
        mean += bipartiteness(&g, &pair).unwrap() / 10.0;
    }
    assert!((mean - expected).abs() < 0.01, "{mean} vs {expected}");
}

#[test]
fn planted_flow_ratio_matches_expectation() {
    let (n1, n2, eta) = (500usize, 500usize, 0.7);
    let (a, b) = (n1 as f64, n2 as f64);
    let cross = eta * a * b;
    let intra = 9.0 / a * a * (a - 1.0) + 9.0 / b * b * (b - 1.0);
    let expected = 1.0 - 2.0 * cross / (2.0 * cross + intra);
    let mut mean = 0.0;
    for seed in 0..10 {
        let (g, pair) = sbm_directed(&DirectedSbm { n1, n2, eta, seed }).unwrap();
        mean += flow_ratio(&g, &pair).unwrap() / 10.0;
    }
    assert!((mean - expected).abs() < 0.02, "{mean} vs {expected}");
}

#[test]
fn edge_counts_concentrate() {
    let (n1, n2, p, q) = (40usize, 50usize, 0.3, 0.05);
    let pairs_cross = (n1 * n2) as f64;
    let pairs_intra = (n1 * (n1 - 1) / 2 + n2 * (n2 - 1) / 2) as f64;
    let mean = p * pairs_cross + q * pairs_intra;
    let sd = (p * (1.0 - p) * pairs_cross + q * (1.0 - q) * pairs_intra).sqrt();
    let inside = (0..200u64)
        .filter(|&seed| {
            let (g, _) = sbm_undirected(&UndirectedSbm { n1, n2, p, q, seed }).unwrap();
            (g.num_edges() as f64 - mean).abs() <= 4.0 * sd
        })
        .count();
    assert!(inside >= 198, "{inside}");
}

#[test]
fn eta_half_is_symmetric_on_average() {
    let (mut lr, mut rl) = (0usize, 0usize);
    for seed in 0..20 {
        let (g, _) = sbm_directed(&DirectedSbm { n1: 50, n2: 50, eta: 0.5, seed }).unwrap();
        for a in g.arcs() {
            match (a.u < 50, a.v < 50) {
                (true, false) => lr += 1,
                (false, true) => rl += 1,
                _ => {}
            }
        }
    }
    // 20·2500 trials each side at p = 1/2: sd ≈ 112
    assert!((lr as f64 - rl as f64).abs() < 700.0, "{lr} vs {rl}");
}

#[test]
fn planted_pair_partitions_vertices() {
    let (g, pair) = sbm_undirected(&UndirectedSbm { n1: 7, n2: 9, p: 0.5, q: 0.1, seed: 2 }).unwrap();
    assert_eq!(pair.support(), (0..g.n()).collect::<Vec<_>>());
    assert_eq!(pair.a().len(), 7);
}

#[test]
fn exact_eigenvector_on_bipartite_graph() {
    // K_{3,5} with weights; the top eigenvector is ±√d on the two sides
    let mut edges = Vec::new();
    for a in 0..3 {
        for b in 3..8 {
            edges.push((a, b, 1.0 + (a + b) as f64 * 0.25));
        }
    }
    let g = WeightedGraph::from_edges(8, edges).unwrap();
    let x: Vec<f64> = (0..8).map(|v| if v < 3 { g.degree(v).sqrt() } else { -g.degree(v).sqrt() }).collect();
    let s = two_sided_sweep(&g, &x).unwrap();
    assert_eq!(s.beta, 0.0);
    let pi = top_laplacian_vector(&g, 500, 1e-12, 0).unwrap();
    assert!((pi.rayleigh - 2.0).abs() < 1e-8);
}

#[test]
fn finder_recovers_sbm_pair() {
    let mut good = 0;
    for seed in 0..10u64 {
        let (g, pair) = sbm_undirected(&UndirectedSbm { n1: 500, n2: 500, p: 0.3, q: 0.03, seed: 40 + seed }).unwrap();
        let planted = bipartiteness_ratio(&g, &pair).unwrap();
        let s = find_bipartite_cluster(&g, &FinderParams { seed, ..FinderParams::default() }).unwrap();
        if (s.beta - planted).abs() <= 0.05 {
            good += 1;
        }
    }
    assert!(good >= 8, "{good}/10");
}

#[test]
fn directed_finder_recovers_sbm_pair() {
    let mut good = 0;
    for seed in 0..10u64 {
        let (g, pair) = sbm_directed(&DirectedSbm { n1: 300, n2: 300, eta: 0.9, seed: 60 + seed }).unwrap();
        let planted = flow_ratio(&g, &pair).unwrap();
        let c = find_directed_cluster(&g, &FinderParams { seed, ..FinderParams::default() }).unwrap();
        assert!(bipspar_core::cover::is_simple(&bipspar_core::cover::pair_to_set(&c.pair)));
        if (c.flow_ratio - planted).abs() <= 0.1 {
            good += 1;
        }
    }
    assert!(good >= 8, "{good}/10");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn sweep_beta_matches_recomputation(
        es in prop::collection::vec((0usize..15, 0usize..15, 0.1f64..3.0), 1..60),
        xs in prop::collection::vec(-1.0f64..1.0, 15),
    ) {
        let g = WeightedGraph::from_edges(15, es.into_iter().filter(|&(u, v, _)| u != v)).unwrap();
        prop_assume!(g.num_edges() > 0);
        prop_assume!(xs.iter().any(|&x| x != 0.0));
        if let Ok(s) = two_sided_sweep(&g, &xs) {
            let pair = ClusterPair::new(s.l.clone(), s.r.clone()).unwrap();
            prop_assert!((bipartiteness_ratio(&g, &pair).unwrap() - s.beta).abs() < 1e-12);
            prop_assert!((0.0..=1.0).contains(&s.beta));
            for &v in &s.l { prop_assert!(xs[v] >= 0.0); }
            for &v in &s.r { prop_assert!(xs[v] < 0.0); }
        }
    }
}
