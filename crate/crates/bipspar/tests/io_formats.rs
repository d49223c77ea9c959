use std::fs;

use bipspar::core::{WeightedDigraph, WeightedGraph};
use bipspar::io::{
    format_g17, ingest, read_digraph, read_edge_list, read_graph, write_digraph, write_graph, Ingested, IoError, Mode,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

#[test]
fn duplicates_merge_by_summing() {
    let d = TempDir::new().unwrap();
    let path = d.path().join("g.txt");
    fs::write(&path, "0 1 2\n0 1 2\n1 0 1\n1 2\n").unwrap();
    let (g, _) = read_graph(&path).unwrap();
    assert_eq!(g.num_edges(), 2);
    assert_eq!(g.weight(0, 1), Some(5.0));
    assert_eq!(g.weight(1, 2), Some(1.0));
    // directed: the reverse arc stays separate
    let (h, _) = read_digraph(&path).unwrap();
    assert_eq!(h.num_arcs(), 3);
    assert_eq!(h.deg_out(0), 4.0);
    assert_eq!(h.deg_in(0), 1.0);
}

#[test]
fn header_keeps_isolated_vertices() {
    let d = TempDir::new().unwrap();
    let path = d.path().join("g.txt");
    fs::write(&path, "# vertices 6\n# comment\n0 4\n").unwrap();
    let list = read_edge_list(&path).unwrap();
    assert_eq!(list.n, 6);
    assert!(list.ids.is_identity());
    match ingest(&path, Mode::Undirected).unwrap().0 {
        Ingested::Undirected(g) => assert_eq!(g.degree(5), 0.0),
        _ => unreachable!(),
    }
}

#[test]
fn header_rules_are_enforced() {
    let d = TempDir::new().unwrap();
    let path = d.path().join("g.txt");
    for (text, line) in
        [("0 1\n# vertices 4\n", 2), ("# vertices 2\n0 2\n", 2), ("0 1 -1\n", 1), ("3 3\n", 1), ("0 1 2 3\n", 1)]
    {
        fs::write(&path, text).unwrap();
        match read_edge_list(&path) {
            Err(IoError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
}

#[test]
fn written_weights_round_trip_exactly() {
    let mut r = ChaCha8Rng::seed_from_u64(17);
    let n = 25;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(0.3) {
                let w: f64 = r.gen_range(1e-6..1e6) * if r.gen_bool(0.1) { 1e-250 } else { 1.0 };
                edges.push((u, v, w));
            }
        }
    }
    let g = WeightedGraph::from_edges(n, edges.clone()).unwrap();
    let d = TempDir::new().unwrap();
    let path = d.path().join("g.txt");
    write_graph(&path, &g).unwrap();
    assert_eq!(read_graph(&path).unwrap().0, g);

    let h = WeightedDigraph::from_arcs(n, edges.iter().map(|&(u, v, w)| (v, u, w))).unwrap();
    write_digraph(&path, &h).unwrap();
    let back = read_digraph(&path).unwrap().0;
    for (a, b) in h.arcs().iter().zip(back.arcs()) {
        assert_eq!((a.u, a.v, a.w.to_bits()), (b.u, b.v, b.w.to_bits()));
    }
}

#[test]
fn g17_matches_printf() {
    // values checked against C's printf("%.17g")
    for (x, s) in [
        (0.1, "0.10000000000000001"),
        (1.0, "1"),
        (2.5, "2.5"),
        (1e-5, "1.0000000000000001e-05"),
        (123456789012345680.0, "1.2345678901234568e+17"),
        (1.0 / 3.0, "0.33333333333333331"),
    ] {
        assert_eq!(format_g17(x), s);
        assert_eq!(s.parse::<f64>().unwrap(), x);
    }
}
