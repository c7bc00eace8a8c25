//! Round trips through graph6, edge lists and JSON.

mod common;

use common::connected_graph;
use nfstar_core::io::{parse_graph, parse_graph6, to_graph6, write_graph, Format, IoError};
use nfstar_core::Graph;
use proptest::prelude::*;

fn simple(g: &Graph) -> Graph {
    let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(g.n(), &edges)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn edgelist_and_json_keep_multigraphs(g in connected_graph(12, 30)) {
        for format in [Format::Edgelist, Format::Json] {
            let text = write_graph(&g, format).unwrap();
            prop_assert_eq!(Format::sniff(&text), format);
            let back = parse_graph(&text, format).unwrap();
            prop_assert_eq!(back.n(), g.n());
            prop_assert_eq!(back.edges(), g.edges());
        }
    }

    #[test]
    fn graph6_round_trips_sorted_simple_graphs(g in connected_graph(12, 40)) {
        let g = simple(&g);
        let code = to_graph6(&g).unwrap();
        let back = parse_graph6(&code).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(to_graph6(&back).unwrap(), code);
    }

    #[test]
    fn graph6_rejects_parallel_edges(g in connected_graph(8, 12)) {
        let (u, v) = g.endpoints(0);
        let (doubled, _) = g.with_edges(&[(u, v)]).unwrap();
        let is_multigraph_error = matches!(to_graph6(&doubled), Err(IoError::Graph6Multigraph { .. }));
        prop_assert!(is_multigraph_error);
    }
}

#[test]
fn labels_survive_json() {
    let mut g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
    g.set_edge_label(2, "cross");
    g.set_vertex_label(0, "hub");
    let back = parse_graph(&write_graph(&g, Format::Json).unwrap(), Format::Json).unwrap();
    assert_eq!(back.edge_by_label("cross"), Some(2));
    assert_eq!(back.vertex_by_label("hub"), Some(0));
}

#[test]
fn parse_errors_carry_positions() {
    match parse_graph("4 2\n0 1\n1 x\n", Format::Edgelist) {
        Err(IoError::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("expected a parse error, got {other:?}"),
    }
    match parse_graph("{\"n\": 3,\n \"edges\": [[0, 1],\n [1, ]]}", Format::Json) {
        Err(IoError::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("expected a parse error, got {other:?}"),
    }
}
