//! Brute-force reference computations shared by the integration tests.

#![allow(dead_code)]

use nfstar_core::{is_matching_covered, EdgeSet, Graph, MatchingCoverage, VertexSet};
use proptest::prelude::*;

/// Every perfect matching, found by testing all `2^m` edge subsets.
pub fn brute_perfect_matchings(g: &Graph) -> Vec<u64> {
    let m = g.m();
    assert!(m <= 20, "brute force is limited to small graphs");
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << m) {
        if mask.count_ones() as usize * 2 != g.n() {
            continue;
        }
        let mut seen = vec![false; g.n()];
        let ok = (0..m).filter(|e| mask >> e & 1 == 1).all(|e| {
            let (u, v) = g.endpoints(e);
            let fresh = u != v && !seen[u] && !seen[v];
            seen[u] = true;
            seen[v] = true;
            fresh
        });
        if ok {
            out.push(mask);
        }
    }
    out
}

/// Masks meeting every perfect matching with the same parity.
pub fn brute_nf(g: &Graph, pms: &[u64]) -> Vec<u64> {
    (0u64..(1u64 << g.m()))
        .filter(|x| {
            let parity = |pm: &u64| (pm & x).count_ones() % 2;
            pms.iter().all(|pm| parity(pm) == parity(&pms[0]))
        })
        .collect()
}

/// Every cut `∇(U)` as an edge mask.
pub fn brute_cuts(g: &Graph) -> Vec<u64> {
    let mut cuts: Vec<u64> = (0u64..(1u64 << g.n()))
        .map(|u| {
            (0..g.m())
                .filter(|&e| {
                    let (a, b) = g.endpoints(e);
                    (u >> a & 1) != (u >> b & 1)
                })
                .fold(0u64, |acc, e| acc | 1 << e)
        })
        .collect();
    cuts.sort_unstable();
    cuts.dedup();
    cuts
}

/// nF minus the classes of the empty set and of `E`.
pub fn brute_nf_star(g: &Graph) -> Vec<u64> {
    let pms = brute_perfect_matchings(g);
    assert!(!pms.is_empty());
    let cuts = brute_cuts(g);
    let all = (1u64 << g.m()) - 1;
    brute_nf(g, &pms)
        .into_iter()
        .filter(|x| cuts.binary_search(x).is_err() && cuts.binary_search(&(x ^ all)).is_err())
        .collect()
}

pub fn mask_of(x: &EdgeSet) -> u64 {
    x.ids().fold(0u64, |acc, e| acc | 1 << e)
}

pub fn set_of(m: usize, mask: u64) -> EdgeSet {
    EdgeSet::from_ids(m, (0..m).filter(|e| mask >> e & 1 == 1))
}

pub fn vertex_set_of(n: usize, mask: u64) -> VertexSet {
    VertexSet::from_ids(n, (0..n).filter(|v| mask >> v & 1 == 1))
}

/// A connected multigraph on an even number of vertices with at most `max_m` edges.
pub fn connected_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n / 2).prop_flat_map(move |half| {
        let n = 2 * half;
        let tree = proptest::collection::vec(any::<prop::sample::Index>(), n - 1);
        let extra_len = max_m.saturating_sub(n - 1);
        let extra = proptest::collection::vec((0..n, 0..n), 0..=extra_len);
        (Just(n), tree, extra).prop_map(|(n, tree, extra)| {
            let mut edges: Vec<(usize, usize)> = tree.iter().enumerate().map(|(i, ix)| (ix.index(i + 1), i + 1)).collect();
            edges.extend(extra.into_iter().filter(|(u, v)| u != v).map(|(u, v)| (u.min(v), u.max(v))));
            Graph::from_edges(n, &edges)
        })
    })
}

/// An even cycle with random chords, minus every chord that lies in no perfect matching.
pub fn matching_covered_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n / 2).prop_flat_map(move |half| {
        let n = 2 * half;
        let chords = proptest::collection::vec((0..n, 0..n), 0..=max_m.saturating_sub(n));
        (Just(n), chords).prop_map(|(n, chords)| {
            let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            edges.extend(chords.into_iter().filter(|(u, v)| u != v));
            let mut g = Graph::from_edges(n, &edges);
            while let MatchingCoverage::UncoveredEdge(e) = is_matching_covered(&g) {
                edges.remove(e);
                g = Graph::from_edges(n, &edges);
            }
            assert!(is_matching_covered(&g).is_yes());
            g
        })
    })
}

/// Small matching-covered graphs whose nF* is non-empty; uniform sampling rarely reaches them.
pub fn non_empty_pool() -> Vec<Graph> {
    let lists: [(usize, &[(usize, usize)]); 3] = [
        (6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 4), (3, 5), (2, 0), (1, 3)]),
        (6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (5, 3), (4, 0), (0, 1), (3, 1), (0, 2)]),
        (8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0), (0, 6), (0, 3), (3, 7), (5, 1), (4, 6)]),
    ];
    lists.iter().map(|(n, edges)| Graph::from_edges(*n, edges)).collect()
}

/// A pool graph with its vertices relabelled and its edges reordered.
pub fn relabelled_pool_graph() -> impl Strategy<Value = Graph> {
    prop::sample::select(non_empty_pool()).prop_flat_map(|g| {
        let vertices = Just((0..g.n()).collect::<Vec<_>>()).prop_shuffle();
        let order = Just((0..g.m()).collect::<Vec<_>>()).prop_shuffle();
        (Just(g), vertices, order).prop_map(|(g, perm, order)| {
            let edges: Vec<(usize, usize)> = order
                .iter()
                .map(|&e| {
                    let (u, v) = g.endpoints(e);
                    (perm[u], perm[v])
                })
                .collect();
            Graph::from_edges(g.n(), &edges)
        })
    })
}

/// Mostly random matching-covered graphs, with a share drawn from the non-empty pool.
pub fn mixed_matching_covered_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    prop_oneof![3 => matching_covered_graph(max_n, max_m), 1 => relabelled_pool_graph()]
}
