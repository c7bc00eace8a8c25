//! Standard small graphs.

use crate::graph::Graph;

/// Cycle `0-1-…-(n-1)-0`; edge `i` joins `i` and `i+1 mod n`. Needs `n >= 2` (`n = 2` gives a double edge).
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 2, "cycle needs at least two vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// Path `0-1-…-(n-1)`.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

/// `K_n` with edges in lexicographic order of `(i, j)`, `i < j`.
pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Graph::from_edges(n, &edges)
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`; edge `(i, a+j)` has id `i*b + j`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect();
    Graph::from_edges(a + b, &edges)
}

/// The `d`-dimensional cube.
pub fn hypercube(d: u32) -> Graph {
    let n = 1usize << d;
    let edges: Vec<_> = (0..n)
        .flat_map(|v| (0..d).map(move |k| (v, v ^ (1 << k))))
        .filter(|&(v, w)| v < w)
        .collect();
    Graph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!((cycle(6).n(), cycle(6).m()), (6, 6));
        assert_eq!(complete(5).m(), 10);
        assert_eq!(complete_bipartite(3, 3).regular_degree(), Some(3));
        let q3 = hypercube(3);
        assert_eq!((q3.n(), q3.m(), q3.regular_degree()), (8, 12, Some(3)));
        assert_eq!(path(1).m(), 0);
    }
}
