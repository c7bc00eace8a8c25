//! Vertex connectivity by unit-capacity max-flow on the vertex-split digraph.

use std::collections::VecDeque;

use crate::graph::Graph;

/// Result of a `k`-connectivity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Connectivity {
    AtLeast,
    /// Removing `separator` (fewer than `k` vertices) disconnects the graph.
    Separator { separator: Vec<usize> },
    /// The graph has at most `k` vertices, so it cannot be `k`-connected.
    TooFewVertices { n: usize },
}

impl Connectivity {
    pub fn holds(&self) -> bool {
        matches!(self, Connectivity::AtLeast)
    }
}

struct Arc {
    to: usize,
    cap: u32,
}

/// Residual network where arc `2i` and `2i+1` are mutual reverses.
struct FlowNet {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl FlowNet {
    fn split(g: &Graph, s: usize, t: usize) -> Self {
        let n = g.n();
        let big = n as u32 + 1;
        let mut net = FlowNet { arcs: Vec::new(), out: vec![Vec::new(); 2 * n] };
        for v in 0..n {
            let cap = if v == s || v == t { big } else { 1 };
            net.add(2 * v, 2 * v + 1, cap);
        }
        for &(a, b) in g.edges() {
            net.add(2 * a + 1, 2 * b, big);
            net.add(2 * b + 1, 2 * a, big);
        }
        net
    }

    fn add(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    /// Pushes one unit along a shortest augmenting path; false if none exists.
    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut via = vec![usize::MAX; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for &a in &self.out[x] {
                let y = self.arcs[a].to;
                if self.arcs[a].cap > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = a;
                    queue.push_back(y);
                }
            }
        }
        if !seen[sink] {
            return false;
        }
        let mut x = sink;
        while x != source {
            let a = via[x];
            self.arcs[a].cap -= 1;
            self.arcs[a ^ 1].cap += 1;
            x = self.arcs[a ^ 1].to;
        }
        true
    }

    fn reachable(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(x) = stack.pop() {
            for &a in &self.out[x] {
                let y = self.arcs[a].to;
                if self.arcs[a].cap > 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}

/// Number of internally vertex-disjoint `s`-`t` paths, capped at `limit`, with a
/// minimum separator when fewer than `limit` exist. `s` and `t` must be non-adjacent.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> (usize, Option<Vec<usize>>) {
    assert!(s != t && !g.has_edge_between(s, t), "local connectivity needs distinct non-adjacent vertices");
    let mut net = FlowNet::split(g, s, t);
    let (source, sink) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    while flow < limit && net.augment(source, sink) {
        flow += 1;
    }
    if flow >= limit {
        return (flow, None);
    }
    let seen = net.reachable(source);
    let separator = (0..g.n()).filter(|&v| seen[2 * v] && !seen[2 * v + 1]).collect();
    (flow, Some(separator))
}

/// Tests whether `g` is `k`-connected: more than `k` vertices and no separator of fewer than `k` vertices.
///
/// Every separator of size `< k` misses one of the first `k` vertices, so it suffices to
/// run flows from each of those to all of its non-neighbors.
pub fn vertex_connectivity_at_least(g: &Graph, k: usize) -> Connectivity {
    assert!(k >= 1, "connectivity threshold must be positive");
    let n = g.n();
    if n <= k {
        return Connectivity::TooFewVertices { n };
    }
    for s in 0..k {
        let mut adjacent = vec![false; n];
        for &(w, _) in g.incident(s) {
            adjacent[w] = true;
        }
        for t in 0..n {
            if t == s || adjacent[t] {
                continue;
            }
            if let (_, Some(separator)) = local_connectivity(g, s, t, k) {
                return Connectivity::Separator { separator };
            }
        }
    }
    Connectivity::AtLeast
}

/// Exact vertex connectivity (`n - 1` for complete graphs).
pub fn vertex_connectivity(g: &Graph) -> usize {
    let mut k = 0;
    while k + 1 < g.n() && vertex_connectivity_at_least(g, k + 1).holds() {
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn complete_graph_is_n_minus_one_connected() {
        let k4 = families::complete(4);
        assert!(vertex_connectivity_at_least(&k4, 3).holds());
        assert_eq!(vertex_connectivity_at_least(&k4, 4), Connectivity::TooFewVertices { n: 4 });
        assert_eq!(vertex_connectivity(&k4), 3);
    }

    #[test]
    fn path_has_cut_vertex() {
        let p3 = families::path(3);
        assert_eq!(vertex_connectivity_at_least(&p3, 2), Connectivity::Separator { separator: vec![1] });
    }

    #[test]
    fn disconnected_graph_has_empty_separator() {
        let g = families::complete(3).disjoint_union(&families::complete(3));
        assert_eq!(vertex_connectivity_at_least(&g, 1), Connectivity::Separator { separator: vec![] });
    }

    #[test]
    fn separator_containing_vertex_zero_is_found() {
        // two triangles glued at vertex 0: vertex 0 is the only cut vertex
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]);
        assert_eq!(vertex_connectivity_at_least(&g, 2), Connectivity::Separator { separator: vec![0] });
    }

    #[test]
    fn cube_and_bipartite() {
        assert_eq!(vertex_connectivity(&families::hypercube(3)), 3);
        assert_eq!(vertex_connectivity(&families::complete_bipartite(4, 4)), 4);
        assert_eq!(vertex_connectivity(&families::cycle(8)), 2);
    }
}
