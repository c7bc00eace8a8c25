//! Loopless undirected multigraphs with stable edge ids.

use std::collections::{BTreeMap, VecDeque};

use crate::bitvec::{EdgeSet, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: usize, vertex: usize },
    #[error("edge {edge} references vertex {vertex} but the graph has {n} vertices")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    NoSuchVertex { vertex: usize, n: usize },
    #[error("edge {edge} out of range for a graph with {m} edges")]
    NoSuchEdge { edge: usize, m: usize },
}

/// A loopless undirected multigraph on vertices `0..n`.
///
/// Edge `i` is `edges()[i]`; ids are dense and never renumbered in place.
/// Parallel edges are distinct edges.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
    vertex_labels: BTreeMap<usize, String>,
    edge_labels: BTreeMap<usize, String>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges).finish()
    }
}

/// Outcome of a bipartiteness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    /// `side[v]` is the color of `v`; every edge joins different colors.
    Bipartite { side: Vec<bool> },
    /// Vertices of an odd cycle, in order; the last vertex is adjacent to the first.
    OddCycle { cycle: Vec<usize> },
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::Bipartite { .. })
    }
}

/// A graph carved out of a parent graph, with id maps back to the parent.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    /// `vertex_map[new] = old`.
    pub vertex_map: Vec<usize>,
    /// `edge_map[new] = old`.
    pub edge_map: Vec<usize>,
    parent_n: usize,
    parent_m: usize,
}

impl Subgraph {
    /// Old-to-new vertex lookup.
    pub fn vertex_from_parent(&self, old: usize) -> Option<usize> {
        self.vertex_map.iter().position(|&v| v == old)
    }

    /// Old-to-new edge lookup.
    pub fn edge_from_parent(&self, old: usize) -> Option<usize> {
        self.edge_map.iter().position(|&e| e == old)
    }

    /// Full old-to-new edge map, `None` for deleted edges.
    pub fn parent_edge_index(&self) -> Vec<Option<usize>> {
        let mut idx = vec![None; self.parent_m];
        for (new, &old) in self.edge_map.iter().enumerate() {
            idx[old] = Some(new);
        }
        idx
    }

    /// Maps a set of local edges to the parent's edge space.
    pub fn lift_edges(&self, local: &EdgeSet) -> EdgeSet {
        EdgeSet::from_ids(self.parent_m, local.ids().map(|e| self.edge_map[e]))
    }

    pub fn lift_vertices(&self, local: &VertexSet) -> VertexSet {
        VertexSet::from_ids(self.parent_n, local.ids().map(|v| self.vertex_map[v]))
    }

    /// Restricts a parent edge set to the edges kept in this subgraph.
    pub fn restrict_edges(&self, parent: &EdgeSet) -> EdgeSet {
        EdgeSet::from_ids(
            self.graph.m(),
            self.edge_map.iter().enumerate().filter(|(_, &old)| parent.contains(old)).map(|(new, _)| new),
        )
    }
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { edge: i, vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop { edge: i, vertex: u });
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        Ok(Graph { n, edges, adj, vertex_labels: BTreeMap::new(), edge_labels: BTreeMap::new() })
    }

    /// Like [`Graph::new`] for edge lists known to be valid; panics otherwise.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        Graph::new(n, edges.to_vec()).expect("invalid edge list")
    }

    pub fn empty(n: usize) -> Self {
        Graph::from_edges(n, &[])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// The end of `e` that is not `v`.
    #[inline]
    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// `(neighbor, edge id)` pairs incident to `v`, in increasing edge id order.
    #[inline]
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// `Some(r)` when every vertex has degree `r`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn has_edge_between(&self, u: usize, v: usize) -> bool {
        self.adj[u].iter().any(|&(w, _)| w == v)
    }

    /// True when there are no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    pub fn vertex_labels(&self) -> &BTreeMap<usize, String> {
        &self.vertex_labels
    }

    pub fn edge_labels(&self) -> &BTreeMap<usize, String> {
        &self.edge_labels
    }

    pub fn set_vertex_label(&mut self, v: usize, label: impl Into<String>) {
        assert!(v < self.n);
        self.vertex_labels.insert(v, label.into());
    }

    pub fn set_edge_label(&mut self, e: usize, label: impl Into<String>) {
        assert!(e < self.m());
        self.edge_labels.insert(e, label.into());
    }

    pub fn edge_by_label(&self, label: &str) -> Option<usize> {
        self.edge_labels.iter().find(|(_, l)| l.as_str() == label).map(|(&e, _)| e)
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.vertex_labels.iter().find(|(_, l)| l.as_str() == label).map(|(&v, _)| v)
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.m())
    }

    pub fn no_edges(&self) -> EdgeSet {
        EdgeSet::empty(self.m())
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges with exactly one end in `u`.
    pub fn boundary(&self, u: &VertexSet) -> EdgeSet {
        assert_eq!(u.universe(), self.n, "vertex set belongs to a different graph");
        EdgeSet::from_ids(
            self.m(),
            self.edges.iter().enumerate().filter(|(_, &(a, b))| u.contains(a) != u.contains(b)).map(|(i, _)| i),
        )
    }

    /// Edges at `v`.
    pub fn star(&self, v: usize) -> EdgeSet {
        EdgeSet::from_ids(self.m(), self.adj[v].iter().map(|&(_, e)| e))
    }

    pub fn is_bipartite(&self) -> Bipartition {
        self.bipartition_within(&self.all_edges())
    }

    /// Bipartiteness of the spanning subgraph with edge set `edges`.
    pub fn bipartition_within(&self, edges: &EdgeSet) -> Bipartition {
        let mut side = vec![false; self.n];
        let mut depth = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for root in 0..self.n {
            if depth[root] != usize::MAX {
                continue;
            }
            depth[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(a) = queue.pop_front() {
                for &(b, e) in &self.adj[a] {
                    if !edges.contains(e) {
                        continue;
                    }
                    if depth[b] == usize::MAX {
                        depth[b] = depth[a] + 1;
                        parent[b] = a;
                        side[b] = !side[a];
                        queue.push_back(b);
                    } else if side[b] == side[a] {
                        return Bipartition::OddCycle { cycle: tree_cycle(a, b, &depth, &parent) };
                    }
                }
            }
        }
        Bipartition::Bipartite { side }
    }

    pub fn components(&self) -> Vec<VertexSet> {
        let labels = self.component_labels();
        let count = labels.iter().copied().max().map_or(0, |c| c + 1);
        let mut comps = vec![VertexSet::empty(self.n); count];
        for (v, &c) in labels.iter().enumerate() {
            comps[c].insert(v);
        }
        comps
    }

    /// `labels[v]` is the index of `v`'s component, numbered by lowest vertex.
    pub fn component_labels(&self) -> Vec<usize> {
        self.component_labels_within(&self.all_edges())
    }

    pub fn component_labels_within(&self, edges: &EdgeSet) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for root in 0..self.n {
            if label[root] != usize::MAX {
                continue;
            }
            label[root] = next;
            let mut stack = vec![root];
            while let Some(a) = stack.pop() {
                for &(b, e) in &self.adj[a] {
                    if edges.contains(e) && label[b] == usize::MAX {
                        label[b] = next;
                        stack.push(b);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().into_iter().max().map_or(0, |c| c + 1)
    }

    /// Connected with at least one vertex.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_count() == 1
    }

    /// Subgraph on `vertices` using exactly the listed `edges`, which must have both ends kept.
    pub fn subgraph(&self, vertices: &VertexSet, edges: &EdgeSet) -> Subgraph {
        let vertex_map: Vec<usize> = vertices.ids().collect();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in vertex_map.iter().enumerate() {
            new_id[v] = i;
        }
        let mut new_edges = Vec::new();
        let mut edge_map = Vec::new();
        for e in edges.ids() {
            let (a, b) = self.edges[e];
            assert!(
                new_id[a] != usize::MAX && new_id[b] != usize::MAX,
                "edge {e} leaves the kept vertex set"
            );
            new_edges.push((new_id[a], new_id[b]));
            edge_map.push(e);
        }
        let mut graph = Graph::from_edges(vertex_map.len(), &new_edges);
        for (&v, l) in &self.vertex_labels {
            if new_id[v] != usize::MAX {
                graph.vertex_labels.insert(new_id[v], l.clone());
            }
        }
        for (new, &old) in edge_map.iter().enumerate() {
            if let Some(l) = self.edge_labels.get(&old) {
                graph.edge_labels.insert(new, l.clone());
            }
        }
        Subgraph { graph, vertex_map, edge_map, parent_n: self.n, parent_m: self.m() }
    }

    /// Edges with both ends in `keep`.
    pub fn edges_inside(&self, keep: &VertexSet) -> EdgeSet {
        EdgeSet::from_ids(
            self.m(),
            self.edges.iter().enumerate().filter(|(_, &(a, b))| keep.contains(a) && keep.contains(b)).map(|(i, _)| i),
        )
    }

    pub fn induced_subgraph(&self, keep: &VertexSet) -> Subgraph {
        self.subgraph(keep, &self.edges_inside(keep))
    }

    pub fn remove_vertices(&self, gone: &VertexSet) -> Subgraph {
        self.induced_subgraph(&gone.complement())
    }

    /// Spanning subgraph without the given edges.
    pub fn remove_edges(&self, gone: &EdgeSet) -> Subgraph {
        self.subgraph(&self.all_vertices(), &gone.complement())
    }

    /// Disjoint union; the vertices and edges of `other` are shifted by `self.n()` and `self.m()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + self.n, b + self.n)));
        let mut g = Graph::from_edges(self.n + other.n, &edges);
        g.vertex_labels = self.vertex_labels.clone();
        g.edge_labels = self.edge_labels.clone();
        for (&v, l) in &other.vertex_labels {
            g.vertex_labels.insert(v + self.n, l.clone());
        }
        for (&e, l) in &other.edge_labels {
            g.edge_labels.insert(e + self.m(), l.clone());
        }
        g
    }

    /// Appends edges, returning the new graph and the ids given to the added edges.
    pub fn with_edges(&self, extra: &[(usize, usize)]) -> Result<(Graph, Vec<usize>), GraphError> {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(extra);
        let mut g = Graph::new(self.n, edges)?;
        g.vertex_labels = self.vertex_labels.clone();
        g.edge_labels = self.edge_labels.clone();
        Ok((g, (self.m()..self.m() + extra.len()).collect()))
    }

    /// Attaches a new path of `len` edges between existing vertices `u` and `v`.
    ///
    /// Returns the new graph, the path's edge ids in order from `u`, and its internal vertices.
    pub fn attach_path(&self, u: usize, v: usize, len: usize) -> Result<(Graph, Vec<usize>, Vec<usize>), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::NoSuchVertex { vertex: w, n: self.n });
            }
        }
        assert!(len >= 1, "a path needs at least one edge");
        let internal: Vec<usize> = (self.n..self.n + len - 1).collect();
        let mut seq = vec![u];
        seq.extend(&internal);
        seq.push(v);
        let mut edges = self.edges.clone();
        edges.extend(seq.windows(2).map(|w| (w[0], w[1])));
        let mut g = Graph::new(self.n + len - 1, edges)?;
        g.vertex_labels = self.vertex_labels.clone();
        g.edge_labels = self.edge_labels.clone();
        Ok((g, (self.m()..self.m() + len).collect(), internal))
    }
}

fn tree_cycle(a: usize, b: usize, depth: &[usize], parent: &[usize]) -> Vec<usize> {
    let (mut x, mut y) = (a, b);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x];
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        right.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        left.push(x);
        right.push(y);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn rejects_loops_and_bad_vertices() {
        assert_eq!(Graph::new(2, vec![(1, 1)]), Err(GraphError::Loop { edge: 0, vertex: 1 }));
        assert_eq!(
            Graph::new(2, vec![(0, 1), (0, 2)]),
            Err(GraphError::VertexOutOfRange { edge: 1, vertex: 2, n: 2 })
        );
    }

    #[test]
    fn boundary_examples() {
        let c4 = families::cycle(4);
        assert_eq!(c4.boundary(&VertexSet::from_ids(4, [0])).to_vec(), vec![0, 3]);
        assert!(c4.boundary(&VertexSet::empty(4)).is_empty());
        assert!(c4.boundary(&VertexSet::full(4)).is_empty());

        let k4 = families::complete(4);
        let cut = k4.boundary(&VertexSet::from_ids(4, [0, 1]));
        let mut pairs: Vec<_> = cut.ids().map(|e| k4.endpoints(e)).collect();
        pairs.sort();
        assert_eq!(pairs, vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
    }

    #[test]
    fn parallel_edges_are_counted_individually() {
        let g = Graph::from_edges(2, &[(0, 1), (0, 1), (1, 0)]);
        assert_eq!(g.boundary(&VertexSet::from_ids(2, [0])).len(), 3);
        assert!(!g.is_simple());
    }

    #[test]
    fn bipartite_examples() {
        assert!(families::cycle(4).is_bipartite().is_bipartite());
        match families::complete(4).is_bipartite() {
            Bipartition::OddCycle { cycle } => assert_eq!(cycle.len(), 3),
            other => panic!("K4 reported {other:?}"),
        }
        match families::cycle(7).is_bipartite() {
            Bipartition::OddCycle { cycle } => assert_eq!(cycle.len(), 7),
            other => panic!("C7 reported {other:?}"),
        }
    }

    #[test]
    fn odd_cycle_witness_is_a_closed_walk() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]);
        let Bipartition::OddCycle { cycle } = g.is_bipartite() else { panic!() };
        assert_eq!(cycle.len() % 2, 1);
        for i in 0..cycle.len() {
            assert!(g.has_edge_between(cycle[i], cycle[(i + 1) % cycle.len()]));
        }
    }

    #[test]
    fn component_examples() {
        assert_eq!(families::cycle(6).components(), vec![VertexSet::full(6)]);
        let two = families::complete(3).disjoint_union(&families::complete(3));
        let comps = two.components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.len() == 3));
        assert_eq!(Graph::empty(3).components().len(), 3);
    }

    #[test]
    fn induced_subgraph_examples() {
        let k4 = families::complete(4);
        let sub = k4.induced_subgraph(&VertexSet::from_ids(4, [0, 1, 2]));
        assert_eq!((sub.graph.n(), sub.graph.m()), (3, 3));
        let same = k4.induced_subgraph(&VertexSet::full(4));
        assert_eq!(same.edge_map, (0..6).collect::<Vec<_>>());
        assert_eq!(same.graph.edges(), k4.edges());
    }

    #[test]
    fn subgraph_maps_round_trip() {
        let k4 = families::complete(4);
        let sub = k4.remove_edges(&EdgeSet::from_ids(6, [1, 4]));
        assert_eq!(sub.graph.m(), 4);
        let idx = sub.parent_edge_index();
        assert_eq!(idx[1], None);
        assert_eq!(idx[2], Some(1));
        let local = EdgeSet::from_ids(4, [0, 3]);
        let lifted = sub.lift_edges(&local);
        assert_eq!(sub.restrict_edges(&lifted), local);
    }

    #[test]
    fn attach_path_adds_internal_vertices() {
        let k2 = families::complete(2);
        let (g, path, internal) = k2.attach_path(0, 1, 3).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (2, 3), (3, 1)]);
        assert_eq!(path, vec![1, 2, 3]);
        assert_eq!(internal, vec![2, 3]);
        assert_eq!(g.regular_degree(), Some(2));
    }
}
