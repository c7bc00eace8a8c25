//! Maximum matching, perfect-matching enumeration and the matching-covered predicate.

use std::collections::{HashMap, VecDeque};
use std::ops::ControlFlow;

use crate::bitvec::{EdgeSet, VertexSet};
use crate::graph::Graph;

/// Default bound on the number of perfect matchings an enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

const NONE: usize = usize::MAX;

/// A set of edges covering every vertex exactly once.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PerfectMatching {
    edges: EdgeSet,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatchingError {
    #[error("edge set lives in a space of {got} edges, graph has {expected}")]
    WrongSpace { expected: usize, got: usize },
    #[error("vertex {0} is covered more than once")]
    DoublyCovered(usize),
    #[error("vertex {0} is not covered")]
    Uncovered(usize),
}

impl PerfectMatching {
    /// Checks the defining conditions against `g`.
    pub fn new(g: &Graph, edges: EdgeSet) -> Result<Self, MatchingError> {
        check_perfect(g, &edges)?;
        Ok(PerfectMatching { edges })
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn into_edges(self) -> EdgeSet {
        self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Re-checks that `edges` is a perfect matching of `g`.
pub fn check_perfect(g: &Graph, edges: &EdgeSet) -> Result<(), MatchingError> {
    if edges.universe() != g.m() {
        return Err(MatchingError::WrongSpace { expected: g.m(), got: edges.universe() });
    }
    let mut hit = vec![false; g.n()];
    for e in edges.ids() {
        let (a, b) = g.endpoints(e);
        for v in [a, b] {
            if hit[v] {
                return Err(MatchingError::DoublyCovered(v));
            }
            hit[v] = true;
        }
    }
    match hit.iter().position(|&h| !h) {
        Some(v) => Err(MatchingError::Uncovered(v)),
        None => Ok(()),
    }
}

/// Edmonds' blossom search over the simple graph underlying `g`, skipping `excluded` vertices.
struct Blossom<'a> {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
    excluded: &'a [bool],
}

impl<'a> Blossom<'a> {
    fn new(g: &Graph, excluded: &'a [bool]) -> Self {
        let n = g.n();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in g.edges() {
            if excluded[a] || excluded[b] || adj[a].contains(&b) {
                continue;
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
            excluded,
        }
    }

    fn greedy(&mut self) {
        for v in 0..self.adj.len() {
            if self.mate[v] != NONE {
                continue;
            }
            if let Some(&w) = self.adj[v].iter().find(|&&w| self.mate[w] == NONE) {
                self.mate[v] = w;
                self.mate[w] = v;
            }
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Searches for an augmenting path from `root`; returns its free far end.
    fn find_path(&mut self, root: usize) -> usize {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for i in 0..n {
            self.base[i] = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        NONE
    }

    fn run(mut self) -> Vec<usize> {
        self.greedy();
        for v in 0..self.adj.len() {
            if self.excluded[v] || self.mate[v] != NONE {
                continue;
            }
            let mut u = self.find_path(v);
            while u != NONE {
                let pv = self.parent[u];
                let ppv = self.mate[pv];
                self.mate[u] = pv;
                self.mate[pv] = u;
                u = ppv;
            }
        }
        self.mate
    }
}

fn mates_to_edges(g: &Graph, mate: &[usize]) -> EdgeSet {
    let mut first_edge: HashMap<(usize, usize), usize> = HashMap::new();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        first_edge.entry((a.min(b), a.max(b))).or_insert(e);
    }
    let mut out = g.no_edges();
    for (v, &w) in mate.iter().enumerate() {
        if w != NONE && v < w {
            out.insert(first_edge[&(v, w)]);
        }
    }
    out
}

/// A maximum-cardinality matching of `g`. Among parallel edges the lowest id is used.
pub fn maximum_matching(g: &Graph) -> EdgeSet {
    maximum_matching_avoiding(g, &vec![false; g.n()])
}

/// A maximum matching of `g` minus the vertices flagged in `excluded`.
pub fn maximum_matching_avoiding(g: &Graph, excluded: &[bool]) -> EdgeSet {
    assert_eq!(excluded.len(), g.n());
    let mate = Blossom::new(g, excluded).run();
    mates_to_edges(g, &mate)
}

fn perfect_avoiding(g: &Graph, excluded: &[bool]) -> Option<EdgeSet> {
    let remaining = excluded.iter().filter(|&&x| !x).count();
    if remaining % 2 == 1 {
        return None;
    }
    let m = maximum_matching_avoiding(g, excluded);
    (2 * m.len() == remaining).then_some(m)
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    perfect_matching(g).is_some()
}

pub fn perfect_matching(g: &Graph) -> Option<PerfectMatching> {
    perfect_avoiding(g, &vec![false; g.n()]).map(|edges| PerfectMatching { edges })
}

/// True when `g` minus `h_vertices` has a perfect matching (the empty graph has one).
pub fn is_nice_subgraph(g: &Graph, h_vertices: &VertexSet) -> bool {
    assert_eq!(h_vertices.universe(), g.n());
    let excluded: Vec<bool> = (0..g.n()).map(|v| h_vertices.contains(v)).collect();
    perfect_avoiding(g, &excluded).is_some()
}

/// Verdict of the matching-covered test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingCoverage {
    Yes,
    NotConnected,
    NoPerfectMatching,
    /// The lowest-id edge lying in no perfect matching.
    UncoveredEdge(usize),
}

impl MatchingCoverage {
    pub fn is_yes(&self) -> bool {
        matches!(self, MatchingCoverage::Yes)
    }
}

/// Connected, and every edge lies in some perfect matching.
pub fn is_matching_covered(g: &Graph) -> MatchingCoverage {
    if !g.is_connected() {
        return MatchingCoverage::NotConnected;
    }
    let Some(pm) = perfect_matching(g) else {
        return MatchingCoverage::NoPerfectMatching;
    };
    let mut covered = pm.into_edges();
    let mut excluded = vec![false; g.n()];
    for e in 0..g.m() {
        if covered.contains(e) {
            continue;
        }
        let (a, b) = g.endpoints(e);
        excluded[a] = true;
        excluded[b] = true;
        let rest = perfect_avoiding(g, &excluded);
        excluded[a] = false;
        excluded[b] = false;
        match rest {
            Some(m) => {
                covered = covered.union(&m);
                covered.insert(e);
            }
            None => return MatchingCoverage::UncoveredEdge(e),
        }
    }
    MatchingCoverage::Yes
}

/// Perfect matchings found by exhaustive search, possibly truncated at `cap`.
#[derive(Debug, Clone)]
pub struct MatchingEnumeration {
    pub matchings: Vec<PerfectMatching>,
    /// True when `matchings` is the full, duplicate-free set.
    pub complete: bool,
    pub cap: usize,
}

/// Summary of a streaming enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationSummary {
    pub visited: usize,
    pub complete: bool,
}

struct Search<'a, F> {
    g: &'a Graph,
    covered: Vec<bool>,
    chosen: Vec<usize>,
    visited: usize,
    cap: usize,
    stopped: bool,
    visit: F,
}

impl<F: FnMut(&[usize]) -> ControlFlow<()>> Search<'_, F> {
    fn viable_after(&self, v: usize, w: usize) -> bool {
        [v, w].iter().all(|&x| {
            self.g
                .incident(x)
                .iter()
                .all(|&(z, _)| self.covered[z] || self.g.incident(z).iter().any(|&(y, _)| !self.covered[y]))
        })
    }

    fn descend(&mut self) {
        let Some(v) = self.covered.iter().position(|&c| !c) else {
            if self.visited == self.cap {
                self.stopped = true;
                return;
            }
            self.visited += 1;
            if (self.visit)(&self.chosen).is_break() {
                self.stopped = true;
            }
            return;
        };
        for &(w, e) in self.g.incident(v) {
            if self.stopped {
                return;
            }
            if self.covered[w] {
                continue;
            }
            self.covered[v] = true;
            self.covered[w] = true;
            if self.viable_after(v, w) {
                self.chosen.push(e);
                self.descend();
                self.chosen.pop();
            }
            self.covered[v] = false;
            self.covered[w] = false;
        }
    }
}

/// Streams perfect matchings (as edge-id lists, in choice order) to `visit`.
///
/// Branches on the lowest uncovered vertex, trying its edges by increasing id. Stops after
/// `cap` matchings if more exist, or when `visit` breaks; `complete` reports neither happened.
pub fn for_each_perfect_matching<F>(g: &Graph, cap: usize, visit: F) -> EnumerationSummary
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    assert!(cap >= 1, "enumeration cap must be positive");
    if g.n() % 2 == 1 {
        return EnumerationSummary { visited: 0, complete: true };
    }
    let mut search =
        Search { g, covered: vec![false; g.n()], chosen: Vec::new(), visited: 0, cap, stopped: false, visit };
    search.descend();
    EnumerationSummary { visited: search.visited, complete: !search.stopped }
}

pub fn enumerate_perfect_matchings(g: &Graph, cap: usize) -> MatchingEnumeration {
    let mut matchings = Vec::new();
    let summary = for_each_perfect_matching(g, cap, |ids| {
        matchings.push(PerfectMatching { edges: EdgeSet::from_ids(g.m(), ids.iter().copied()) });
        ControlFlow::Continue(())
    });
    MatchingEnumeration { matchings, complete: summary.complete, cap }
}
