//! Ear decompositions of matching-covered graphs and the nF* classifier built on them.
//!
//! A decomposition starts from one edge and adds odd paths ("ears") whose internal
//! vertices are new, either one at a time or as two vertex-disjoint paths at once, so
//! that every intermediate graph stays matching-covered. Decompositions are found
//! top-down: the last ear of a matching-covered graph other than a cycle is a maximal
//! chain of degree-2 vertices (or a single edge), so the search peels such chains off.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitvec::{EdgeSet, VertexSet};
use crate::feasibility::{FeasibilityError, ParitySpaces};
use crate::graph::{Bipartition, Graph, Subgraph};
use crate::matching::{is_matching_covered, MatchingCoverage};

pub const DEFAULT_BUDGET: usize = 100_000;
pub const DEFAULT_PAIR_CAP: usize = 10_000;
/// Largest nF dimension the enumerating restriction test will walk.
pub const MAX_ENUMERATED_NF_DIM: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EarKind {
    Single,
    Double,
}

/// One odd path `u … v` with its internal vertices and edges listed from `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarPath {
    pub u: usize,
    pub v: usize,
    pub internal: Vec<usize>,
    pub edges: Vec<usize>,
}

impl EarPath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        [self.u, self.v].into_iter().chain(self.internal.iter().copied())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ear {
    pub kind: EarKind,
    pub paths: Vec<EarPath>,
}

impl Ear {
    pub fn epsilon(&self) -> u8 {
        match self.kind {
            EarKind::Single => 1,
            EarKind::Double => 2,
        }
    }
}

/// The graph `G_i` reached after adding `ear`, given by sorted vertex and edge ids of the input graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarStep {
    pub ear: Ear,
    pub epsilon: u8,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarDecomposition {
    pub base_edge: usize,
    pub steps: Vec<EarStep>,
}

impl EarDecomposition {
    /// Number of ears after the base edge.
    pub fn r(&self) -> usize {
        self.steps.len()
    }

    pub fn epsilon_sum(&self) -> usize {
        self.steps.iter().map(|s| usize::from(s.epsilon)).sum()
    }

    pub fn is_all_single(&self) -> bool {
        self.steps.iter().all(|s| s.epsilon == 1)
    }

    /// `G_i` as a subgraph of `g` (`G_0` is the base edge).
    pub fn prefix(&self, g: &Graph, i: usize) -> Subgraph {
        let (vertices, edges) = self.prefix_sets(g, i);
        g.subgraph(&vertices, &edges)
    }

    pub fn prefix_sets(&self, g: &Graph, i: usize) -> (VertexSet, EdgeSet) {
        if i == 0 {
            let (a, b) = g.endpoints(self.base_edge);
            (VertexSet::from_ids(g.n(), [a, b]), EdgeSet::from_ids(g.m(), [self.base_edge]))
        } else {
            let s = &self.steps[i - 1];
            (VertexSet::from_ids(g.n(), s.vertices.iter().copied()), EdgeSet::from_ids(g.m(), s.edges.iter().copied()))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EarError {
    #[error("graph is not matching-covered: {0:?}")]
    NotMatchingCovered(MatchingCoverage),
    #[error("search budget of {budget} node expansions exhausted")]
    BudgetExhausted { budget: usize },
    #[error("search finished without finding a decomposition of the requested kind")]
    NoDecomposition,
    #[error("graph is not bipartite (odd cycle {odd_cycle:?}) and has no single-ear decomposition")]
    NotBipartite { odd_cycle: Vec<usize> },
    #[error("invalid decomposition: {0}")]
    Invalid(#[from] DecompositionFault),
    #[error(transparent)]
    Feasibility(#[from] FeasibilityError),
}

/// Which requirement a decomposition breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Clause {
    BaseNotAnEdge,
    WrongEarShape,
    EpsilonMismatch,
    OddLength { path: usize },
    BrokenPath { path: usize },
    EndNotInSubgraph { path: usize, vertex: usize },
    InternalVertexNotNew { path: usize, vertex: usize },
    EdgeNotNew { path: usize, edge: usize },
    PathsShareVertex { vertex: usize },
    RecordedSubgraphMismatch,
    NotMatchingCovered(MatchingCoverage),
    DoesNotReachGraph,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clause::BaseNotAnEdge => write!(f, "base is a single edge"),
            Clause::WrongEarShape => write!(f, "single ears have one path and double ears two"),
            Clause::EpsilonMismatch => write!(f, "epsilon matches ear kind"),
            Clause::OddLength { path } => write!(f, "odd length (path {path})"),
            Clause::BrokenPath { path } => write!(f, "path edges join its ends through its internal vertices (path {path})"),
            Clause::EndNotInSubgraph { path, vertex } => {
                write!(f, "ends lie in the current subgraph (path {path}, vertex {vertex})")
            }
            Clause::InternalVertexNotNew { path, vertex } => {
                write!(f, "internal vertices are new (path {path}, vertex {vertex})")
            }
            Clause::EdgeNotNew { path, edge } => write!(f, "edges are new (path {path}, edge {edge})"),
            Clause::PathsShareVertex { vertex } => write!(f, "double-ear paths are vertex-disjoint (vertex {vertex})"),
            Clause::RecordedSubgraphMismatch => write!(f, "recorded subgraph equals base plus ears"),
            Clause::NotMatchingCovered(c) => write!(f, "intermediate graph is matching-covered ({c:?})"),
            Clause::DoesNotReachGraph => write!(f, "last subgraph is the whole graph"),
        }
    }
}

/// First violated clause, located by step (`0` is the base).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("step {step}: {clause}")]
pub struct DecompositionFault {
    pub step: usize,
    pub clause: Clause,
}

/// Checks every defining condition of an ear decomposition of `g`.
pub fn validate_decomposition(g: &Graph, d: &EarDecomposition) -> Result<(), DecompositionFault> {
    let fault = |step, clause| Err(DecompositionFault { step, clause });
    if d.base_edge >= g.m() {
        return fault(0, Clause::BaseNotAnEdge);
    }
    let (mut vertices, mut edges) = d.prefix_sets(g, 0);
    for (i, step) in d.steps.iter().enumerate() {
        let at = i + 1;
        let expected_paths = match step.ear.kind {
            EarKind::Single => 1,
            EarKind::Double => 2,
        };
        if step.ear.paths.len() != expected_paths {
            return fault(at, Clause::WrongEarShape);
        }
        if step.epsilon != step.ear.epsilon() {
            return fault(at, Clause::EpsilonMismatch);
        }
        let mut used = BTreeSet::new();
        for (p, path) in step.ear.paths.iter().enumerate() {
            if path.edges.len() % 2 == 0 {
                return fault(at, Clause::OddLength { path: p });
            }
            if path.internal.len() + 1 != path.edges.len() {
                return fault(at, Clause::BrokenPath { path: p });
            }
            for w in [path.u, path.v] {
                if w >= g.n() || !vertices.contains(w) {
                    return fault(at, Clause::EndNotInSubgraph { path: p, vertex: w });
                }
            }
            for &w in &path.internal {
                if w >= g.n() || vertices.contains(w) {
                    return fault(at, Clause::InternalVertexNotNew { path: p, vertex: w });
                }
            }
            for &e in &path.edges {
                if e >= g.m() || edges.contains(e) {
                    return fault(at, Clause::EdgeNotNew { path: p, edge: e });
                }
            }
            let walk: Vec<usize> =
                std::iter::once(path.u).chain(path.internal.iter().copied()).chain([path.v]).collect();
            let joined = path.edges.iter().zip(walk.windows(2)).all(|(&e, w)| {
                let (a, b) = g.endpoints(e);
                (a, b) == (w[0], w[1]) || (b, a) == (w[0], w[1])
            });
            if !joined {
                return fault(at, Clause::BrokenPath { path: p });
            }
            let mut own = BTreeSet::new();
            for w in path.vertices() {
                if !own.insert(w) {
                    return fault(at, Clause::BrokenPath { path: p });
                }
                if !used.insert(w) {
                    return fault(at, Clause::PathsShareVertex { vertex: w });
                }
            }
        }
        for path in &step.ear.paths {
            for &w in &path.internal {
                vertices.insert(w);
            }
            for &e in &path.edges {
                edges.insert(e);
            }
        }
        if step.vertices != vertices.to_vec() || step.edges != edges.to_vec() {
            return fault(at, Clause::RecordedSubgraphMismatch);
        }
        let coverage = is_matching_covered(&g.subgraph(&vertices, &edges).graph);
        if !coverage.is_yes() {
            return fault(at, Clause::NotMatchingCovered(coverage));
        }
    }
    if vertices.len() != g.n() || edges.len() != g.m() {
        return fault(d.steps.len(), Clause::DoesNotReachGraph);
    }
    Ok(())
}

/// Parameters of the top-down ear search.
#[derive(Debug, Clone, Copy)]
pub struct EarSearch {
    /// Maximum number of search states expanded.
    pub budget: usize,
    /// Maximum number of path pairs tried as double ears in one state.
    pub pair_cap: usize,
    pub single_only: bool,
}

impl Default for EarSearch {
    fn default() -> Self {
        EarSearch { budget: DEFAULT_BUDGET, pair_cap: DEFAULT_PAIR_CAP, single_only: false }
    }
}

pub fn find_ear_decomposition(g: &Graph, budget: usize) -> Result<EarDecomposition, EarError> {
    EarSearch { budget, ..EarSearch::default() }.run(g)
}

/// A decomposition using single ears only, which exists exactly for bipartite graphs.
pub fn find_single_ear_decomposition(g: &Graph, budget: usize) -> Result<EarDecomposition, EarError> {
    if let Bipartition::OddCycle { cycle } = g.is_bipartite() {
        return Err(EarError::NotBipartite { odd_cycle: cycle });
    }
    EarSearch { budget, single_only: true, ..EarSearch::default() }.run(g)
}

struct SearchState<'g> {
    g: &'g Graph,
    config: EarSearch,
    expanded: usize,
    dead: HashSet<EdgeSet>,
}

impl EarSearch {
    pub fn run(&self, g: &Graph) -> Result<EarDecomposition, EarError> {
        let coverage = is_matching_covered(g);
        if !coverage.is_yes() {
            return Err(EarError::NotMatchingCovered(coverage));
        }
        let mut state = SearchState { g, config: *self, expanded: 0, dead: HashSet::new() };
        let mut removed = Vec::new();
        let found = state.descend(&g.all_vertices(), &g.all_edges(), &mut removed)?;
        if !found {
            return Err(EarError::NoDecomposition);
        }
        let base_edge = remaining_edge(&g.all_edges(), &removed);
        let (mut vertices, mut edges) = {
            let (a, b) = g.endpoints(base_edge);
            (VertexSet::from_ids(g.n(), [a, b]), EdgeSet::from_ids(g.m(), [base_edge]))
        };
        let mut steps = Vec::with_capacity(removed.len());
        for ear in removed.into_iter().rev() {
            for path in &ear.paths {
                path.internal.iter().for_each(|&w| vertices.insert(w));
                path.edges.iter().for_each(|&e| edges.insert(e));
            }
            steps.push(EarStep { epsilon: ear.epsilon(), ear, vertices: vertices.to_vec(), edges: edges.to_vec() });
        }
        let d = EarDecomposition { base_edge, steps };
        debug_assert_eq!(validate_decomposition(g, &d), Ok(()));
        Ok(d)
    }
}

fn remaining_edge(all: &EdgeSet, removed: &[Ear]) -> usize {
    let mut left = all.clone();
    for ear in removed {
        for path in &ear.paths {
            path.edges.iter().for_each(|&e| left.remove(e));
        }
    }
    debug_assert_eq!(left.len(), 1);
    let edge = left.ids().next().expect("one edge remains");
    edge
}

impl SearchState<'_> {
    /// Peels ears off `(vertices, edges)` until one edge remains; `Ok(false)` means a dead end.
    fn descend(&mut self, vertices: &VertexSet, edges: &EdgeSet, removed: &mut Vec<Ear>) -> Result<bool, EarError> {
        if edges.len() == 1 {
            return Ok(true);
        }
        if self.dead.contains(edges) {
            return Ok(false);
        }
        self.expanded += 1;
        if self.expanded > self.config.budget {
            return Err(EarError::BudgetExhausted { budget: self.config.budget });
        }
        let singles = chains(self.g, vertices, edges);
        for c in &singles {
            if self.try_remove(vertices, edges, std::slice::from_ref(c), removed)? {
                return Ok(true);
            }
        }
        if !self.config.single_only {
            let mut pairs = 0;
            'outer: for i in 0..singles.len() {
                for j in i + 1..singles.len() {
                    if !disjoint(&singles[i], &singles[j]) {
                        continue;
                    }
                    if pairs == self.config.pair_cap {
                        break 'outer;
                    }
                    pairs += 1;
                    let pair = [singles[i].clone(), singles[j].clone()];
                    if self.try_remove(vertices, edges, &pair, removed)? {
                        return Ok(true);
                    }
                }
            }
        }
        self.dead.insert(edges.clone());
        Ok(false)
    }

    fn try_remove(
        &mut self,
        vertices: &VertexSet,
        edges: &EdgeSet,
        paths: &[EarPath],
        removed: &mut Vec<Ear>,
    ) -> Result<bool, EarError> {
        let mut rest_v = vertices.clone();
        let mut rest_e = edges.clone();
        for p in paths {
            p.internal.iter().for_each(|&w| rest_v.remove(w));
            p.edges.iter().for_each(|&e| rest_e.remove(e));
        }
        if self.dead.contains(&rest_e) {
            return Ok(false);
        }
        let rest = self.g.subgraph(&rest_v, &rest_e);
        if !is_matching_covered(&rest.graph).is_yes() {
            return Ok(false);
        }
        let kind = if paths.len() == 1 { EarKind::Single } else { EarKind::Double };
        removed.push(Ear { kind, paths: paths.to_vec() });
        if self.descend(&rest_v, &rest_e, removed)? {
            return Ok(true);
        }
        removed.pop();
        Ok(false)
    }
}

fn disjoint(a: &EarPath, b: &EarPath) -> bool {
    a.vertices().all(|w| !b.vertices().any(|x| x == w))
}

/// Odd maximal chains of degree-2 vertices (and single edges between vertices of other degrees),
/// oriented from the lower end and sorted by ends, then edges.
fn chains(g: &Graph, vertices: &VertexSet, edges: &EdgeSet) -> Vec<EarPath> {
    let degree = |v: usize| g.incident(v).iter().filter(|&&(_, e)| edges.contains(e)).count();
    let deg: Vec<usize> = (0..g.n()).map(|v| if vertices.contains(v) { degree(v) } else { 0 }).collect();
    let mut found = BTreeSet::new();

    if vertices.ids().all(|v| deg[v] == 2) {
        // A cycle: the only move is to leave one edge behind.
        let base = edges.ids().next().expect("nonempty");
        let (a, b) = g.endpoints(base);
        let (u, v) = (a.min(b), a.max(b));
        let (internal, path_edges) = walk_around(g, edges, u, base);
        let path = EarPath { u, v, internal, edges: path_edges };
        return if path.edges.len() % 2 == 1 { vec![path] } else { Vec::new() };
    }

    for x in vertices.ids().filter(|&v| deg[v] != 2) {
        for &(_, e) in g.incident(x) {
            if !edges.contains(e) {
                continue;
            }
            let (internal, path_edges) = walk_from(g, edges, &deg, x, e);
            let y = match internal.last() {
                Some(&last) => g.other_end(*path_edges.last().unwrap(), last),
                None => g.other_end(e, x),
            };
            if x == y || x > y {
                continue;
            }
            found.insert((x, y, path_edges, internal));
        }
    }
    found
        .into_iter()
        .filter(|(_, _, es, _)| es.len() % 2 == 1)
        .map(|(u, v, edges, internal)| EarPath { u, v, internal, edges })
        .collect()
}

/// Follows degree-2 vertices from `x` along `first`, returning internal vertices and edges.
fn walk_from(g: &Graph, edges: &EdgeSet, deg: &[usize], x: usize, first: usize) -> (Vec<usize>, Vec<usize>) {
    let mut internal = Vec::new();
    let mut path = vec![first];
    let mut here = g.other_end(first, x);
    let mut via = first;
    while deg[here] == 2 {
        internal.push(here);
        let next = g
            .incident(here)
            .iter()
            .find(|&&(_, e)| e != via && edges.contains(e))
            .map(|&(_, e)| e)
            .expect("degree-2 vertex has a second edge");
        path.push(next);
        via = next;
        here = g.other_end(next, here);
    }
    (internal, path)
}

/// In a cycle, walks from `u` around the cycle avoiding `base` until the other end of `base`.
fn walk_around(g: &Graph, edges: &EdgeSet, u: usize, base: usize) -> (Vec<usize>, Vec<usize>) {
    let target = g.other_end(base, u);
    let mut internal = Vec::new();
    let mut path = Vec::new();
    let mut here = u;
    let mut via = base;
    loop {
        let next = g
            .incident(here)
            .iter()
            .find(|&&(_, e)| e != via && edges.contains(e))
            .map(|&(_, e)| e)
            .expect("cycle vertex has a second edge");
        path.push(next);
        via = next;
        here = g.other_end(next, here);
        if here == target {
            break;
        }
        internal.push(here);
    }
    (internal, path)
}

/// Which decomposition-based rule decided emptiness of nF*.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassifierRule {
    /// At most one double ear in total.
    EpsilonSumBound,
    /// Two or more double ears and the last ear is double.
    FinalDoubleEar,
    /// The last ear is single and the graph before it already had empty nF*.
    SingleEarOverEmptyPrefix,
    /// The last ear is single; every nF* set of the previous graph was tested on the
    /// previous graph with the ear's ends deleted.
    RestrictionTest,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NfStarClassification {
    pub empty: bool,
    pub rule: ClassifierRule,
    pub r: usize,
    pub epsilon_sum: usize,
    /// For a non-empty verdict from the restriction test: a set of the previous graph that is
    /// in its nF* and whose restriction is non-feasible after deleting the ear's ends.
    pub counterexample: Option<Vec<usize>>,
}

/// Decides `nF*(g) = ∅` from a valid decomposition of `g`.
pub fn classify_nf_star(g: &Graph, d: &EarDecomposition, cap: usize) -> Result<NfStarClassification, EarError> {
    validate_decomposition(g, d)?;
    classify_prefix(g, d, d.r(), cap)
}

fn classify_prefix(g: &Graph, d: &EarDecomposition, r: usize, cap: usize) -> Result<NfStarClassification, EarError> {
    let epsilon_sum: usize = d.steps[..r].iter().map(|s| usize::from(s.epsilon)).sum();
    let verdict = |empty, rule, counterexample| NfStarClassification { empty, rule, r, epsilon_sum, counterexample };
    if epsilon_sum <= r + 1 {
        return Ok(verdict(true, ClassifierRule::EpsilonSumBound, None));
    }
    let last = &d.steps[r - 1];
    if last.epsilon == 2 {
        return Ok(verdict(false, ClassifierRule::FinalDoubleEar, None));
    }
    if classify_prefix(g, d, r - 1, cap)?.empty {
        return Ok(verdict(true, ClassifierRule::SingleEarOverEmptyPrefix, None));
    }
    let path = &last.ear.paths[0];
    let witness = restriction_counterexample(g, d, r, path.u, path.v, cap)?;
    let empty = witness.is_none();
    Ok(verdict(empty, ClassifierRule::RestrictionTest, witness.map(|w| w.to_vec())))
}

/// Searches `nF*(G_{r-1})` for a set whose restriction to `G_{r-1} - {u, v}` is non-feasible there.
///
/// Such sets are the members of `(D(G_{r-1}) + D(G°))^⊥` outside `cut + ⟨E⟩` of `G_{r-1}`,
/// so a basis vector of that subspace missing `cut + ⟨E⟩` is returned when one exists.
/// When the prefix's nF is small enough the same question is also answered by listing
/// nF and testing each member by a parity scan, and the two answers must agree.
fn restriction_counterexample(
    g: &Graph,
    d: &EarDecomposition,
    r: usize,
    u: usize,
    v: usize,
    cap: usize,
) -> Result<Option<EdgeSet>, EarError> {
    let prev = d.prefix(g, r - 1);
    let pg = &prev.graph;
    let (lu, lv) = (prev.vertex_from_parent(u).expect("end in prefix"), prev.vertex_from_parent(v).expect("end in prefix"));
    let inner = pg.remove_vertices(&VertexSet::from_ids(pg.n(), [lu, lv]));
    let outer = ParitySpaces::new(pg, cap)?;
    let deleted = ParitySpaces::new(&inner.graph, cap)?;
    if !outer.complete || !deleted.complete {
        return Err(FeasibilityError::Incomplete { cap }.into());
    }
    let mut joint = outer.d.clone();
    for row in deleted.d.basis() {
        let lifted = inner.lift_edges(&EdgeSet::from(row.clone()));
        joint.insert(lifted.bits()).expect("edge space");
    }
    let survivors = joint.orthogonal_complement();
    let local = survivors
        .basis()
        .iter()
        .find(|b| !outer.cut_plus_e.contains(b).expect("edge space"))
        .map(|b| EdgeSet::from(b.clone()));

    if outer.nf.dim() <= MAX_ENUMERATED_NF_DIM {
        let listed = enumerated_counterexample(&outer, &inner, &deleted)?;
        assert_eq!(listed.is_some(), local.is_some(), "restriction test disagrees with its enumeration");
    }
    Ok(local.map(|x| prev.lift_edges(&x)))
}

/// The restriction test by walking nF of the prefix member by member.
fn enumerated_counterexample(
    outer: &ParitySpaces,
    inner: &Subgraph,
    deleted: &ParitySpaces,
) -> Result<Option<EdgeSet>, FeasibilityError> {
    for x in outer.enumerate_nf(MAX_ENUMERATED_NF_DIM)? {
        if outer.cut_plus_e.contains(x.bits()).expect("edge space") {
            continue;
        }
        let restricted = inner.restrict_edges(&x);
        if deleted.parity_witness(&restricted).is_none() {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::petersen;
    use crate::families;
    use crate::feasibility::nf_star_report;

    #[test]
    fn cycle_gets_one_ear() {
        let d = find_ear_decomposition(&families::cycle(4), DEFAULT_BUDGET).unwrap();
        assert_eq!((d.r(), d.epsilon_sum()), (1, 1));
        assert_eq!(d.steps[0].ear.paths[0].len(), 3);
        assert_eq!(validate_decomposition(&families::cycle(4), &d), Ok(()));
    }

    #[test]
    fn k4_ends_with_double_ear() {
        let k4 = families::complete(4);
        let d = find_ear_decomposition(&k4, DEFAULT_BUDGET).unwrap();
        assert_eq!((d.r(), d.epsilon_sum()), (2, 3));
        assert_eq!(d.steps[1].ear.kind, EarKind::Double);
        assert!(d.steps[1].ear.paths.iter().all(|p| p.len() == 1));
        let c = classify_nf_star(&k4, &d, 1000).unwrap();
        assert!(c.empty);
        assert_eq!(c.rule, ClassifierRule::EpsilonSumBound);
    }

    #[test]
    fn k2_has_no_ears() {
        let d = find_ear_decomposition(&families::complete(2), DEFAULT_BUDGET).unwrap();
        assert_eq!(d.r(), 0);
    }

    #[test]
    fn single_ear_examples() {
        let c6 = families::cycle(6);
        let d = find_single_ear_decomposition(&c6, DEFAULT_BUDGET).unwrap();
        assert_eq!(d.r(), 1);
        assert_eq!(d.steps[0].ear.paths[0].len(), 5);
        let k33 = families::complete_bipartite(3, 3);
        let d = find_single_ear_decomposition(&k33, DEFAULT_BUDGET).unwrap();
        assert!(d.is_all_single());
        assert_eq!(d.r(), 4);
        assert!(matches!(
            find_single_ear_decomposition(&families::complete(4), DEFAULT_BUDGET),
            Err(EarError::NotBipartite { .. })
        ));
    }

    #[test]
    fn even_path_is_rejected() {
        let c4 = families::cycle(4);
        let mut d = find_ear_decomposition(&c4, DEFAULT_BUDGET).unwrap();
        d.steps[0].ear.paths[0].edges.pop();
        let fault = validate_decomposition(&c4, &d).unwrap_err();
        assert_eq!(fault.step, 1);
        assert_eq!(fault.clause, Clause::OddLength { path: 0 });
        assert!(fault.to_string().contains("odd length"));
    }

    #[test]
    fn uncovered_intermediate_is_rejected() {
        // C4 on 0-1-2-3 grown by the chord 0-2 and then the chord 1-3
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]);
        let chord = |e: usize, u, v| Ear { kind: EarKind::Single, paths: vec![EarPath { u, v, internal: vec![], edges: vec![e] }] };
        let d = EarDecomposition {
            base_edge: 0,
            steps: vec![
                EarStep {
                    ear: Ear { kind: EarKind::Single, paths: vec![EarPath { u: 1, v: 0, internal: vec![2, 3], edges: vec![1, 2, 3] }] },
                    epsilon: 1,
                    vertices: vec![0, 1, 2, 3],
                    edges: vec![0, 1, 2, 3],
                },
                EarStep { ear: chord(4, 0, 2), epsilon: 1, vertices: vec![0, 1, 2, 3], edges: vec![0, 1, 2, 3, 4] },
                EarStep { ear: chord(5, 1, 3), epsilon: 1, vertices: vec![0, 1, 2, 3], edges: vec![0, 1, 2, 3, 4, 5] },
            ],
        };
        let fault = validate_decomposition(&g, &d).unwrap_err();
        assert_eq!(fault.step, 2);
        assert!(matches!(fault.clause, Clause::NotMatchingCovered(MatchingCoverage::UncoveredEdge(_))));
    }

    #[test]
    fn petersen_classifies_non_empty() {
        let p = petersen();
        let d = find_ear_decomposition(&p, DEFAULT_BUDGET).unwrap();
        assert_eq!(validate_decomposition(&p, &d), Ok(()));
        let c = classify_nf_star(&p, &d, 10_000).unwrap();
        assert!(!c.empty);
        assert_eq!(c.empty, nf_star_report(&p, 10_000).unwrap().empty);
    }

    #[test]
    fn decomposition_counts() {
        for g in [families::hypercube(3), families::complete(6), families::complete_bipartite(4, 4), petersen()] {
            let d = find_ear_decomposition(&g, DEFAULT_BUDGET).unwrap();
            let edge_total: usize = d.steps.iter().flat_map(|s| &s.ear.paths).map(|p| p.len()).sum();
            let internal_total: usize = d.steps.iter().flat_map(|s| &s.ear.paths).map(|p| p.internal.len()).sum();
            assert_eq!(g.m(), 1 + edge_total);
            assert_eq!(g.n(), 2 + internal_total);
        }
    }
}
