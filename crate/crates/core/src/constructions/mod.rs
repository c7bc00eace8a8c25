//! Generators for regular class-1 families with checkable certificates.
//!
//! Each builder returns a [`ConstructionCertificate`]: the graph plus the properties the
//! construction is known to produce. [`ConstructionCertificate::verify`] re-checks every
//! claim from the graph alone.

mod builders;
mod coloring;

use std::ops::ControlFlow;

pub use builders::{
    build_chain, build_cycle_cl, build_qr, build_star_xs, splice, ChainPart, CyclePart, SplicePart, StarPart,
};
pub use coloring::{
    chromatic_index_exact, class_one_coloring, ChromaticIndex, ColoringError, EdgeColoring, DEFAULT_COLORING_BUDGET,
};

use crate::bitvec::{BitVec, EdgeSet};
use crate::connectivity::vertex_connectivity_at_least;
use crate::feasibility::{cut_space, is_switch_equiv_empty, is_switch_equiv_full, FeasibilityError};
use crate::graph::Graph;
use crate::matching::{for_each_perfect_matching, is_matching_covered, MatchingCoverage};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("part {part}: edge {edge} is not an edge (the part has {m} edges)")]
    EdgeNotInGraph { part: usize, edge: usize, m: usize },
    #[error("part {part}: vertex {vertex} is not a vertex (the part has {n} vertices)")]
    VertexNotInGraph { part: usize, vertex: usize, n: usize },
    #[error("part {part} is not matching-covered: {coverage:?}")]
    NotMatchingCovered { part: usize, coverage: MatchingCoverage },
    #[error("part {part}: {reason}")]
    PreconditionFailed { part: usize, reason: String },
    #[error("part {part}: the supplied edge pair is not an equivalent set")]
    NotEquivalent { part: usize },
    #[error("part {part}: coloring cannot be used: {reason}")]
    ColoringMismatch { part: usize, reason: String },
    #[error("part {part}: could not verify the equivalent pair: {source}")]
    Feasibility { part: usize, source: FeasibilityError },
}

/// A perfect-matching property checked on every enumerated matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingConstraint {
    /// Cyclically ordered pairs `(f_i, f'_i)`: a matching meeting only `f_i` meets only
    /// `f'_{i+1}` of the next pair, and one meeting only `f'_i` meets only `f_{i+1}`.
    Alternation { pairs: Vec<(usize, usize)> },
    /// Every perfect matching meets each bundle in exactly one edge.
    OnePerBundle { bundles: Vec<EdgeSet> },
}

/// A built graph with the properties its construction guarantees.
#[derive(Debug, Clone)]
pub struct ConstructionCertificate {
    pub name: String,
    pub params: serde_json::Value,
    pub graph: Graph,
    /// Claimed common degree, when the graph is regular.
    pub r: Option<usize>,
    /// Claimed lower bound on vertex connectivity.
    pub claimed_connectivity: usize,
    pub matching_covered: bool,
    /// Claimed proper coloring whose classes are perfect matchings.
    pub coloring: Option<EdgeColoring>,
    pub equivalent_sets: Vec<EdgeSet>,
    pub nf_star_witnesses: Vec<EdgeSet>,
    pub constraints: Vec<MatchingConstraint>,
    /// Claims the construction could have made but did not, with the reason.
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClaimOutcome {
    Verified,
    Failed(String),
    /// Checking needed more perfect matchings than the cap allowed.
    Unverified(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimCheck {
    pub claim: String,
    pub outcome: ClaimOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<ClaimCheck>,
    pub pm_count: usize,
    pub enumeration_complete: bool,
}

impl VerificationReport {
    pub fn all_verified(&self) -> bool {
        self.checks.iter().all(|c| c.outcome == ClaimOutcome::Verified)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimCheck> {
        self.checks.iter().filter(|c| matches!(c.outcome, ClaimOutcome::Failed(_)))
    }

    pub fn any_failed(&self) -> bool {
        self.failures().next().is_some()
    }

    pub fn any_unverified(&self) -> bool {
        self.checks.iter().any(|c| matches!(c.outcome, ClaimOutcome::Unverified(_)))
    }
}

/// Running state of one matching-dependent claim during the enumeration pass.
enum Tracker {
    Equivalent { set: EdgeSet, failure: Option<String> },
    ConstantParity { set: EdgeSet, parity: Option<usize>, failure: Option<String> },
    Alternation { pairs: Vec<(usize, usize)>, failure: Option<String> },
    OnePerBundle { bundles: Vec<EdgeSet>, failure: Option<String> },
}

impl Tracker {
    fn observe(&mut self, m: &BitVec) {
        match self {
            Tracker::Equivalent { set, failure } if failure.is_none() => {
                let k = set.bits().and_count(m);
                if k != 0 && k != set.len() {
                    *failure = Some(format!("a perfect matching meets {k} of its {} edges", set.len()));
                }
            }
            Tracker::ConstantParity { set, parity, failure } if failure.is_none() => {
                let p = set.bits().and_count(m) % 2;
                match parity {
                    None => *parity = Some(p),
                    Some(q) if *q != p => *failure = Some("two perfect matchings meet it with different parities".into()),
                    _ => {}
                }
            }
            Tracker::Alternation { pairs, failure } if failure.is_none() => {
                let k = pairs.len();
                for i in 0..k {
                    let (f, fp) = pairs[i];
                    let (g, gp) = pairs[(i + 1) % k];
                    let (hit, hit_p, next, next_p) = (m.get(f), m.get(fp), m.get(g), m.get(gp));
                    let bad = (hit && !hit_p && !(next_p && !next)) || (hit_p && !hit && !(next && !next_p));
                    if bad {
                        *failure = Some(format!("pair {i} is met once but pair {} does not alternate", (i + 1) % k));
                        return;
                    }
                }
            }
            Tracker::OnePerBundle { bundles, failure } if failure.is_none() => {
                if let Some(i) = bundles.iter().position(|b| b.bits().and_count(m) != 1) {
                    *failure = Some(format!("a perfect matching meets bundle {i} in {} edges", bundles[i].bits().and_count(m)));
                }
            }
            _ => {}
        }
    }

    fn failure(&self) -> Option<&String> {
        match self {
            Tracker::Equivalent { failure, .. }
            | Tracker::ConstantParity { failure, .. }
            | Tracker::Alternation { failure, .. }
            | Tracker::OnePerBundle { failure, .. } => failure.as_ref(),
        }
    }
}

impl ConstructionCertificate {
    /// Re-checks every claim from the graph alone, enumerating at most `cap` perfect matchings.
    pub fn verify(&self, cap: usize) -> VerificationReport {
        let g = &self.graph;
        let mut checks = Vec::new();
        let mut push = |claim: String, outcome| checks.push(ClaimCheck { claim, outcome });

        if let Some(r) = self.r {
            let regular = match g.regular_degree() {
                Some(d) if d == r => ClaimOutcome::Verified,
                _ => ClaimOutcome::Failed(format!("degrees range over {}..={}", g.min_degree(), g.max_degree())),
            };
            push(format!("{r}-regular"), regular);
        }

        if self.claimed_connectivity > 0 {
            let k = self.claimed_connectivity;
            let outcome = match vertex_connectivity_at_least(g, k) {
                c if c.holds() => ClaimOutcome::Verified,
                c => ClaimOutcome::Failed(format!("{c:?}")),
            };
            push(format!("{k}-connected"), outcome);
        }

        if self.matching_covered {
            let outcome = match is_matching_covered(g) {
                MatchingCoverage::Yes => ClaimOutcome::Verified,
                other => ClaimOutcome::Failed(format!("{other:?}")),
            };
            push("matching-covered".into(), outcome);
        }

        if let Some(coloring) = &self.coloring {
            let k = coloring.num_colors();
            let outcome = match coloring.check_perfect_classes(g) {
                Ok(()) if k == g.max_degree() => ClaimOutcome::Verified,
                Ok(()) => ClaimOutcome::Failed(format!("uses {k} colors but the maximum degree is {}", g.max_degree())),
                Err(e) => ClaimOutcome::Failed(e.to_string()),
            };
            push(format!("class 1: proper {k}-edge-coloring into perfect matchings"), outcome);
        }

        let mut trackers = Vec::new();
        let mut names = Vec::new();
        for (i, s) in self.equivalent_sets.iter().enumerate() {
            names.push(format!("equivalent set {i} {:?}", s.to_vec()));
            trackers.push(Tracker::Equivalent { set: s.clone(), failure: None });
        }
        for (i, w) in self.nf_star_witnesses.iter().enumerate() {
            names.push(format!("nF* witness {i} {:?}: non-feasible", w.to_vec()));
            trackers.push(Tracker::ConstantParity { set: w.clone(), parity: None, failure: None });
        }
        for c in &self.constraints {
            match c {
                MatchingConstraint::Alternation { pairs } => {
                    names.push("paired edges alternate around the cycle".into());
                    trackers.push(Tracker::Alternation { pairs: pairs.clone(), failure: None });
                }
                MatchingConstraint::OnePerBundle { bundles } => {
                    names.push("one edge of each hub bundle in every perfect matching".into());
                    trackers.push(Tracker::OnePerBundle { bundles: bundles.clone(), failure: None });
                }
            }
        }

        let mut summary = None;
        if !trackers.is_empty() {
            let mut bits = BitVec::zeros(g.m());
            let s = for_each_perfect_matching(g, cap, |ids| {
                ids.iter().for_each(|&e| bits.set(e, true));
                trackers.iter_mut().for_each(|t| t.observe(&bits));
                ids.iter().for_each(|&e| bits.set(e, false));
                ControlFlow::Continue(())
            });
            summary = Some(s);
            for (name, t) in names.into_iter().zip(&trackers) {
                let outcome = match t.failure() {
                    Some(f) => ClaimOutcome::Failed(f.clone()),
                    None if s.complete => ClaimOutcome::Verified,
                    None => ClaimOutcome::Unverified(format!("more than {cap} perfect matchings")),
                };
                push(name, outcome);
            }
        }

        if !self.nf_star_witnesses.is_empty() {
            let mut trivial = cut_space(g);
            trivial.insert(&BitVec::ones(g.m())).expect("edge space");
            for (i, w) in self.nf_star_witnesses.iter().enumerate() {
                let in_span = trivial.contains(w.bits()).expect("edge space");
                let to_empty = is_switch_equiv_empty(g, w).holds();
                let to_all = is_switch_equiv_full(g, w).holds();
                assert_eq!(in_span, to_empty || to_all, "cut-space test disagrees with switching test");
                let outcome = if in_span {
                    ClaimOutcome::Failed(if to_empty { "equivalent to the empty set" } else { "equivalent to E" }.into())
                } else {
                    ClaimOutcome::Verified
                };
                push(format!("nF* witness {i}: equivalent to neither the empty set nor E"), outcome);
            }
        }

        let (pm_count, enumeration_complete) = summary.map_or((0, true), |s| (s.visited, s.complete));
        VerificationReport { checks, pm_count, enumeration_complete }
    }
}

/// Whether every perfect matching contains all of `s` or none of it.
///
/// A matching meeting `s` partially settles the question even when enumeration is capped.
pub fn verify_equivalent_set(g: &Graph, s: &EdgeSet, cap: usize) -> Result<bool, FeasibilityError> {
    if s.universe() != g.m() {
        return Err(FeasibilityError::WrongSpace { expected: g.m(), got: s.universe() });
    }
    let mut split = false;
    let summary = for_each_perfect_matching(g, cap, |ids| {
        let k = ids.iter().filter(|&&e| s.contains(e)).count();
        if k != 0 && k != s.len() {
            split = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    if split {
        Ok(false)
    } else if summary.complete {
        Ok(true)
    } else {
        Err(FeasibilityError::Incomplete { cap })
    }
}

/// The Petersen graph: outer cycle `0-1-2-3-4`, spokes `i–(i+5)`, inner pentagram `5-7-9-6-8`.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        edges.push((i, i + 5));
    }
    for i in 0..5 {
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::matching::enumerate_perfect_matchings;

    fn girth(g: &Graph) -> usize {
        let mut best = usize::MAX;
        for e in 0..g.m() {
            let (a, b) = g.endpoints(e);
            let rest = g.remove_edges(&EdgeSet::from_ids(g.m(), [e]));
            let mut dist = vec![usize::MAX; g.n()];
            dist[a] = 0;
            let mut queue = std::collections::VecDeque::from([a]);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in rest.graph.incident(v) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if dist[b] != usize::MAX {
                best = best.min(dist[b] + 1);
            }
        }
        best
    }

    #[test]
    fn petersen_shape() {
        let p = petersen();
        assert_eq!((p.n(), p.m(), p.regular_degree()), (10, 15, Some(3)));
        assert_eq!(girth(&p), 5);
        assert_eq!(enumerate_perfect_matchings(&p, 100).matchings.len(), 6);
    }

    #[test]
    fn equivalent_set_examples() {
        let k4 = families::complete(4);
        // {01, 23} is a perfect matching of K4
        assert_eq!(verify_equivalent_set(&k4, &EdgeSet::from_ids(6, [0, 5]), 100), Ok(true));
        assert_eq!(verify_equivalent_set(&k4, &EdgeSet::from_ids(6, [0, 1]), 100), Ok(false));
        let q3 = build_qr(3).unwrap();
        assert_eq!(verify_equivalent_set(&q3.graph, &q3.equivalent_sets[0], 100), Ok(true));
    }

    #[test]
    fn capped_equivalence_is_incomplete() {
        let k6 = families::complete(6);
        let single = EdgeSet::from_ids(15, [0]);
        assert_eq!(verify_equivalent_set(&k6, &single, 2), Err(FeasibilityError::Incomplete { cap: 2 }));
        // the second matching found already splits this one
        let pm = EdgeSet::from_ids(15, [0, 9, 14]);
        assert_eq!(verify_equivalent_set(&k6, &pm, 2), Ok(false));
    }

    #[test]
    fn tampered_certificate_fails() {
        let mut cert = build_qr(3).unwrap();
        cert.equivalent_sets.push(EdgeSet::from_ids(cert.graph.m(), [0, 1]));
        cert.nf_star_witnesses.push(cert.graph.star(0));
        let report = cert.verify(1000);
        assert_eq!(report.failures().count(), 2);
    }
}
