//! Feasible and non-feasible edge sets, switching-equivalence, and the set nF*(G).
//!
//! An edge set `X` is non-feasible when `|M ∩ X| mod 2` is the same for every perfect
//! matching `M`. Fixing one matching `M0`, that is the same as `X` being orthogonal over
//! GF(2) to every `M ⊕ M0`, so the non-feasible sets form the subspace `D^⊥` where
//! `D = span{M ⊕ M0}`. Sets switching-equivalent to `∅` are exactly the cuts `∇(U)`,
//! and those equivalent to `E` are `E ⊕ ∇(U)`; together they make up the subspace
//! `cut + span{E}`.

use crate::bitvec::{BitVec, EdgeSet, VertexSet};
use crate::gf2::Gf2Subspace;
use crate::graph::Graph;
use crate::matching::{enumerate_perfect_matchings, is_matching_covered, MatchingCoverage, PerfectMatching};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FeasibilityError {
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("perfect-matching enumeration stopped at the cap of {cap}; result cannot be certified")]
    Incomplete { cap: usize },
    #[error("graph is not matching-covered: {0:?}")]
    NotMatchingCovered(MatchingCoverage),
    #[error("nF has dimension {dim}, above the enumeration limit {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("edge set has {got} positions but the graph has {expected} edges")]
    WrongSpace { expected: usize, got: usize },
}

/// The GF(2) spaces attached to a graph with a perfect matching.
#[derive(Debug, Clone)]
pub struct ParitySpaces {
    pub base_matching: PerfectMatching,
    pub matchings: Vec<PerfectMatching>,
    /// Span of `M ⊕ M0` over the enumerated matchings.
    pub d: Gf2Subspace,
    /// `D^⊥`: the non-feasible sets (an over-approximation unless `complete`).
    pub nf: Gf2Subspace,
    pub cut: Gf2Subspace,
    pub cut_plus_e: Gf2Subspace,
    pub complete: bool,
    pub cap: usize,
    edges: usize,
}

/// The span of all vertex stars, i.e. all `∇(U)`.
pub fn cut_space(g: &Graph) -> Gf2Subspace {
    let mut cut = Gf2Subspace::zero(g.m());
    for v in 0..g.n() {
        cut.insert(g.star(v).bits()).expect("star lives in the edge space");
    }
    cut
}

pub fn parity_spaces(g: &Graph, cap: usize) -> Result<ParitySpaces, FeasibilityError> {
    ParitySpaces::new(g, cap)
}

impl ParitySpaces {
    pub fn new(g: &Graph, cap: usize) -> Result<Self, FeasibilityError> {
        let enumeration = enumerate_perfect_matchings(g, cap);
        let Some(base) = enumeration.matchings.first().cloned() else {
            return Err(FeasibilityError::NoPerfectMatching);
        };
        let m = g.m();
        let mut d = Gf2Subspace::zero(m);
        for pm in &enumeration.matchings[1..] {
            d.insert(&(pm.edges().bits() ^ base.edges().bits())).expect("edge space");
        }
        let nf = d.orthogonal_complement();
        let cut = cut_space(g);
        assert_eq!(cut.dim(), g.n() - g.component_count(), "cut space dimension");
        let mut cut_plus_e = cut.clone();
        cut_plus_e.insert(&BitVec::ones(m)).expect("edge space");
        debug_assert!(cut.is_subspace_of(&nf).unwrap(), "every cut is non-feasible");
        debug_assert!(nf.contains(&BitVec::ones(m)).unwrap(), "E is non-feasible");
        Ok(ParitySpaces {
            base_matching: base,
            matchings: enumeration.matchings,
            d,
            nf,
            cut,
            cut_plus_e,
            complete: enumeration.complete,
            cap,
            edges: m,
        })
    }

    pub fn pm_count(&self) -> usize {
        self.matchings.len()
    }

    pub fn e_in_cut(&self) -> bool {
        self.cut.contains(&BitVec::ones(self.edges)).expect("edge space")
    }

    fn check(&self, x: &EdgeSet) -> Result<(), FeasibilityError> {
        if x.universe() == self.edges {
            Ok(())
        } else {
            Err(FeasibilityError::WrongSpace { expected: self.edges, got: x.universe() })
        }
    }

    fn require_complete(&self) -> Result<(), FeasibilityError> {
        if self.complete {
            Ok(())
        } else {
            Err(FeasibilityError::Incomplete { cap: self.cap })
        }
    }

    /// Indices of two enumerated matchings meeting `x` with different parities, if any.
    pub fn parity_witness(&self, x: &EdgeSet) -> Option<(usize, usize)> {
        let first = self.matchings[0].edges().intersection_len(x) % 2;
        self.matchings
            .iter()
            .position(|pm| pm.edges().intersection_len(x) % 2 != first)
            .map(|j| (0, j))
    }

    /// Feasibility by the subspace test, cross-checked against a direct parity scan.
    ///
    /// A differing pair certifies feasibility even when the enumeration is incomplete;
    /// a "non-feasible" answer needs the complete set of matchings.
    pub fn is_feasible(&self, x: &EdgeSet) -> Result<bool, FeasibilityError> {
        self.check(x)?;
        let scan = self.parity_witness(x).is_some();
        if !self.complete {
            return if scan { Ok(true) } else { Err(FeasibilityError::Incomplete { cap: self.cap }) };
        }
        let algebraic = !self.nf.contains(x.bits()).expect("edge space");
        assert_eq!(algebraic, scan, "subspace and parity-scan feasibility disagree for {x:?}");
        Ok(algebraic)
    }

    /// `x ∈ nF*`: non-feasible and equivalent to neither `∅` nor `E`.
    pub fn in_nf_star(&self, x: &EdgeSet) -> Result<bool, FeasibilityError> {
        Ok(!self.is_feasible(x)? && !self.cut_plus_e.contains(x.bits()).expect("edge space"))
    }

    /// Lists every member of nF.
    pub fn enumerate_nf(&self, max_dim: usize) -> Result<impl Iterator<Item = EdgeSet> + '_, FeasibilityError> {
        self.require_complete()?;
        if self.nf.dim() > max_dim {
            return Err(FeasibilityError::DimensionTooLarge { dim: self.nf.dim(), max: max_dim });
        }
        Ok(self.nf.members().map(EdgeSet::from))
    }

    /// Decides `nF* = ∅` from dimensions, with a re-verified witness when it is not.
    pub fn nf_star_report(&self, g: &Graph) -> Result<NfStarReport, FeasibilityError> {
        self.require_complete()?;
        debug_assert!(self.cut_plus_e.is_subspace_of(&self.nf).unwrap());
        let empty = self.nf.dim() == self.cut_plus_e.dim();
        let witness = self
            .nf
            .basis()
            .iter()
            .find(|b| !self.cut_plus_e.contains(b).expect("edge space"))
            .map(|b| EdgeSet::from(b.clone()));
        assert_eq!(empty, witness.is_none());
        if let Some(w) = &witness {
            assert!(self.parity_witness(w).is_none(), "nF* witness has non-constant parity");
            assert!(!is_switch_equiv_empty(g, w).holds(), "nF* witness is a cut");
            assert!(!is_switch_equiv_full(g, w).holds(), "nF* witness is a co-cut");
        }
        Ok(NfStarReport {
            empty,
            witness,
            dim_d: self.d.dim(),
            dim_nf: self.nf.dim(),
            dim_cut: self.cut.dim(),
            e_in_cut: self.e_in_cut(),
            pm_count: self.pm_count(),
        })
    }

    /// Full classification of one edge set.
    pub fn classify(&self, g: &Graph, x: &EdgeSet) -> Result<EdgeSetClass, FeasibilityError> {
        if self.is_feasible(x)? {
            return Ok(EdgeSetClass::Feasible);
        }
        if let SwitchVerdict::Equivalent { shift } = is_switch_equiv_empty(g, x) {
            return Ok(EdgeSetClass::EquivalentToEmpty { shift });
        }
        if let SwitchVerdict::Equivalent { shift } = is_switch_equiv_full(g, x) {
            return Ok(EdgeSetClass::EquivalentToAll { shift });
        }
        Ok(EdgeSetClass::NfStar)
    }
}

/// Where an edge set sits among F, the two trivial classes of nF, and nF*.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeSetClass {
    Feasible,
    EquivalentToEmpty { shift: VertexSet },
    EquivalentToAll { shift: VertexSet },
    NfStar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NfStarReport {
    pub empty: bool,
    pub witness: Option<EdgeSet>,
    pub dim_d: usize,
    pub dim_nf: usize,
    pub dim_cut: usize,
    pub e_in_cut: bool,
    pub pm_count: usize,
}

/// nF* emptiness for a matching-covered graph.
pub fn nf_star_report(g: &Graph, cap: usize) -> Result<NfStarReport, FeasibilityError> {
    match is_matching_covered(g) {
        MatchingCoverage::Yes => {}
        other => return Err(FeasibilityError::NotMatchingCovered(other)),
    }
    ParitySpaces::new(g, cap)?.nf_star_report(g)
}

pub fn is_feasible(g: &Graph, x: &EdgeSet, cap: usize) -> Result<bool, FeasibilityError> {
    ParitySpaces::new(g, cap)?.is_feasible(x)
}

/// Members of nF(g), refusing when its dimension exceeds `max_dim`.
pub fn enumerate_nf(g: &Graph, max_dim: usize, cap: usize) -> Result<Vec<EdgeSet>, FeasibilityError> {
    let spaces = ParitySpaces::new(g, cap)?;
    let members = spaces.enumerate_nf(max_dim)?.collect();
    Ok(members)
}

/// Result of a switching-equivalence test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SwitchVerdict {
    /// The two sets differ by `∇(shift)`.
    Equivalent { shift: VertexSet },
    NotEquivalent,
}

impl SwitchVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, SwitchVerdict::Equivalent { .. })
    }
}

/// Finds `U` with `x = ∇(U)` when one exists.
///
/// Vertices joined by an edge outside `x` share a side, and every edge of `x` must cross,
/// so `x` is a cut exactly when the components of `g - x` 2-color along `x`. Each
/// component of that quotient is oriented so its smaller side lands in `U`.
fn find_cut_shore(g: &Graph, x: &EdgeSet) -> Option<VertexSet> {
    let label = g.component_labels_within(&x.complement());
    let parts = label.iter().copied().max().map_or(0, |c| c + 1);
    let mut size = vec![0usize; parts];
    for &c in &label {
        size[c] += 1;
    }
    let mut quotient = vec![Vec::new(); parts];
    for e in x.ids() {
        let (a, b) = g.endpoints(e);
        let (ca, cb) = (label[a], label[b]);
        if ca == cb {
            return None;
        }
        quotient[ca].push(cb);
        quotient[cb].push(ca);
    }
    let mut color = vec![u8::MAX; parts];
    let mut in_shore = vec![false; parts];
    for root in 0..parts {
        if color[root] != u8::MAX {
            continue;
        }
        color[root] = 0;
        let mut members = vec![root];
        let mut stack = vec![root];
        while let Some(c) = stack.pop() {
            for &d in &quotient[c] {
                if color[d] == u8::MAX {
                    color[d] = 1 - color[c];
                    members.push(d);
                    stack.push(d);
                } else if color[d] == color[c] {
                    return None;
                }
            }
        }
        let ones: usize = members.iter().filter(|&&c| color[c] == 1).map(|&c| size[c]).sum();
        let zeros: usize = members.iter().filter(|&&c| color[c] == 0).map(|&c| size[c]).sum();
        let pick = u8::from(ones <= zeros);
        for &c in &members {
            in_shore[c] = color[c] == pick;
        }
    }
    Some(VertexSet::from_ids(g.n(), (0..g.n()).filter(|&v| in_shore[label[v]])))
}

/// `x ∼ ∅`, i.e. `x` is a cut of `g`; the combinatorial answer is cross-checked against cut-space membership.
pub fn is_switch_equiv_empty(g: &Graph, x: &EdgeSet) -> SwitchVerdict {
    assert_eq!(x.universe(), g.m(), "edge set belongs to a different graph");
    let shore = find_cut_shore(g, x);
    let in_cut_space = cut_space(g).contains(x.bits()).expect("edge space");
    assert_eq!(shore.is_some(), in_cut_space, "cut recognition disagrees with cut-space membership");
    match shore {
        Some(shift) => {
            assert_eq!(&g.boundary(&shift), x);
            SwitchVerdict::Equivalent { shift }
        }
        None => SwitchVerdict::NotEquivalent,
    }
}

/// `x ∼ E`, i.e. `E − x` is a cut.
pub fn is_switch_equiv_full(g: &Graph, x: &EdgeSet) -> SwitchVerdict {
    is_switch_equiv_empty(g, &x.complement())
}

/// `x ∼ y`, i.e. `x ⊕ y` is a cut.
pub fn is_switch_equiv(g: &Graph, x: &EdgeSet, y: &EdgeSet) -> SwitchVerdict {
    is_switch_equiv_empty(g, &x.symmetric_difference(y))
}
