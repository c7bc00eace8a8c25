//! Feasible and non-feasible edge sets in matching-covered graphs.
//!
//! The crate decides whether every perfect matching meets an edge set with the same
//! parity, relates such sets to cuts of the graph, classifies the graphs whose only
//! non-feasible sets are cuts and co-cuts, and builds regular class-1 families that
//! carry checkable witnesses.

pub mod bitvec;
pub mod connectivity;
pub mod ears;
pub mod constructions;
pub mod corpus;
pub mod families;
pub mod feasibility;
pub mod gf2;
pub mod graph;
pub mod io;
pub mod matching;
pub mod report;
pub mod verify;

pub use bitvec::{BitVec, EdgeSet, SpaceMismatch, VertexSet};
pub use feasibility::{
    is_feasible, is_switch_equiv, is_switch_equiv_empty, is_switch_equiv_full, nf_star_report, parity_spaces,
    EdgeSetClass, FeasibilityError, NfStarReport, ParitySpaces, SwitchVerdict,
};
pub use gf2::{Gf2Error, Gf2Subspace};
pub use graph::{Bipartition, Graph, GraphError, Subgraph};
pub use matching::{is_matching_covered, MatchingCoverage, PerfectMatching, DEFAULT_ENUMERATION_CAP};
