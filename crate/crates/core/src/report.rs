//! The whole-graph analysis report and its independent re-check.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::bitvec::{BitVec, EdgeSet, VertexSet};
use crate::connectivity::{vertex_connectivity_at_least, Connectivity};
use crate::constructions::{chromatic_index_exact, ChromaticIndex, EdgeColoring, DEFAULT_COLORING_BUDGET};
use crate::feasibility::{is_switch_equiv_empty, is_switch_equiv_full, FeasibilityError, ParitySpaces};
use crate::gf2::Gf2Subspace;
use crate::graph::Graph;
use crate::io::{GraphJson, IoError, SCHEMA_VERSION};
use crate::matching::{for_each_perfect_matching, is_matching_covered, MatchingCoverage, DEFAULT_ENUMERATION_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeOptions {
    /// Most perfect matchings to enumerate.
    pub cap: usize,
    /// Most color assignments tried by the chromatic index search.
    pub coloring_budget: usize,
    /// Connectivity threshold to test; defaults to the minimum degree.
    pub connectivity_k: Option<usize>,
    pub seed: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            cap: DEFAULT_ENUMERATION_CAP,
            coloring_budget: DEFAULT_COLORING_BUDGET,
            connectivity_k: None,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityCheck {
    pub k: usize,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separator: Option<Vec<usize>>,
}

/// Either an exact value or the string `"unknown"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReportedIndex {
    Exact(usize),
    Unknown(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub seed: u64,
    pub graph: GraphJson,
    pub n: usize,
    pub m: usize,
    pub connected: bool,
    pub bipartite: bool,
    pub matching_covered: bool,
    /// Why the graph is not matching-covered.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coverage_detail: Option<String>,
    pub pm_count: usize,
    pub pm_cap: usize,
    pub pm_cap_hit: bool,
    /// `None` when there is no perfect matching or enumeration hit the cap.
    #[serde(rename = "dim_D")]
    pub dim_d: Option<usize>,
    #[serde(rename = "dim_nF")]
    pub dim_nf: Option<usize>,
    pub dim_cut: usize,
    #[serde(rename = "E_in_cut")]
    pub e_in_cut: bool,
    /// `None` unless the graph is matching-covered and enumeration finished.
    pub nf_star_empty: Option<bool>,
    pub nf_star_witness: Option<Vec<usize>>,
    pub regularity: Option<usize>,
    pub vertex_connectivity_checked: ConnectivityCheck,
    pub chromatic_index: ReportedIndex,
    /// A proper coloring with `chromatic_index` colors, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_coloring: Option<Vec<usize>>,
}

impl AnalysisReport {
    pub fn incomplete(&self) -> bool {
        self.pm_cap_hit
    }
}

/// Largest number of edges joining the same pair of vertices.
fn max_multiplicity(g: &Graph) -> usize {
    let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(u, v) in g.edges() {
        *count.entry((u.min(v), u.max(v))).or_default() += 1;
    }
    count.into_values().max().unwrap_or(0)
}

fn coverage_text(c: &MatchingCoverage) -> Option<String> {
    match c {
        MatchingCoverage::Yes => None,
        MatchingCoverage::NotConnected => Some("graph is not connected".into()),
        MatchingCoverage::NoPerfectMatching => Some("graph has no perfect matching".into()),
        MatchingCoverage::UncoveredEdge(e) => Some(format!("edge {e} lies in no perfect matching")),
    }
}

fn connectivity_check(g: &Graph, k: usize) -> ConnectivityCheck {
    if k == 0 {
        return ConnectivityCheck { k, holds: true, separator: None };
    }
    match vertex_connectivity_at_least(g, k) {
        Connectivity::AtLeast => ConnectivityCheck { k, holds: true, separator: None },
        Connectivity::Separator { separator } => ConnectivityCheck { k, holds: false, separator: Some(separator) },
        Connectivity::TooFewVertices { .. } => ConnectivityCheck { k, holds: false, separator: None },
    }
}

pub fn analyze(g: &Graph, opts: &AnalyzeOptions) -> AnalysisReport {
    let coverage = is_matching_covered(g);
    let bipartite = g.is_bipartite().is_bipartite();
    let dim_cut = g.n() - g.component_count();
    let mut report = AnalysisReport {
        schema_version: SCHEMA_VERSION,
        seed: opts.seed,
        graph: GraphJson::from(g),
        n: g.n(),
        m: g.m(),
        connected: g.is_connected(),
        bipartite,
        matching_covered: coverage.is_yes(),
        coverage_detail: coverage_text(&coverage),
        pm_count: 0,
        pm_cap: opts.cap,
        pm_cap_hit: false,
        dim_d: None,
        dim_nf: None,
        dim_cut,
        e_in_cut: bipartite,
        nf_star_empty: None,
        nf_star_witness: None,
        regularity: g.regular_degree(),
        vertex_connectivity_checked: connectivity_check(g, opts.connectivity_k.unwrap_or_else(|| g.min_degree())),
        chromatic_index: ReportedIndex::Unknown("unknown".into()),
        edge_coloring: None,
    };
    match ParitySpaces::new(g, opts.cap) {
        Ok(spaces) => {
            report.pm_count = spaces.pm_count();
            report.pm_cap_hit = !spaces.complete;
            report.e_in_cut = spaces.e_in_cut();
            if spaces.complete {
                report.dim_d = Some(spaces.d.dim());
                report.dim_nf = Some(spaces.nf.dim());
                if coverage.is_yes() {
                    let nfs = spaces.nf_star_report(g).expect("complete enumeration of a matching-covered graph");
                    report.nf_star_empty = Some(nfs.empty);
                    report.nf_star_witness = nfs.witness.map(|w| w.to_vec());
                }
            }
        }
        Err(FeasibilityError::NoPerfectMatching) => {}
        Err(e) => unreachable!("parity spaces of a graph: {e}"),
    }
    let limit = g.max_degree() + max_multiplicity(g);
    if let ChromaticIndex::Exact { colors, coloring } = chromatic_index_exact(g, limit, opts.coloring_budget) {
        report.chromatic_index = ReportedIndex::Exact(colors);
        report.edge_coloring = Some(coloring.colors().to_vec());
    }
    report
}

/// Independent re-check of a report against the graph it embeds.
///
/// Returns one line per disagreement; an empty list means the report stands.
pub fn revalidate(report: &AnalysisReport) -> Result<Vec<String>, IoError> {
    let g = report.graph.to_graph()?;
    let mut bad = Vec::new();
    fn check(bad: &mut Vec<String>, name: &str, reported: String, actual: String) {
        if reported != actual {
            bad.push(format!("{name}: reported {reported}, recomputed {actual}"));
        }
    }
    check(&mut bad, "n", report.n.to_string(), g.n().to_string());
    check(&mut bad, "m", report.m.to_string(), g.m().to_string());

    let comps = components_by_dfs(&g);
    check(&mut bad, "connected", report.connected.to_string(), (comps <= 1).to_string());
    let two_colorable = two_colorable(&g);
    check(&mut bad, "bipartite", report.bipartite.to_string(), two_colorable.to_string());
    check(&mut bad, "E_in_cut", report.e_in_cut.to_string(), two_colorable.to_string());
    check(&mut bad, "dim_cut", report.dim_cut.to_string(), (g.n() - comps).to_string());

    // One streaming pass: count matchings, collect their union and the span of M ⊕ M0.
    let mut base: Option<BitVec> = None;
    let mut union = BitVec::zeros(g.m());
    let mut d = Gf2Subspace::zero(g.m());
    let mut matchings: Vec<BitVec> = Vec::new();
    let summary = for_each_perfect_matching(&g, report.pm_cap, |ids| {
        let m = BitVec::from_indices(g.m(), ids.iter().copied());
        union.or_assign(&m);
        match &base {
            None => base = Some(m.clone()),
            Some(b) => {
                let mut diff = m.clone();
                diff.xor_assign(b);
                d.insert(&diff).expect("same edge space");
            }
        }
        matchings.push(m);
        ControlFlow::Continue(())
    });
    check(&mut bad, "pm_count", report.pm_count.to_string(), summary.visited.to_string());
    check(&mut bad, "pm_cap_hit", report.pm_cap_hit.to_string(), (!summary.complete).to_string());

    let covered = if summary.complete {
        comps == 1 && summary.visited > 0 && union.count_ones() == g.m()
    } else {
        is_matching_covered(&g).is_yes()
    };
    check(&mut bad, "matching_covered", report.matching_covered.to_string(), covered.to_string());

    let complete_with_pm = summary.complete && summary.visited > 0;
    let dims = complete_with_pm.then(|| (d.dim(), g.m() - d.dim()));
    check(&mut bad, "dim_D", format!("{:?}", report.dim_d), format!("{:?}", dims.map(|x| x.0)));
    check(&mut bad, "dim_nF", format!("{:?}", report.dim_nf), format!("{:?}", dims.map(|x| x.1)));

    let nf_star_defined = covered && complete_with_pm;
    check(&mut bad, "nf_star_empty defined", report.nf_star_empty.is_some().to_string(), nf_star_defined.to_string());
    if let (Some(empty), Some((_, dim_nf))) = (report.nf_star_empty, dims) {
        // cut + ⟨E⟩ always sits inside nF, so emptiness is a dimension count.
        let dim_trivial = g.n() - comps + usize::from(!two_colorable);
        check(&mut bad, "nf_star_empty", empty.to_string(), (dim_nf == dim_trivial).to_string());
        check(&mut bad, "witness present", report.nf_star_witness.is_some().to_string(), (!empty).to_string());
    }
    if let Some(w) = &report.nf_star_witness {
        if let Some(&e) = w.iter().find(|&&e| e >= g.m()) {
            bad.push(format!("nf_star_witness: edge id {e} out of range"));
        } else {
            let x = EdgeSet::from_ids(g.m(), w.iter().copied());
            let parities: Vec<usize> = matchings.iter().map(|m| x.bits().and_count(m) % 2).collect();
            if parities.windows(2).any(|p| p[0] != p[1]) {
                bad.push("nf_star_witness: perfect matchings meet it with different parities".into());
            }
            if is_switch_equiv_empty(&g, &x).holds() {
                bad.push("nf_star_witness: switching-equivalent to the empty set".into());
            }
            if is_switch_equiv_full(&g, &x).holds() {
                bad.push("nf_star_witness: switching-equivalent to E".into());
            }
        }
    }

    let degrees: Vec<usize> = (0..g.n()).map(|v| g.edges().iter().filter(|&&(a, b)| a == v || b == v).count()).collect();
    let regular = degrees.first().copied().filter(|&d0| degrees.iter().all(|&x| x == d0));
    check(&mut bad, "regularity", format!("{:?}", report.regularity), format!("{regular:?}"));

    let conn = &report.vertex_connectivity_checked;
    let holds = if conn.k == 0 {
        true
    } else if g.n() <= 16 {
        brute_force_connected_after_any_removal(&g, conn.k)
    } else {
        vertex_connectivity_at_least(&g, conn.k).holds()
    };
    check(&mut bad, "vertex_connectivity_checked", conn.holds.to_string(), holds.to_string());
    if let Some(sep) = &conn.separator {
        let gone = VertexSet::from_ids(g.n(), sep.iter().copied().filter(|&v| v < g.n()));
        if sep.len() >= conn.k || g.remove_vertices(&gone).graph.is_connected() {
            bad.push("vertex_connectivity_checked: reported separator does not separate".into());
        }
    }

    match (&report.chromatic_index, &report.edge_coloring) {
        (ReportedIndex::Exact(c), Some(colors)) => {
            let coloring = EdgeColoring::new(colors.clone());
            if let Err(e) = coloring.check_proper(&g) {
                bad.push(format!("edge_coloring: {e}"));
            }
            if coloring.num_colors() > *c {
                bad.push(format!("edge_coloring uses {} colors, more than {c}", coloring.num_colors()));
            }
            let max_deg = degrees.iter().copied().max().unwrap_or(0);
            if *c > max_deg && *c > 0 {
                if let ChromaticIndex::Exact { colors, .. } = chromatic_index_exact(&g, c - 1, DEFAULT_COLORING_BUDGET) {
                    bad.push(format!("chromatic_index: a proper {colors}-edge-coloring exists"));
                }
            } else if *c < max_deg {
                bad.push(format!("chromatic_index {c} is below the maximum degree {max_deg}"));
            }
        }
        (ReportedIndex::Exact(_), None) => bad.push("chromatic_index: exact value without a coloring".into()),
        (ReportedIndex::Unknown(s), _) if s != "unknown" => bad.push(format!("chromatic_index: unexpected value {s:?}")),
        _ => {}
    }
    Ok(bad)
}

fn components_by_dfs(g: &Graph) -> usize {
    let mut seen = vec![false; g.n()];
    let mut count = 0;
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &(w, _) in g.incident(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Bipartite iff constraint propagation of "ends differ" never contradicts.
fn two_colorable(g: &Graph) -> bool {
    let mut side: Vec<Option<bool>> = vec![None; g.n()];
    for s in 0..g.n() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let sv = side[v].expect("colored before push");
            for &(w, _) in g.incident(v) {
                match side[w] {
                    None => {
                        side[w] = Some(!sv);
                        stack.push(w);
                    }
                    Some(sw) if sw == sv => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// More than `k` vertices and every removal of fewer than `k` vertices leaves a connected graph.
fn brute_force_connected_after_any_removal(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if n <= k {
        return false;
    }
    (0u32..1 << n).filter(|s| (s.count_ones() as usize) < k).all(|s| {
        let gone = VertexSet::from_ids(n, (0..n).filter(|&v| s >> v & 1 == 1));
        components_by_dfs(&g.remove_vertices(&gone).graph) <= 1
    })
}
