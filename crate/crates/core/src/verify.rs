//! Property suites replayed over the corpus, with machine-readable results.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitvec::{EdgeSet, VertexSet};
use crate::constructions::{
    build_qr, chromatic_index_exact, petersen, ClaimOutcome, ConstructionCertificate, ConstructionError,
};
use crate::corpus::{
    build_corpus, default_chain, default_cycle, default_splice, default_star, iterated_star, CorpusEntry, CorpusError,
    CorpusSpec,
};
use crate::ears::{
    classify_nf_star, find_ear_decomposition, find_single_ear_decomposition, validate_decomposition, ClassifierRule,
    EarDecomposition, EarError, EarKind, EarSearch, DEFAULT_BUDGET,
};
use crate::feasibility::{enumerate_nf, is_switch_equiv_empty, is_switch_equiv_full, FeasibilityError, ParitySpaces};
use crate::graph::{Graph, Subgraph};
use crate::io::SCHEMA_VERSION;
use crate::matching::{for_each_perfect_matching, is_matching_covered, DEFAULT_ENUMERATION_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    SepInvariance,
    BipartiteTheorem,
    OracleNf,
    EarClassify,
    EarLemmas,
    Constructions,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::SepInvariance,
        Suite::BipartiteTheorem,
        Suite::OracleNf,
        Suite::EarClassify,
        Suite::EarLemmas,
        Suite::Constructions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SepInvariance => "sep-invariance",
            Suite::BipartiteTheorem => "bipartite-theorem",
            Suite::OracleNf => "oracle-nf",
            Suite::EarClassify => "ear-classify",
            Suite::EarLemmas => "ear-lemmas",
            Suite::Constructions => "constructions",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite `{s}` (expected one of {})", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Skip corpus members with more vertices.
    pub max_n: usize,
    pub seed: u64,
    /// Random trials per graph where a suite samples.
    pub trials: usize,
    pub cap: usize,
    /// Largest edge count for exhaustive `2^m` oracles.
    pub oracle_max_m: usize,
    /// Largest nF dimension walked member by member.
    pub max_enumerated_dim: usize,
    /// Worker threads; 0 picks the available parallelism.
    pub threads: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_n: 24,
            seed: CorpusSpec::default().seed,
            trials: 100,
            cap: DEFAULT_ENUMERATION_CAP,
            oracle_max_m: 14,
            max_enumerated_dim: 12,
            threads: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub property: String,
    pub subject: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: Suite,
    pub seed: u64,
    pub max_n: usize,
    pub trials: usize,
    pub passed: bool,
    pub results: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.results.iter().filter(|r| !r.passed)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("construction {name} failed to build: {source}")]
    Construction { name: String, source: ConstructionError },
}

/// Collects results for one subject.
struct Sink<'a> {
    subject: &'a str,
    out: Vec<PropertyResult>,
}

impl<'a> Sink<'a> {
    fn new(subject: &'a str) -> Self {
        Sink { subject, out: Vec::new() }
    }

    fn record(&mut self, property: &str, passed: bool, detail: Option<String>) {
        self.out.push(PropertyResult { property: property.into(), subject: self.subject.into(), passed, detail });
    }

    fn pass(&mut self, property: &str, detail: impl Into<Option<String>>) {
        self.record(property, true, detail.into());
    }

    fn fail(&mut self, property: &str, detail: impl Into<String>) {
        self.record(property, false, Some(detail.into()));
    }

    fn expect(&mut self, property: &str, ok: bool, detail: impl Into<String>) {
        let detail = detail.into();
        self.record(property, ok, (!detail.is_empty()).then_some(detail));
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport, VerifyError> {
    let results = match suite {
        Suite::Constructions => constructions_suite(opts)?,
        _ => {
            let corpus = build_corpus(&CorpusSpec::with_seed(opts.seed))?;
            let members: Vec<(usize, CorpusEntry)> =
                corpus.into_iter().enumerate().filter(|(_, c)| c.graph.n() <= opts.max_n).collect();
            let per_item = in_parallel(&members, opts.threads, |(index, entry)| {
                let mut sink = Sink::new(&entry.name);
                if !is_matching_covered(&entry.graph).is_yes() {
                    sink.fail("corpus member is matching-covered", "not matching-covered");
                    return sink.out;
                }
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (*index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                match suite {
                    Suite::SepInvariance => sep_invariance(&entry.graph, opts, &mut rng, &mut sink),
                    Suite::BipartiteTheorem => bipartite_theorem(&entry.graph, opts, &mut sink),
                    Suite::OracleNf => oracle_nf(&entry.graph, opts, &mut sink),
                    Suite::EarClassify => ear_classify(&entry.graph, &entry.name, opts, &mut sink),
                    Suite::EarLemmas => ear_lemmas(&entry.graph, opts, &mut sink),
                    Suite::Constructions => unreachable!(),
                }
                sink.out
            });
            per_item.into_iter().flatten().collect()
        }
    };
    Ok(SuiteReport {
        schema_version: SCHEMA_VERSION,
        suite,
        seed: opts.seed,
        max_n: opts.max_n,
        trials: opts.trials,
        passed: results.iter().all(|r| r.passed),
        results,
    })
}

/// Maps `f` over `items` on scoped threads; results stay in input order.
fn in_parallel<T: Sync, R: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = if threads == 0 { std::thread::available_parallelism().map_or(1, |n| n.get()) } else { threads };
    let chunk = items.len().div_ceil(threads.max(1)).max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> =
            items.chunks(chunk).map(|part| scope.spawn(|| part.iter().map(&f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("verification worker panicked")).collect()
    })
}

fn spaces(g: &Graph, opts: &VerifyOptions, sink: &mut Sink, property: &str) -> Option<ParitySpaces> {
    match ParitySpaces::new(g, opts.cap) {
        Ok(s) if s.complete => Some(s),
        Ok(_) => {
            sink.fail(property, format!("perfect-matching enumeration hit the cap of {}", opts.cap));
            None
        }
        Err(e) => {
            sink.fail(property, e.to_string());
            None
        }
    }
}

fn random_edge_set(rng: &mut ChaCha8Rng, m: usize) -> EdgeSet {
    EdgeSet::from_ids(m, (0..m).filter(|_| rng.gen_bool(0.5)))
}

fn sep_invariance(g: &Graph, opts: &VerifyOptions, rng: &mut ChaCha8Rng, sink: &mut Sink) {
    let Some(sp) = spaces(g, opts, sink, "feasibility is switching-invariant") else { return };
    let mut failures = 0;
    let mut first = None;
    for _ in 0..opts.trials {
        let x = random_edge_set(rng, g.m());
        let u = VertexSet::from_ids(g.n(), (0..g.n()).filter(|_| rng.gen_bool(0.5)));
        let y = x.symmetric_difference(&g.boundary(&u));
        let (fx, fy) = (sp.is_feasible(&x).expect("edge space"), sp.is_feasible(&y).expect("edge space"));
        if fx != fy {
            failures += 1;
            first.get_or_insert_with(|| format!("x = {:?}, U = {:?}", x.to_vec(), u.to_vec()));
        }
    }
    sink.expect(
        "feasibility is switching-invariant",
        failures == 0,
        match first {
            Some(f) => format!("{failures} of {} trials differ; first {f}", opts.trials),
            None => format!("{} trials", opts.trials),
        },
    );
    if g.m() >= 2 {
        let bad = (0..g.m()).find(|&e| {
            let single = EdgeSet::from_ids(g.m(), [e]);
            !sp.is_feasible(&single).expect("edge space") || !sp.is_feasible(&single.complement()).expect("edge space")
        });
        sink.expect(
            "singletons and co-singletons are feasible",
            bad.is_none(),
            bad.map(|e| format!("edge {e}")).unwrap_or_default(),
        );
    }
}

fn bipartite_theorem(g: &Graph, opts: &VerifyOptions, sink: &mut Sink) {
    let Some(sp) = spaces(g, opts, sink, "nF equals the cut space iff bipartite") else { return };
    let bipartite = g.is_bipartite().is_bipartite();
    let nf_is_cut = sp.nf.equals(&sp.cut).expect("edge space");
    sink.expect(
        "nF equals the cut space iff bipartite",
        nf_is_cut == bipartite,
        format!("bipartite = {bipartite}, dim nF = {}, dim cut = {}", sp.nf.dim(), sp.cut.dim()),
    );
    // {X ∼ E} is the coset E + cut, which is a subspace exactly when E is a cut.
    let nf_is_cocut_class = sp.e_in_cut() && nf_is_cut;
    sink.expect("nF equals the class of E iff bipartite", nf_is_cocut_class == bipartite, "");
    if !bipartite {
        // an explicit non-feasible set that is not a cut
        let found = sp.nf.basis().iter().map(|b| EdgeSet::from(b.clone())).find(|x| !is_switch_equiv_empty(g, x).holds());
        match found {
            Some(x) if sp.parity_witness(&x).is_none() => {
                sink.pass("non-bipartite graphs have a non-feasible non-cut", format!("{:?}", x.to_vec()))
            }
            Some(x) => sink.fail("non-bipartite graphs have a non-feasible non-cut", format!("{:?} fails the parity scan", x.to_vec())),
            None => sink.fail("non-bipartite graphs have a non-feasible non-cut", "every basis vector of nF is a cut"),
        }
    } else {
        let report = sp.nf_star_report(g).expect("complete");
        sink.expect("bipartite graphs have empty nF*", report.empty, "");
    }
}

fn mask(x: &EdgeSet) -> u64 {
    x.ids().fold(0, |acc, e| acc | 1 << e)
}

fn oracle_nf(g: &Graph, opts: &VerifyOptions, sink: &mut Sink) {
    let m = g.m();
    if m > opts.oracle_max_m || m > 63 || g.n() > 24 {
        return;
    }
    let mut pms = Vec::new();
    let summary = for_each_perfect_matching(g, opts.cap, |ids| {
        pms.push(ids.iter().fold(0u64, |acc, &e| acc | 1 << e));
        ControlFlow::Continue(())
    });
    if !summary.complete {
        sink.fail("nF matches the brute-force oracle", "enumeration hit the cap");
        return;
    }
    let brute: BTreeSet<u64> = (0u64..1 << m)
        .filter(|&x| pms.windows(2).all(|w| (w[0] & x).count_ones() % 2 == (w[1] & x).count_ones() % 2))
        .collect();
    let listed = match enumerate_nf(g, m, opts.cap) {
        Ok(list) => list.iter().map(mask).collect::<BTreeSet<u64>>(),
        Err(e) => {
            sink.fail("nF matches the brute-force oracle", e.to_string());
            return;
        }
    };
    let diff = brute.symmetric_difference(&listed).count();
    sink.expect(
        "nF matches the brute-force oracle",
        diff == 0,
        format!("{} non-feasible sets, {diff} discrepancies", brute.len()),
    );

    let all = (1u64 << m) - 1;
    let cuts: BTreeSet<u64> = (0u64..1 << g.n()).map(|u| mask(&g.boundary(&VertexSet::from_ids(g.n(), (0..g.n()).filter(|&v| u >> v & 1 == 1))))).collect();
    let star: Vec<u64> = brute.iter().copied().filter(|x| !cuts.contains(x) && !cuts.contains(&(x ^ all))).collect();
    match ParitySpaces::new(g, opts.cap).and_then(|sp| sp.nf_star_report(g)) {
        Ok(report) => {
            sink.expect(
                "nF* emptiness matches the brute-force oracle",
                report.empty == star.is_empty(),
                format!("|nF*| = {}", star.len()),
            );
            if let Some(w) = report.witness {
                sink.expect("nF* witness lies in the brute-force nF*", star.contains(&mask(&w)), "");
            }
        }
        Err(e) => sink.fail("nF* emptiness matches the brute-force oracle", e.to_string()),
    }

    if m <= 12 {
        let bad = (0u64..1 << m).find(|&x| {
            let set = EdgeSet::from_ids(m, (0..m).filter(|&e| x >> e & 1 == 1));
            is_switch_equiv_empty(g, &set).holds() != cuts.contains(&x)
                || is_switch_equiv_full(g, &set).holds() != cuts.contains(&(x ^ all))
        });
        sink.expect(
            "switching classes match the brute-force cut list",
            bad.is_none(),
            bad.map(|x| format!("mask {x:#b}")).unwrap_or_default(),
        );
    }
}

fn ear_classify(g: &Graph, name: &str, opts: &VerifyOptions, sink: &mut Sink) {
    let d = match find_ear_decomposition(g, DEFAULT_BUDGET) {
        Ok(d) => d,
        Err(e) => {
            sink.fail("ear decomposition found", e.to_string());
            return;
        }
    };
    match validate_decomposition(g, &d) {
        Ok(()) => sink.pass("ear decomposition found", format!("r = {}, epsilon sum = {}", d.r(), d.epsilon_sum())),
        Err(f) => {
            sink.fail("ear decomposition found", f.to_string());
            return;
        }
    }
    let bipartite = g.is_bipartite().is_bipartite();
    match (bipartite, find_single_ear_decomposition(g, DEFAULT_BUDGET)) {
        (true, Ok(s)) => sink.expect(
            "single-ear decomposition exists iff bipartite",
            s.is_all_single() && validate_decomposition(g, &s).is_ok(),
            "",
        ),
        (false, Err(EarError::NotBipartite { odd_cycle })) => {
            let k = odd_cycle.len();
            let closed = (0..k).all(|j| g.has_edge_between(odd_cycle[j], odd_cycle[(j + 1) % k]));
            sink.expect("single-ear decomposition exists iff bipartite", k % 2 == 1 && closed, format!("odd cycle {odd_cycle:?}"))
        }
        (b, other) => sink.fail("single-ear decomposition exists iff bipartite", format!("bipartite = {b}: {other:?}")),
    }
    if !bipartite && g.m() <= opts.oracle_max_m {
        // the unrestricted single-ear search must come up empty as well
        match (EarSearch { single_only: true, ..EarSearch::default() }).run(g) {
            Err(EarError::NoDecomposition) => sink.pass("exhaustive single-ear search fails on non-bipartite graphs", None),
            other => sink.fail("exhaustive single-ear search fails on non-bipartite graphs", format!("{other:?}")),
        }
    }
    let direct = match ParitySpaces::new(g, opts.cap).and_then(|sp| sp.nf_star_report(g)) {
        Ok(r) => r,
        Err(e) => {
            sink.fail("classifier agrees with the direct test", e.to_string());
            return;
        }
    };
    match classify_nf_star(g, &d, opts.cap) {
        Ok(c) => {
            sink.expect(
                "classifier agrees with the direct test",
                c.empty == direct.empty,
                format!("empty = {}, rule = {:?}", c.empty, c.rule),
            );
            if name == "K4" {
                sink.expect(
                    "K4 is empty by the epsilon-sum bound with sum r + 1 = 3",
                    c.empty && c.rule == ClassifierRule::EpsilonSumBound && c.epsilon_sum == c.r + 1 && c.epsilon_sum == 3,
                    format!("r = {}, epsilon sum = {}", c.r, c.epsilon_sum),
                );
            }
        }
        Err(e) => sink.fail("classifier agrees with the direct test", e.to_string()),
    }
}

/// nF of a prefix listed member by member, in the parent's edge ids.
fn nf_members(sp: &ParitySpaces, sub: &Subgraph, max_dim: usize) -> Option<Vec<EdgeSet>> {
    sp.enumerate_nf(max_dim).ok().map(|it| it.map(|x| sub.lift_edges(&x)).collect())
}

struct Prefix {
    sub: Subgraph,
    sp: ParitySpaces,
    empty: bool,
}

impl Prefix {
    fn local(&self, x: &EdgeSet) -> EdgeSet {
        self.sub.restrict_edges(x)
    }

    fn in_nf(&self, x: &EdgeSet) -> bool {
        !self.sp.is_feasible(&self.local(x)).expect("edge space")
    }

    fn is_cut(&self, x: &EdgeSet) -> bool {
        self.sp.cut.contains(self.local(x).bits()).expect("edge space")
    }

    fn is_cocut(&self, x: &EdgeSet) -> bool {
        self.sp.cut.contains(self.local(x).complement().bits()).expect("edge space")
    }

    fn in_nf_star(&self, x: &EdgeSet) -> bool {
        self.sp.in_nf_star(&self.local(x)).expect("edge space")
    }
}

fn ear_lemmas(g: &Graph, opts: &VerifyOptions, sink: &mut Sink) {
    let d = match find_ear_decomposition(g, DEFAULT_BUDGET) {
        Ok(d) => d,
        Err(e) => {
            sink.fail("ear decomposition found", e.to_string());
            return;
        }
    };
    sink.expect(
        "edge and vertex counts: m - n + 1 = epsilon sum",
        g.m() + 1 == g.n() + d.epsilon_sum(),
        format!("m = {}, n = {}, epsilon sum = {}", g.m(), g.n(), d.epsilon_sum()),
    );
    let mut prefixes = Vec::with_capacity(d.r() + 1);
    for i in 0..=d.r() {
        let sub = d.prefix(g, i);
        let sp = match ParitySpaces::new(&sub.graph, opts.cap) {
            Ok(sp) if sp.complete => sp,
            Ok(_) => return sink.fail("prefixes can be enumerated", format!("prefix {i} hit the cap")),
            Err(e) => return sink.fail("prefixes can be enumerated", format!("prefix {i}: {e}")),
        };
        let empty = match sp.nf_star_report(&sub.graph) {
            Ok(r) => r.empty,
            Err(e) => return sink.fail("prefixes can be enumerated", format!("prefix {i}: {e}")),
        };
        prefixes.push(Prefix { sub, sp, empty });
    }
    let mut outcomes = LemmaTally::default();
    for i in 1..=d.r() {
        check_step(g, &d, i, &prefixes, opts, &mut outcomes);
    }
    outcomes.report(sink);
}

/// Counts of checked instances and the first failure for each property.
#[derive(Default)]
struct LemmaTally {
    rows: Vec<(&'static str, usize, Option<String>)>,
}

impl LemmaTally {
    fn note(&mut self, property: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let row = match self.rows.iter_mut().find(|r| r.0 == property) {
            Some(r) => r,
            None => {
                self.rows.push((property, 0, None));
                self.rows.last_mut().expect("just pushed")
            }
        };
        row.1 += 1;
        if !ok && row.2.is_none() {
            row.2 = Some(detail());
        }
    }

    fn report(self, sink: &mut Sink) {
        for (property, count, failure) in self.rows {
            match failure {
                None => sink.pass(property, format!("{count} instances")),
                Some(f) => sink.fail(property, f),
            }
        }
    }
}

fn check_step(g: &Graph, d: &EarDecomposition, i: usize, prefixes: &[Prefix], opts: &VerifyOptions, tally: &mut LemmaTally) {
    let (prev, cur) = (&prefixes[i - 1], &prefixes[i]);
    let step = &d.steps[i - 1];
    let eps_sum: usize = d.steps[..i].iter().map(|s| usize::from(s.epsilon)).sum();
    let at = || format!("step {i}");

    if step.epsilon == 1 && prev.empty {
        tally.note("single ear over empty nF* keeps nF* empty", cur.empty, at);
    }
    if eps_sum <= i + 1 {
        tally.note("epsilon sum at most r + 1 gives empty nF*", cur.empty, at);
    }
    if eps_sum >= i + 2 && step.epsilon == 2 {
        tally.note("final double ear with epsilon sum at least r + 2 gives non-empty nF*", !cur.empty, at);
    }

    match step.ear.kind {
        EarKind::Single => {
            let path = &step.ear.paths[0];
            let ear_edges = EdgeSet::from_ids(g.m(), path.edges.iter().copied());
            let (lu, lv) = (
                prev.sub.vertex_from_parent(path.u).expect("end in prefix"),
                prev.sub.vertex_from_parent(path.v).expect("end in prefix"),
            );
            let inner = prev.sub.graph.remove_vertices(&VertexSet::from_ids(prev.sub.graph.n(), [lu, lv]));
            let Ok(inner_sp) = ParitySpaces::new(&inner.graph, opts.cap) else {
                tally.note("ear ends leave a graph with a perfect matching", false, at);
                return;
            };
            let inner_feasible = |x: &EdgeSet| {
                let local = inner.restrict_edges(&prev.local(x));
                inner_sp.is_feasible(&local).expect("edge space")
            };

            if let Some(prev_nf) = nf_members(&prev.sp, &prev.sub, opts.max_enumerated_dim) {
                if eps_sum >= i + 2 {
                    let all_feasible = prev_nf.iter().filter(|x| prev.in_nf_star(x)).all(|x| inner_feasible(x));
                    tally.note(
                        "single final ear: nF* empty iff every prefix nF* set restricts to a feasible set",
                        cur.empty == all_feasible,
                        || format!("step {i}: direct empty = {}, restriction test = {all_feasible}", cur.empty),
                    );
                }
                for x in &prev_nf {
                    let both = !cur.in_nf(x) && !cur.in_nf(&x.union(&ear_edges));
                    tally.note(
                        "prefix nF set: it and its union with the ear are feasible iff its restriction is",
                        both == inner_feasible(x),
                        || format!("step {i}, set {:?}", x.to_vec()),
                    );
                }
            }
            if let Some(cur_nf) = nf_members(&cur.sp, &cur.sub, opts.max_enumerated_dim) {
                for x in &cur_nf {
                    let xp = x.difference(&ear_edges);
                    let detail = || format!("step {i}, set {:?}", x.to_vec());
                    tally.note("odd ear: nF sets restrict to nF sets", prev.in_nf(&xp), detail);
                    tally.note("single ear preserves equivalence to the empty set", prev.is_cut(&xp) == cur.is_cut(x), detail);
                    tally.note("single ear preserves equivalence to E", prev.is_cocut(&xp) == cur.is_cocut(x), detail);
                    tally.note("single ear preserves nF* membership", prev.in_nf_star(&xp) == cur.in_nf_star(x), detail);
                }
            }
        }
        EarKind::Double => {
            let half_covered = step.ear.paths.iter().any(|p| {
                let (mut vs, mut es) = d.prefix_sets(g, i - 1);
                p.internal.iter().for_each(|&w| vs.insert(w));
                p.edges.iter().for_each(|&e| es.insert(e));
                is_matching_covered(&g.subgraph(&vs, &es).graph).is_yes()
            });
            if !half_covered {
                let bipartite = prev.sub.graph.is_bipartite().is_bipartite();
                tally.note(
                    "forced double ear: nF* empty iff the prefix is bipartite",
                    cur.empty == bipartite,
                    || format!("step {i}: empty = {}, prefix bipartite = {bipartite}", cur.empty),
                );
            }
        }
    }
}

fn constructions_suite(opts: &VerifyOptions) -> Result<Vec<PropertyResult>, VerifyError> {
    type Build = fn() -> Result<ConstructionCertificate, ConstructionError>;
    let builders: [(&str, Build); 8] = [
        ("qr-3", || build_qr(3)),
        ("qr-4", || build_qr(4)),
        ("qr-5", || build_qr(5)),
        ("splice-k4-k4", default_splice),
        ("chain-k4-k4", default_chain),
        ("star-k4x3", default_star),
        ("star-iterated", iterated_star),
        ("cycle-q4x3", default_cycle),
    ];
    let mut certs = Vec::new();
    for (name, build) in builders {
        let cert = build().map_err(|source| VerifyError::Construction { name: name.into(), source })?;
        if cert.graph.n() <= opts.max_n {
            certs.push((name, cert));
        }
    }
    let mut results: Vec<PropertyResult> = in_parallel(&certs, opts.threads, |(name, cert)| {
        let report = cert.verify(opts.cap);
        let mut sink = Sink::new(name);
        for c in &report.checks {
            match &c.outcome {
                ClaimOutcome::Verified => sink.pass(&c.claim, None),
                ClaimOutcome::Failed(why) => sink.fail(&c.claim, why.clone()),
                ClaimOutcome::Unverified(why) => sink.fail(&c.claim, format!("unverified-claim: {why}")),
            }
        }
        sink.out
    })
    .into_iter()
    .flatten()
    .collect();

    let p = petersen();
    let mut sink = Sink::new("petersen");
    let index = chromatic_index_exact(&p, 4, 10_000_000).value();
    sink.expect("Petersen graph has chromatic index 4", index == Some(4), format!("{index:?}"));
    match ParitySpaces::new(&p, opts.cap).and_then(|sp| sp.nf_star_report(&p)) {
        Ok(r) => sink.expect("Petersen graph has non-empty nF*", !r.empty, format!("{:?}", r.witness.map(|w| w.to_vec()))),
        Err(FeasibilityError::Incomplete { cap }) => sink.fail("Petersen graph has non-empty nF*", format!("cap {cap}")),
        Err(e) => sink.fail("Petersen graph has non-empty nF*", e.to_string()),
    }
    results.extend(sink.out);
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyOptions {
        VerifyOptions { max_n: 8, trials: 20, ..Default::default() }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
            assert_eq!(serde_json::to_value(s).unwrap(), serde_json::json!(s.name()));
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        for s in [Suite::SepInvariance, Suite::BipartiteTheorem, Suite::OracleNf, Suite::EarClassify, Suite::EarLemmas] {
            let report = run_suite(s, &small()).unwrap();
            let failures: Vec<_> = report.failures().collect();
            assert!(failures.is_empty(), "{s}: {failures:?}");
            assert!(!report.results.is_empty());
        }
    }

    #[test]
    fn results_do_not_depend_on_thread_count() {
        let one = run_suite(Suite::SepInvariance, &VerifyOptions { threads: 1, ..small() }).unwrap();
        let many = run_suite(Suite::SepInvariance, &VerifyOptions { threads: 4, ..small() }).unwrap();
        assert_eq!(one, many);
    }
}
