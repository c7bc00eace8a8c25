//! `nfstar`: analyze graphs, classify edge sets, build certified families, replay property suites.
//!
//! Exit codes: 0 ok, 1 a check failed, 2 usage, 3 incomplete enumeration, 4 unverified claim under `--strict`.

mod parts;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nfstar_core::constructions::{
    build_chain, build_cycle_cl, build_qr, build_star_xs, petersen, splice, ChainPart, ConstructionCertificate,
    CyclePart, SplicePart, StarPart, VerificationReport,
};
use nfstar_core::ears::{
    classify_nf_star, find_ear_decomposition, find_single_ear_decomposition, EarDecomposition, NfStarClassification,
    DEFAULT_BUDGET,
};
use nfstar_core::feasibility::{EdgeSetClass, FeasibilityError, ParitySpaces};
use nfstar_core::io::{read_graph, CertificateJson, Format, GraphJson, SCHEMA_VERSION};
use nfstar_core::report::{analyze, AnalysisReport, AnalyzeOptions, ReportedIndex};
use nfstar_core::verify::{run_suite, Suite, VerifyOptions};
use nfstar_core::{EdgeSet, Graph, DEFAULT_ENUMERATION_CAP};
use serde::Serialize;

use parts::{edge_list, edge_ref, load_source, split_spec};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Incomplete(String),
    #[error("{0}")]
    Unverified(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Incomplete(_) => 3,
            CliError::Unverified(_) => 4,
        }
    }
}

#[derive(Parser)]
#[command(name = "nfstar", version, about = "Feasible and non-feasible edge sets of matching-covered graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural report: matchings, parity spaces, nF*, regularity, connectivity, chromatic index.
    Analyze(AnalyzeArgs),
    /// Classify one edge set as feasible, equivalent to the empty set or to E, or in nF*.
    Feasible(FeasibleArgs),
    /// Build a certified graph and re-verify every claim.
    Construct(ConstructArgs),
    /// Ear decomposition and the nF* verdict it implies.
    Decompose(DecomposeArgs),
    /// Replay a property suite over the corpus.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Input {
    /// Graph file (graph6, edge list or JSON).
    file: PathBuf,
    /// Input format; guessed from the extension or contents when absent.
    #[arg(long)]
    format: Option<Format>,
    /// Most perfect matchings to enumerate.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    max_pms: usize,
}

impl Input {
    fn graph(&self) -> Result<Graph, CliError> {
        read_graph(&self.file, self.format).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: Input,
    /// Print the report as JSON.
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Print the report as `key: value` lines (the default).
    #[arg(long)]
    text: bool,
    /// Recorded in the report.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Connectivity threshold to test; defaults to the minimum degree.
    #[arg(long)]
    connectivity: Option<usize>,
}

#[derive(Args)]
struct FeasibleArgs {
    #[command(flatten)]
    input: Input,
    /// Comma-separated edge ids or labels.
    #[arg(long, allow_hyphen_values = true)]
    edges: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(subcommand)]
    which: Construction,
    /// Write the certificate here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Exit with status 4 when any claim could not be verified.
    #[arg(long, global = true)]
    strict: bool,
    /// Most perfect matchings to enumerate while verifying.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    max_pms: usize,
}

#[derive(Subcommand)]
enum Construction {
    /// `K_{r,r}` with two independent edges replaced by `a1a2` and `b1b2`.
    Qr {
        #[arg(long)]
        r: usize,
    },
    /// The Petersen graph (no claims beyond its shape).
    Petersen,
    /// Splice two parts at one edge each.
    Splice {
        /// First part: `SOURCE@EDGE`.
        #[arg(long, default_value = "k4@0")]
        left: String,
        /// Second part: `SOURCE@EDGE`.
        #[arg(long, default_value = "k4@0")]
        right: String,
        #[arg(long)]
        flip_left: bool,
        #[arg(long)]
        flip_right: bool,
    },
    /// Splice a row of parts end to end.
    Chain {
        /// `SOURCE@E,E'[@EQUIVALENT_SET]`, in order; at least two.
        #[arg(long = "part")]
        parts: Vec<String>,
        /// Per part, the comma-separated edges chosen for an nF* witness.
        #[arg(long = "select")]
        select: Vec<String>,
    },
    /// Join an odd number of parts in a ring through their equivalent pairs.
    Cycle {
        /// `SOURCE@E,E'`, in ring order.
        #[arg(long = "part")]
        parts: Vec<String>,
    },
    /// Delete a vertex from each of `r` parts and attach their neighbours to `r` hubs.
    Star {
        /// `SOURCE[@W]`; exactly `r` of them.
        #[arg(long = "part")]
        parts: Vec<String>,
    },
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    input: Input,
    /// Only single ears (exists exactly for bipartite graphs).
    #[arg(long)]
    single_only: bool,
    /// Most search states expanded.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    suite: Suite,
    #[arg(long, default_value_t = VerifyOptions::default().max_n)]
    max_n: usize,
    #[arg(long, default_value_t = VerifyOptions::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = VerifyOptions::default().trials)]
    trials: usize,
    /// Worker threads; 0 uses all available.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    max_pms: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Analyze(a) => run_analyze(a),
        Command::Feasible(a) => run_feasible(a),
        Command::Construct(a) => run_construct(a),
        Command::Decompose(a) => run_decompose(a),
        Command::Verify(a) => run_verify(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nfstar: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| CliError::Failed(e.to_string()))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn run_analyze(a: AnalyzeArgs) -> Result<(), CliError> {
    let g = a.input.graph()?;
    let opts = AnalyzeOptions { cap: a.input.max_pms, connectivity_k: a.connectivity, seed: a.seed, ..Default::default() };
    let report = analyze(&g, &opts);
    let text = if a.json { to_json(&report) } else { report_text(&report) };
    emit(None, &text)?;
    if report.incomplete() {
        return Err(CliError::Incomplete(format!(
            "perfect-matching enumeration stopped at {}; dimensions and nF* are not reported",
            report.pm_cap
        )));
    }
    Ok(())
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "null".into(), |x| x.to_string())
}

fn report_text(r: &AnalysisReport) -> String {
    let conn = &r.vertex_connectivity_checked;
    let chi = match &r.chromatic_index {
        ReportedIndex::Exact(c) => c.to_string(),
        ReportedIndex::Unknown(s) => s.clone(),
    };
    let mut lines = vec![
        format!("seed: {}", r.seed),
        format!("n: {}", r.n),
        format!("m: {}", r.m),
        format!("connected: {}", r.connected),
        format!("bipartite: {}", r.bipartite),
        format!("matching_covered: {}", r.matching_covered),
    ];
    if let Some(why) = &r.coverage_detail {
        lines.push(format!("coverage_detail: {why}"));
    }
    lines.extend([
        format!("pm_count: {}{}", r.pm_count, if r.pm_cap_hit { " (cap hit)" } else { "" }),
        format!("dim_D: {}", opt(&r.dim_d)),
        format!("dim_nF: {}", opt(&r.dim_nf)),
        format!("dim_cut: {}", r.dim_cut),
        format!("E_in_cut: {}", r.e_in_cut),
        format!("nf_star_empty: {}", opt(&r.nf_star_empty)),
        format!("nf_star_witness: {}", r.nf_star_witness.as_ref().map_or("null".into(), |w| format!("{w:?}"))),
        format!("regularity: {}", opt(&r.regularity)),
        format!("vertex_connectivity_checked: k={} {}", conn.k, conn.holds),
        format!("chromatic_index: {chi}"),
    ]);
    lines.join("\n") + "\n"
}

#[derive(Serialize)]
struct FeasibleOutput {
    schema_version: u32,
    edges: Vec<usize>,
    feasible: bool,
    /// `feasible`, `empty-class`, `e-class` or `nf-star`.
    class: &'static str,
    /// Vertex set `U` with `X = ∇(U)` (or `E − X = ∇(U)`).
    #[serde(skip_serializing_if = "Option::is_none")]
    shift: Option<Vec<usize>>,
    /// Indices of two enumerated perfect matchings meeting the set with different parities.
    #[serde(skip_serializing_if = "Option::is_none")]
    parity_witness: Option<[usize; 2]>,
    pm_count: usize,
}

fn run_feasible(a: FeasibleArgs) -> Result<(), CliError> {
    let g = a.input.graph()?;
    let x = EdgeSet::from_ids(g.m(), edge_list(&g, &a.edges)?);
    let sp = match ParitySpaces::new(&g, a.input.max_pms) {
        Ok(sp) => sp,
        Err(FeasibilityError::NoPerfectMatching) => return Err(CliError::Failed("graph has no perfect matching".into())),
        Err(e) => return Err(CliError::Failed(e.to_string())),
    };
    let class = match sp.classify(&g, &x) {
        Ok(c) => c,
        Err(FeasibilityError::Incomplete { cap }) => {
            return Err(CliError::Incomplete(format!(
                "no parity difference among the first {cap} perfect matchings; raise --max-pms to decide"
            )))
        }
        Err(e) => return Err(CliError::Failed(e.to_string())),
    };
    let (name, shift) = match &class {
        EdgeSetClass::Feasible => ("feasible", None),
        EdgeSetClass::EquivalentToEmpty { shift } => ("empty-class", Some(shift.to_vec())),
        EdgeSetClass::EquivalentToAll { shift } => ("e-class", Some(shift.to_vec())),
        EdgeSetClass::NfStar => ("nf-star", None),
    };
    let out = FeasibleOutput {
        schema_version: SCHEMA_VERSION,
        edges: x.to_vec(),
        feasible: class == EdgeSetClass::Feasible,
        class: name,
        shift: shift.clone(),
        parity_witness: sp.parity_witness(&x).map(|(i, j)| [i, j]),
        pm_count: sp.pm_count(),
    };
    let text = if a.json {
        to_json(&out)
    } else {
        match &class {
            EdgeSetClass::Feasible => {
                let [i, j] = out.parity_witness.expect("feasible sets have a parity witness");
                format!("feasible (perfect matchings {i} and {j} meet it with different parities)\n")
            }
            EdgeSetClass::EquivalentToEmpty { .. } => format!("non-feasible: equivalent to the empty set, X = ∇(U) for U = {:?}\n", shift.unwrap()),
            EdgeSetClass::EquivalentToAll { .. } => format!("non-feasible: equivalent to E, E - X = ∇(U) for U = {:?}\n", shift.unwrap()),
            EdgeSetClass::NfStar => "non-feasible: in nF* (equivalent to neither the empty set nor E)\n".into(),
        }
    };
    emit(None, &text)
}

fn parse_edge_pair(g: &Graph, field: &str) -> Result<(usize, usize), CliError> {
    let ids = edge_list(g, field)?;
    match ids[..] {
        [e, f] => Ok((e, f)),
        _ => Err(CliError::Usage(format!("expected two edges `E,E'`, got `{field}`"))),
    }
}

fn build(which: &Construction) -> Result<ConstructionCertificate, CliError> {
    let usage = |e: nfstar_core::constructions::ConstructionError| CliError::Usage(e.to_string());
    match which {
        Construction::Qr { r } => build_qr(*r).map_err(usage),
        Construction::Petersen => Ok(ConstructionCertificate {
            name: "petersen".into(),
            params: serde_json::json!({}),
            r: Some(3),
            claimed_connectivity: 3,
            matching_covered: true,
            coloring: None,
            equivalent_sets: Vec::new(),
            nf_star_witnesses: Vec::new(),
            constraints: Vec::new(),
            notes: vec!["class 2: no 3-edge-coloring is claimed".into()],
            graph: petersen(),
        }),
        Construction::Splice { left, right, flip_left, flip_right } => {
            let part = |spec: &str, flip: bool| -> Result<SplicePart, CliError> {
                let (src, fields) = split_spec(spec);
                let source = load_source(src)?;
                let edge = match fields[..] {
                    [e] => edge_ref(&source.graph, e)?,
                    _ => return Err(CliError::Usage(format!("splice part `{spec}` must be SOURCE@EDGE"))),
                };
                let equivalent_set = source.equivalent_sets.iter().find(|s| s.contains(&edge)).cloned();
                Ok(SplicePart { graph: source.graph, edge, flip, equivalent_set, coloring: source.coloring })
            };
            splice(part(left, *flip_left)?, part(right, *flip_right)?).map_err(usage)
        }
        Construction::Chain { parts, select } => {
            let specs: Vec<String> = if parts.is_empty() { vec!["k4@0,5".into(), "k4@0,5".into()] } else { parts.clone() };
            let mut built = Vec::new();
            for spec in &specs {
                let (src, fields) = split_spec(spec);
                let source = load_source(src)?;
                let (e, e_prime) = match fields.first() {
                    Some(f) => parse_edge_pair(&source.graph, f)?,
                    None => return Err(CliError::Usage(format!("chain part `{spec}` must be SOURCE@E,E'[@SET]"))),
                };
                let set = match fields.get(1) {
                    Some(f) => edge_list(&source.graph, f)?,
                    None => source
                        .equivalent_sets
                        .iter()
                        .find(|s| s.contains(&e) && s.contains(&e_prime))
                        .cloned()
                        .unwrap_or_else(|| vec![e, e_prime]),
                };
                let mut p = ChainPart::new(source.graph, e, e_prime, set);
                p.coloring = source.coloring;
                built.push(p);
            }
            let selection = if select.is_empty() {
                None
            } else if select.len() != built.len() {
                return Err(CliError::Usage(format!("--select given {} times for {} parts", select.len(), built.len())));
            } else {
                Some(built.iter().zip(select).map(|(p, s)| edge_list(&p.graph, s)).collect::<Result<Vec<_>, _>>()?)
            };
            build_chain(built, selection).map_err(usage)
        }
        Construction::Cycle { parts } => {
            let specs: Vec<String> =
                if parts.is_empty() { vec!["q4@a1a2,b1b2".into(); 3] } else { parts.clone() };
            let mut built = Vec::new();
            for spec in &specs {
                let (src, fields) = split_spec(spec);
                let source = load_source(src)?;
                let (e, e_prime) = match fields[..] {
                    [f] => parse_edge_pair(&source.graph, f)?,
                    _ => return Err(CliError::Usage(format!("cycle part `{spec}` must be SOURCE@E,E'"))),
                };
                let mut p = CyclePart::new(source.graph, e, e_prime);
                p.coloring = source.coloring;
                built.push(p);
            }
            build_cycle_cl(built).map_err(usage)
        }
        Construction::Star { parts } => {
            let specs: Vec<String> = if parts.is_empty() { vec!["k4".into(); 3] } else { parts.clone() };
            let mut built = Vec::new();
            for spec in &specs {
                let (src, fields) = split_spec(spec);
                let source = load_source(src)?;
                let w = match fields[..] {
                    [] => None,
                    [w] => Some(w.parse::<usize>().map_err(|_| CliError::Usage(format!("bad vertex `{w}` in `{spec}`")))?),
                    _ => return Err(CliError::Usage(format!("star part `{spec}` must be SOURCE[@W]"))),
                };
                built.push(StarPart { graph: source.graph, w, coloring: source.coloring, planted: source.equivalent_sets });
            }
            build_star_xs(built).map_err(usage)
        }
    }
}

fn run_construct(a: ConstructArgs) -> Result<(), CliError> {
    let cert = build(&a.which)?;
    let report: VerificationReport = cert.verify(a.max_pms);
    let doc = CertificateJson::new(&cert, Some(&report));
    emit(a.out.as_deref(), &to_json(&doc))?;
    if report.any_failed() {
        let names: Vec<&str> = report.failures().map(|c| c.claim.as_str()).collect();
        return Err(CliError::Failed(format!("claims failed verification: {}", names.join("; "))));
    }
    if a.strict && report.any_unverified() {
        return Err(CliError::Unverified(format!(
            "some claims stay unverified after {} perfect matchings",
            report.pm_count
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct DecomposeOutput {
    schema_version: u32,
    graph: GraphJson,
    r: usize,
    epsilon_sum: usize,
    decomposition: EarDecomposition,
    classification: NfStarClassification,
    /// nF* emptiness from the parity spaces directly.
    direct_nf_star_empty: bool,
    agrees: bool,
}

fn run_decompose(a: DecomposeArgs) -> Result<(), CliError> {
    let g = a.input.graph()?;
    let d = if a.single_only {
        find_single_ear_decomposition(&g, a.budget)
    } else {
        find_ear_decomposition(&g, a.budget)
    }
    .map_err(|e| CliError::Failed(e.to_string()))?;
    let classification = classify_nf_star(&g, &d, a.input.max_pms).map_err(|e| match e {
        nfstar_core::ears::EarError::Feasibility(FeasibilityError::Incomplete { cap }) => {
            CliError::Incomplete(format!("perfect-matching enumeration stopped at {cap}"))
        }
        other => CliError::Failed(other.to_string()),
    })?;
    let direct = ParitySpaces::new(&g, a.input.max_pms)
        .and_then(|sp| sp.nf_star_report(&g))
        .map_err(|e| CliError::Failed(e.to_string()))?;
    let out = DecomposeOutput {
        schema_version: SCHEMA_VERSION,
        graph: GraphJson::from(&g),
        r: d.r(),
        epsilon_sum: d.epsilon_sum(),
        agrees: classification.empty == direct.empty,
        direct_nf_star_empty: direct.empty,
        classification,
        decomposition: d,
    };
    emit(a.out.as_deref(), &to_json(&out))?;
    if !out.agrees {
        return Err(CliError::Failed("decomposition verdict disagrees with the direct test".into()));
    }
    Ok(())
}

fn run_verify(a: VerifyArgs) -> Result<(), CliError> {
    let opts = VerifyOptions {
        max_n: a.max_n,
        seed: a.seed,
        trials: a.trials,
        threads: a.threads,
        cap: a.max_pms,
        ..VerifyOptions::default()
    };
    let report = run_suite(a.suite, &opts).map_err(|e| CliError::Failed(e.to_string()))?;
    emit(None, &to_json(&report))?;
    let failed = report.failures().count();
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} of {} properties failed in {}", report.results.len(), a.suite)));
    }
    Ok(())
}
