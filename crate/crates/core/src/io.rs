//! Graph files: graph6, plain edge lists and JSON, plus the JSON shapes of certificates.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitvec::EdgeSet;
use crate::constructions::{ClaimOutcome, ConstructionCertificate, EdgeColoring, MatchingConstraint, VerificationReport};
use crate::graph::{Graph, GraphError};

/// Version stamped into every JSON document this crate writes.
pub const SCHEMA_VERSION: u32 = 1;

const GRAPH6_HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Graph6,
    Edgelist,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edgelist" | "edges" => Ok(Format::Edgelist),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected graph6, edgelist or json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Graph6 => "graph6",
            Format::Edgelist => "edgelist",
            Format::Json => "json",
        })
    }
}

impl Format {
    /// Guesses from the file extension.
    pub fn from_path(path: &Path) -> Option<Format> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "g6" | "graph6" => Some(Format::Graph6),
            "json" => Some(Format::Json),
            "el" | "edges" | "edgelist" | "txt" => Some(Format::Edgelist),
            _ => None,
        }
    }

    /// Guesses from the first non-blank characters of the text.
    pub fn sniff(text: &str) -> Format {
        let t = text.trim_start();
        if t.starts_with('{') {
            Format::Json
        } else if t.starts_with(GRAPH6_HEADER) {
            Format::Graph6
        } else {
            let first = t.lines().next().unwrap_or("");
            if first.split_whitespace().count() == 1 && first.bytes().all(|b| (63..=126).contains(&b)) {
                Format::Graph6
            } else {
                Format::Edgelist
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("line {line} (byte {offset}): {message}")]
    Parse { line: usize, offset: usize, message: String },
    #[error("graph6 cannot encode parallel edges: edges {first} and {second} both join {u} and {v}")]
    Graph6Multigraph { first: usize, second: usize, u: usize, v: usize },
    #[error("graph6 cannot encode {n} vertices")]
    Graph6TooLarge { n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{}: {source}", path.display())]
    File { path: PathBuf, source: std::io::Error },
    #[error("invalid document: {0}")]
    Schema(String),
}

impl IoError {
    fn parse(text: &str, offset: usize, message: impl Into<String>) -> Self {
        let line = text[..offset.min(text.len())].matches('\n').count() + 1;
        IoError::Parse { line, offset, message: message.into() }
    }
}

/// Reads a graph from disk; without a format, the extension and then the contents decide.
pub fn read_graph(path: &Path, format: Option<Format>) -> Result<Graph, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::File { path: path.to_path_buf(), source })?;
    let format = format.or_else(|| Format::from_path(path)).unwrap_or_else(|| Format::sniff(&text));
    parse_graph(&text, format)
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph, IoError> {
    match format {
        Format::Graph6 => parse_graph6(text),
        Format::Edgelist => parse_edgelist(text),
        Format::Json => parse_json(text),
    }
}

pub fn write_graph(g: &Graph, format: Format) -> Result<String, IoError> {
    match format {
        Format::Graph6 => to_graph6(g).map(|mut s| {
            s.push('\n');
            s
        }),
        Format::Edgelist => Ok(to_edgelist(g)),
        Format::Json => Ok(to_json(g)),
    }
}

/// Decodes one graph6 string, with or without the `>>graph6<<` header.
///
/// Edges come out in lexicographic order of `(i, j)` with `i < j`.
pub fn parse_graph6(text: &str) -> Result<Graph, IoError> {
    let lead = text.len() - text.trim_start().len();
    let mut start = lead;
    if text[start..].starts_with(GRAPH6_HEADER) {
        start += GRAPH6_HEADER.len();
    }
    let body_end = text[start..].find(['\n', '\r']).map_or(text.len(), |i| start + i);
    if let Some(extra) = text[body_end..].find(|c: char| !c.is_whitespace()) {
        return Err(IoError::parse(text, body_end + extra, "only one graph per graph6 input is supported"));
    }
    let bytes = &text.as_bytes()[start..body_end];
    if let Some(i) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(IoError::parse(text, start + i, format!("byte {:#04x} is outside the graph6 range", bytes[i])));
    }
    if bytes.is_empty() {
        return Err(IoError::parse(text, start, "empty graph6 string"));
    }
    let (n, used) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(IoError::parse(text, start + bytes.len(), "truncated vertex count"));
        }
        (sextets(&bytes[1..4]), 4)
    } else {
        if bytes.len() < 8 {
            return Err(IoError::parse(text, start + bytes.len(), "truncated vertex count"));
        }
        (sextets(&bytes[2..8]), 8)
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let needed = pairs.div_ceil(6);
    let data = &bytes[used..];
    if data.len() != needed {
        return Err(IoError::parse(
            text,
            start + used + data.len().min(needed),
            format!("expected {needed} adjacency bytes for {n} vertices, found {}", data.len()),
        ));
    }
    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    edges.sort_unstable();
    Ok(Graph::new(n, edges)?)
}

fn sextets(bytes: &[u8]) -> usize {
    bytes.iter().fold(0, |acc, &b| (acc << 6) | (b - 63) as usize)
}

/// Encodes a simple graph as graph6, without header or newline.
pub fn to_graph6(g: &Graph) -> Result<String, IoError> {
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let key = (u.min(v), u.max(v));
        if let Some(&first) = seen.get(&key) {
            return Err(IoError::Graph6Multigraph { first, second: e, u: key.0, v: key.1 });
        }
        seen.insert(key, e);
    }
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else if n as u64 <= 68_719_476_735 {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        return Err(IoError::Graph6TooLarge { n });
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | seen.contains_key(&(i, j)) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Header `n m`, then `m` lines `u v`. Blank lines and `#` comments are skipped.
pub fn parse_edgelist(text: &str) -> Result<Graph, IoError> {
    let mut lines = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let content = raw.split('#').next().unwrap_or("");
        if !content.trim().is_empty() {
            lines.push((offset, content));
        }
        offset += raw.len();
    }
    let numbers = |at: usize, line: &str, what: &str| -> Result<(usize, usize), IoError> {
        let mut fields = Vec::new();
        let mut pos = 0;
        for tok in line.split_whitespace() {
            let rel = line[pos..].find(tok).expect("token comes from the line") + pos;
            pos = rel + tok.len();
            fields.push((at + rel, tok));
        }
        if fields.len() != 2 {
            return Err(IoError::parse(text, at, format!("expected two integers ({what}), found {} fields", fields.len())));
        }
        let num = |(o, t): (usize, &str)| t.parse::<usize>().map_err(|_| IoError::parse(text, o, format!("`{t}` is not a non-negative integer")));
        Ok((num(fields[0])?, num(fields[1])?))
    };
    let Some(&(at, header)) = lines.first() else {
        return Err(IoError::parse(text, text.len(), "missing header line `n m`"));
    };
    let (n, m) = numbers(at, header, "n m")?;
    let body = &lines[1..];
    if body.len() != m {
        let at = body.get(m).map_or(text.len(), |&(o, _)| o);
        return Err(IoError::parse(text, at, format!("header announces {m} edges, found {}", body.len())));
    }
    let mut edges = Vec::with_capacity(m);
    for &(at, line) in body {
        let (u, v) = numbers(at, line, "u v")?;
        if u >= n || v >= n {
            return Err(IoError::parse(text, at, format!("edge {u} {v} names a vertex outside 0..{n}")));
        }
        if u == v {
            return Err(IoError::parse(text, at, format!("loop at vertex {u}")));
        }
        edges.push((u, v));
    }
    Ok(Graph::new(n, edges)?)
}

pub fn to_edgelist(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Vertex and edge labels keyed by id.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelsJson {
    #[serde(default)]
    pub vertices: BTreeMap<usize, String>,
    #[serde(default)]
    pub edges: BTreeMap<usize, String>,
}

/// `{"n": .., "edges": [[u, v], ..], "labels": {..}}`; edge order is edge id order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub labels: LabelsJson,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            labels: LabelsJson { vertices: g.vertex_labels().clone(), edges: g.edge_labels().clone() },
        }
    }
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<Graph, IoError> {
        let mut g = Graph::new(self.n, self.edges.iter().map(|&[u, v]| (u, v)).collect())?;
        for (&v, l) in &self.labels.vertices {
            if v >= self.n {
                return Err(IoError::Schema(format!("label for vertex {v} but n = {}", self.n)));
            }
            g.set_vertex_label(v, l.clone());
        }
        for (&e, l) in &self.labels.edges {
            if e >= self.edges.len() {
                return Err(IoError::Schema(format!("label for edge {e} but m = {}", self.edges.len())));
            }
            g.set_edge_label(e, l.clone());
        }
        Ok(g)
    }
}

/// A bare graph document, or any versioned document embedding one under `"graph"`.
pub fn parse_json(text: &str) -> Result<Graph, IoError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| json_error(text, &e))?;
    let inner = match value.get("graph") {
        Some(g) if value.get("schema_version").is_some() => g.clone(),
        _ => value,
    };
    let doc: GraphJson = serde_json::from_value(inner).map_err(|e| IoError::Schema(e.to_string()))?;
    doc.to_graph()
}

pub fn to_json(g: &Graph) -> String {
    let mut s = serde_json::to_string_pretty(&GraphJson::from(g)).expect("graph serializes");
    s.push('\n');
    s
}

/// Converts a serde_json error position (line, column) into a parse error with a byte offset.
pub fn json_error(text: &str, e: &serde_json::Error) -> IoError {
    let line = e.line().max(1);
    let line_start: usize = text.split_inclusive('\n').take(line - 1).map(str::len).sum();
    let offset = (line_start + e.column().saturating_sub(1)).min(text.len());
    IoError::Parse { line, offset, message: e.to_string() }
}

/// Outcome of one certificate claim as written to JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimJson {
    pub claim: String,
    /// `verified`, `failed` or `unverified-claim`.
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConstraintJson {
    Alternation { pairs: Vec<[usize; 2]> },
    OnePerBundle { bundles: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationJson {
    pub pm_count: usize,
    pub enumeration_complete: bool,
    pub all_verified: bool,
    pub claims: Vec<ClaimJson>,
}

/// Serialized construction certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub schema_version: u32,
    pub name: String,
    pub params: serde_json::Value,
    pub graph: GraphJson,
    pub r: Option<usize>,
    pub claimed_connectivity: usize,
    pub matching_covered: bool,
    /// Color of each edge, by edge id.
    pub coloring: Option<Vec<usize>>,
    pub equivalent_sets: Vec<Vec<usize>>,
    pub nf_star_witnesses: Vec<Vec<usize>>,
    pub constraints: Vec<ConstraintJson>,
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationJson>,
}

impl From<&VerificationReport> for VerificationJson {
    fn from(report: &VerificationReport) -> Self {
        VerificationJson {
            pm_count: report.pm_count,
            enumeration_complete: report.enumeration_complete,
            all_verified: report.all_verified(),
            claims: report
                .checks
                .iter()
                .map(|c| {
                    let (outcome, detail) = match &c.outcome {
                        ClaimOutcome::Verified => ("verified", None),
                        ClaimOutcome::Failed(d) => ("failed", Some(d.clone())),
                        ClaimOutcome::Unverified(d) => ("unverified-claim", Some(d.clone())),
                    };
                    ClaimJson { claim: c.claim.clone(), outcome: outcome.into(), detail }
                })
                .collect(),
        }
    }
}

impl CertificateJson {
    pub fn new(cert: &ConstructionCertificate, verification: Option<&VerificationReport>) -> Self {
        CertificateJson {
            schema_version: SCHEMA_VERSION,
            name: cert.name.clone(),
            params: cert.params.clone(),
            graph: GraphJson::from(&cert.graph),
            r: cert.r,
            claimed_connectivity: cert.claimed_connectivity,
            matching_covered: cert.matching_covered,
            coloring: cert.coloring.as_ref().map(|c| c.colors().to_vec()),
            equivalent_sets: cert.equivalent_sets.iter().map(EdgeSet::to_vec).collect(),
            nf_star_witnesses: cert.nf_star_witnesses.iter().map(EdgeSet::to_vec).collect(),
            constraints: cert
                .constraints
                .iter()
                .map(|c| match c {
                    MatchingConstraint::Alternation { pairs } => {
                        ConstraintJson::Alternation { pairs: pairs.iter().map(|&(a, b)| [a, b]).collect() }
                    }
                    MatchingConstraint::OnePerBundle { bundles } => {
                        ConstraintJson::OnePerBundle { bundles: bundles.iter().map(EdgeSet::to_vec).collect() }
                    }
                })
                .collect(),
            notes: cert.notes.clone(),
            verification: verification.map(VerificationJson::from),
        }
    }

    /// Rebuilds the certificate; the recorded verification, if any, is dropped.
    pub fn to_certificate(&self) -> Result<ConstructionCertificate, IoError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(IoError::Schema(format!("unsupported schema_version {}", self.schema_version)));
        }
        let graph = self.graph.to_graph()?;
        let m = graph.m();
        let set = |ids: &Vec<usize>| -> Result<EdgeSet, IoError> {
            match ids.iter().find(|&&e| e >= m) {
                Some(e) => Err(IoError::Schema(format!("edge id {e} out of range (m = {m})"))),
                None => Ok(EdgeSet::from_ids(m, ids.iter().copied())),
            }
        };
        let sets = |list: &Vec<Vec<usize>>| list.iter().map(set).collect::<Result<Vec<_>, _>>();
        let constraints = self
            .constraints
            .iter()
            .map(|c| match c {
                ConstraintJson::Alternation { pairs } => {
                    Ok(MatchingConstraint::Alternation { pairs: pairs.iter().map(|&[a, b]| (a, b)).collect() })
                }
                ConstraintJson::OnePerBundle { bundles } => Ok(MatchingConstraint::OnePerBundle { bundles: sets(bundles)? }),
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(ConstructionCertificate {
            name: self.name.clone(),
            params: self.params.clone(),
            r: self.r,
            claimed_connectivity: self.claimed_connectivity,
            matching_covered: self.matching_covered,
            coloring: self.coloring.clone().map(EdgeColoring::new),
            equivalent_sets: sets(&self.equivalent_sets)?,
            nf_star_witnesses: sets(&self.nf_star_witnesses)?,
            constraints,
            notes: self.notes.clone(),
            graph,
        })
    }
}

pub fn parse_certificate(text: &str) -> Result<ConstructionCertificate, IoError> {
    let doc: CertificateJson = serde_json::from_str(text).map_err(|e| json_error(text, &e))?;
    doc.to_certificate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn graph6_k4() {
        let g = parse_graph6("C~").unwrap();
        assert_eq!(g, families::complete(4));
        assert_eq!(to_graph6(&g).unwrap(), "C~");
        assert_eq!(parse_graph6(">>graph6<<C~\n").unwrap(), g);
    }

    #[test]
    fn graph6_known_strings() {
        // path 0-1-2 in the graph6 reference encoding
        let p = parse_graph6("Bo").unwrap();
        assert_eq!(p.edges(), &[(0, 1), (0, 2)]);
        assert_eq!(parse_graph6("@").unwrap().n(), 1);
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
    }

    #[test]
    fn graph6_large_n_round_trips() {
        let g = families::cycle(70);
        let s = to_graph6(&g).unwrap();
        assert!(s.starts_with('~'));
        let back = parse_graph6(&s).unwrap();
        assert_eq!(back.n(), 70);
        assert_eq!(back.m(), 70);
        assert!(back.edges().iter().all(|&(u, v)| g.has_edge_between(u, v)));
    }

    #[test]
    fn graph6_rejects_multigraphs_and_junk() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0)]);
        assert!(matches!(to_graph6(&g), Err(IoError::Graph6Multigraph { first: 0, second: 1, u: 0, v: 1 })));
        assert!(matches!(parse_graph6("C~~"), Err(IoError::Parse { line: 1, .. })));
        assert!(matches!(parse_graph6("C\u{7f}"), Err(IoError::Parse { offset: 1, .. })));
        assert!(matches!(parse_graph6("C~\nC~\n"), Err(IoError::Parse { line: 2, offset: 3, .. })));
    }

    #[test]
    fn edgelist_k2_and_errors() {
        assert_eq!(parse_edgelist("2 1\n0 1\n").unwrap(), families::complete(2));
        let multi = parse_edgelist("# two parallel edges\n2 2\n0 1\n\n1 0\n").unwrap();
        assert_eq!(multi.edges(), &[(0, 1), (1, 0)]);
        match parse_edgelist("3 2\n0 1\n1 x\n") {
            Err(IoError::Parse { line, offset, .. }) => assert_eq!((line, offset), (3, 10)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_edgelist("3 2\n0 1\n"), Err(IoError::Parse { .. })));
        assert!(matches!(parse_edgelist("2 1\n0 2\n"), Err(IoError::Parse { line: 2, .. })));
        assert!(matches!(parse_edgelist("2 1\n1 1\n"), Err(IoError::Parse { line: 2, .. })));
        assert!(matches!(parse_edgelist(""), Err(IoError::Parse { .. })));
    }

    #[test]
    fn json_round_trip_keeps_order_and_labels() {
        let mut g = Graph::from_edges(3, &[(2, 1), (0, 1), (1, 2)]);
        g.set_edge_label(2, "f1");
        g.set_vertex_label(0, "a1");
        let back = parse_json(&to_json(&g)).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.edge_by_label("f1"), Some(2));
    }

    #[test]
    fn json_errors_carry_positions() {
        match parse_json("{\"n\": 2,\n \"edges\": [[0, 1]\n}") {
            Err(IoError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_json("{\"edges\": []}"), Err(IoError::Schema(_))));
        assert!(matches!(parse_json("{\"n\": 1, \"edges\": [[0, 1]]}"), Err(IoError::Graph(_))));
    }

    #[test]
    fn sniffing() {
        assert_eq!(Format::sniff("C~\n"), Format::Graph6);
        assert_eq!(Format::sniff(">>graph6<<C~"), Format::Graph6);
        assert_eq!(Format::sniff("2 1\n0 1\n"), Format::Edgelist);
        assert_eq!(Format::sniff(" {\"n\":2}"), Format::Json);
        assert_eq!("G6".parse::<Format>(), Ok(Format::Graph6));
        assert!("dot".parse::<Format>().is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let cert = crate::constructions::build_qr(3).unwrap();
        let report = cert.verify(1000);
        let doc = CertificateJson::new(&cert, Some(&report));
        let text = serde_json::to_string(&doc).unwrap();
        let back = parse_certificate(&text).unwrap();
        assert_eq!(back.graph, cert.graph);
        assert_eq!(back.equivalent_sets, cert.equivalent_sets);
        assert_eq!(back.coloring, cert.coloring);
        assert_eq!(back.verify(1000), report);
        assert_eq!(parse_json(&text).unwrap(), cert.graph);
    }
}
