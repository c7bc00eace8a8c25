//! Part specifications for `construct`: a built-in name or a file, optionally with `@`-separated fields.

use std::path::Path;

use nfstar_core::constructions::{build_qr, petersen, ConstructionCertificate, EdgeColoring};
use nfstar_core::families;
use nfstar_core::io::{parse_certificate, read_graph, Format};
use nfstar_core::Graph;

use crate::CliError;

/// A graph with whatever a certificate could tell about it.
#[derive(Debug, Clone)]
pub struct Source {
    pub graph: Graph,
    pub coloring: Option<EdgeColoring>,
    pub equivalent_sets: Vec<Vec<usize>>,
}

impl From<ConstructionCertificate> for Source {
    fn from(cert: ConstructionCertificate) -> Self {
        Source {
            equivalent_sets: cert.equivalent_sets.iter().map(|s| s.to_vec()).collect(),
            coloring: cert.coloring,
            graph: cert.graph,
        }
    }
}

/// `k<n>` (complete graph), `q<r>` (the `Q_r` certificate), `petersen`, `cube`, or a file.
///
/// JSON files holding a `schema_version` are read as certificates.
pub fn load_source(spec: &str) -> Result<Source, CliError> {
    let plain = |graph: Graph| Source { graph, coloring: None, equivalent_sets: Vec::new() };
    let lower = spec.to_ascii_lowercase();
    if lower == "petersen" {
        return Ok(plain(petersen()));
    }
    if lower == "cube" {
        return Ok(plain(families::hypercube(3)));
    }
    if let Some(n) = lower.strip_prefix('k').and_then(|s| s.parse::<usize>().ok()) {
        return Ok(plain(families::complete(n)));
    }
    if let Some(r) = lower.strip_prefix('q').and_then(|s| s.parse::<usize>().ok()) {
        return build_qr(r).map(Source::from).map_err(|e| CliError::Usage(format!("part `{spec}`: {e}")));
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(CliError::Usage(format!("part `{spec}` is neither a built-in graph nor an existing file")));
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{spec}: {e}")))?;
    let is_certificate = serde_json::from_str::<serde_json::Value>(&text)
        .map(|v| v.get("schema_version").is_some())
        .unwrap_or(false);
    if is_certificate {
        parse_certificate(&text).map(Source::from).map_err(|e| CliError::Usage(format!("{spec}: {e}")))
    } else {
        read_graph(path, None::<Format>).map(plain).map_err(|e| CliError::Usage(format!("{spec}: {e}")))
    }
}

/// An edge given by id or by label.
pub fn edge_ref(g: &Graph, token: &str) -> Result<usize, CliError> {
    let token = token.trim();
    let id = match token.parse::<usize>() {
        Ok(id) => id,
        Err(_) => g.edge_by_label(token).ok_or_else(|| CliError::Usage(format!("no edge labelled `{token}`")))?,
    };
    if id >= g.m() {
        return Err(CliError::Usage(format!("edge {id} out of range (the graph has {} edges)", g.m())));
    }
    Ok(id)
}

/// Comma-separated edge ids or labels; the empty string is the empty list.
pub fn edge_list(g: &Graph, text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',').filter(|t| !t.trim().is_empty()).map(|t| edge_ref(g, t)).collect()
}

/// Splits `source@field@field…`.
pub fn split_spec(spec: &str) -> (&str, Vec<&str>) {
    let mut it = spec.split('@');
    let source = it.next().unwrap_or("");
    (source, it.collect())
}
