//! A reproducible list of matching-covered test graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{
    build_chain, build_cycle_cl, build_qr, build_star_xs, petersen, splice, ChainPart, ConstructionCertificate,
    ConstructionError, CyclePart, SplicePart, StarPart,
};
use crate::families;
use crate::graph::Graph;
use crate::io::to_graph6;
use crate::matching::is_matching_covered;

/// Family names accepted in [`CorpusSpec::families`].
pub const FAMILIES: [&str; 9] =
    ["cycles", "complete-bipartite", "cube", "complete", "petersen", "qr", "constructions", "hypercube", "random"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub families: Vec<String>,
    /// Even cycles `C_4 ..= C_max`.
    pub max_cycle: usize,
    /// `K_{a,a}` for `a` in `1..=max`.
    pub max_biclique: usize,
    /// Odd degrees `r` contributing `K_{r+1}`.
    pub complete_degrees: Vec<usize>,
    /// Degrees `r` contributing `Q_r`.
    pub qr_degrees: Vec<usize>,
    pub random_count: usize,
    /// Largest (even) order of a random member.
    pub random_max_n: usize,
    pub seed: u64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            families: FAMILIES.iter().map(|s| s.to_string()).collect(),
            max_cycle: 12,
            max_biclique: 4,
            complete_degrees: vec![3, 5],
            qr_degrees: vec![3, 4],
            random_count: 24,
            random_max_n: 10,
            seed: 0x5eed,
        }
    }
}

impl CorpusSpec {
    pub fn with_seed(seed: u64) -> Self {
        CorpusSpec { seed, ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("unknown corpus family `{0}`")]
    UnknownFamily(String),
    #[error("default instance {name} failed to build: {source}")]
    Construction { name: String, source: ConstructionError },
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: Graph,
}

/// Two copies of `K_4` spliced at edge `01`.
pub fn default_splice() -> Result<ConstructionCertificate, ConstructionError> {
    splice(SplicePart::new(families::complete(4), 0), SplicePart::new(families::complete(4), 0))
}

/// Two `K_4`'s chained through the perfect matching `{01, 23}`.
pub fn default_chain() -> Result<ConstructionCertificate, ConstructionError> {
    let part = || ChainPart::new(families::complete(4), 0, 5, vec![0, 5]);
    build_chain(vec![part(), part()], None)
}

/// Three copies of `Q_4` joined in a ring through their pairs `a1a2, b1b2`.
pub fn default_cycle() -> Result<ConstructionCertificate, ConstructionError> {
    let q4 = build_qr(4)?;
    let a = q4.graph.edge_by_label("a1a2").expect("Q_r labels a1a2");
    let b = q4.graph.edge_by_label("b1b2").expect("Q_r labels b1b2");
    let part = || {
        let mut p = CyclePart::new(q4.graph.clone(), a, b);
        p.coloring = q4.coloring.clone();
        p
    };
    build_cycle_cl(vec![part(), part(), part()])
}

/// Three copies of `K_4` around a hub of three vertices.
pub fn default_star() -> Result<ConstructionCertificate, ConstructionError> {
    build_star_xs((0..3).map(|_| StarPart::new(families::complete(4))).collect())
}

/// The default star fed back in as one part next to two more `K_4`'s.
pub fn iterated_star() -> Result<ConstructionCertificate, ConstructionError> {
    let inner = default_star()?;
    let mut parts = vec![StarPart::from_certificate(&inner)];
    parts.extend((0..2).map(|_| StarPart::new(families::complete(4))));
    build_star_xs(parts)
}

/// Connected graph on `n` vertices: a random spanning tree plus edges kept with probability `p`.
fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    let mut present = vec![vec![false; n]; n];
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v));
        present[u][v] = true;
    }
    for v in 1..n {
        for u in 0..v {
            if !present[u][v] && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges.sort_unstable();
    Graph::from_edges(n, &edges)
}

fn random_members(spec: &CorpusSpec) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let orders: Vec<usize> = (4..=spec.random_max_n).step_by(2).collect();
    let mut out = Vec::new();
    if orders.is_empty() {
        return out;
    }
    let mut attempts = 0;
    while out.len() < spec.random_count && attempts < 1000 * spec.random_count.max(1) {
        attempts += 1;
        let n = orders[rng.gen_range(0..orders.len())];
        let p = rng.gen_range(0.2..0.7);
        let g = random_connected(&mut rng, n, p);
        if is_matching_covered(&g).is_yes() {
            out.push(CorpusEntry { name: format!("random-{}-n{n}", out.len()), graph: g });
        }
    }
    out
}

/// Builds the corpus in a fixed order; identical specs give identical corpora.
pub fn build_corpus(spec: &CorpusSpec) -> Result<Vec<CorpusEntry>, CorpusError> {
    if let Some(f) = spec.families.iter().find(|f| !FAMILIES.contains(&f.as_str())) {
        return Err(CorpusError::UnknownFamily(f.clone()));
    }
    let wants = |name: &str| spec.families.iter().any(|f| f == name);
    let mut out = Vec::new();
    let mut push = |name: String, graph: Graph| out.push(CorpusEntry { name, graph });
    if wants("cycles") {
        for n in (4..=spec.max_cycle).step_by(2) {
            push(format!("C{n}"), families::cycle(n));
        }
    }
    if wants("complete-bipartite") {
        for a in 1..=spec.max_biclique {
            push(format!("K{a},{a}"), families::complete_bipartite(a, a));
        }
    }
    if wants("cube") {
        push("cube".into(), families::hypercube(3));
    }
    if wants("complete") {
        for &r in &spec.complete_degrees {
            if r % 2 == 1 {
                push(format!("K{}", r + 1), families::complete(r + 1));
            }
        }
    }
    if wants("petersen") {
        push("petersen".into(), petersen());
    }
    if wants("qr") {
        for &r in &spec.qr_degrees {
            if let Ok(cert) = build_qr(r) {
                push(format!("Q_{r}"), cert.graph);
            }
        }
    }
    if wants("hypercube") {
        push("hypercube-4".into(), families::hypercube(4));
    }
    if wants("constructions") {
        let builders: [(&str, fn() -> Result<ConstructionCertificate, ConstructionError>); 4] = [
            ("splice-k4-k4", default_splice),
            ("chain-k4-k4", default_chain),
            ("star-k4x3", default_star),
            ("cycle-q4x3", default_cycle),
        ];
        for (name, build) in builders {
            let cert = build().map_err(|source| CorpusError::Construction { name: name.into(), source })?;
            push(name.into(), cert.graph);
        }
    }
    if wants("random") {
        out.extend(random_members(spec));
    }
    Ok(out)
}

/// One line per member: name, order, size and graph6 (or the raw edge list for multigraphs).
pub fn corpus_listing(corpus: &[CorpusEntry]) -> String {
    corpus
        .iter()
        .map(|c| {
            let code = to_graph6(&c.graph).unwrap_or_else(|_| format!("{:?}", c.graph.edges()));
            format!("{}\t{}\t{}\t{}\n", c.name, c.graph.n(), c.graph.m(), code)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_listing() {
        let a = corpus_listing(&build_corpus(&CorpusSpec::with_seed(7)).unwrap());
        let b = corpus_listing(&build_corpus(&CorpusSpec::with_seed(7)).unwrap());
        assert_eq!(a, b);
        let c = corpus_listing(&build_corpus(&CorpusSpec::with_seed(8)).unwrap());
        assert_ne!(a, c);
    }

    #[test]
    fn members_are_matching_covered() {
        let corpus = build_corpus(&CorpusSpec::default()).unwrap();
        assert!(corpus.iter().all(|c| is_matching_covered(&c.graph).is_yes()));
        let names: Vec<&str> = corpus.iter().map(|c| c.name.as_str()).collect();
        for want in ["C4", "C12", "K4,4", "cube", "K4", "K6", "petersen", "Q_3", "Q_4", "cycle-q4x3", "star-k4x3"] {
            assert!(names.contains(&want), "{want}");
        }
        assert_eq!(corpus.iter().filter(|c| c.name.starts_with("random")).count(), 24);
        assert!(corpus.iter().filter(|c| c.name.starts_with("random")).all(|c| c.graph.n() <= 10));
    }

    #[test]
    fn unknown_family_is_rejected() {
        let spec = CorpusSpec { families: vec!["wheels".into()], ..Default::default() };
        assert_eq!(build_corpus(&spec).unwrap_err(), CorpusError::UnknownFamily("wheels".into()));
    }

    #[test]
    fn iterated_star_shape() {
        let cert = iterated_star().unwrap();
        assert_eq!((cert.graph.n(), cert.graph.m(), cert.graph.regular_degree()), (20, 30, Some(3)));
    }
}
