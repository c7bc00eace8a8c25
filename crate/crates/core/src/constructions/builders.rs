//! The family builders: `Q_r`, splices, chains, odd cycles of parts, and stars of parts.

use serde_json::json;

use super::coloring::{class_one_coloring, EdgeColoring, DEFAULT_COLORING_BUDGET};
use super::{verify_equivalent_set, ConstructionCertificate, ConstructionError, MatchingConstraint};
use crate::bitvec::{EdgeSet, VertexSet};
use crate::connectivity::vertex_connectivity_at_least;
use crate::feasibility::is_switch_equiv_empty;
use crate::graph::Graph;
use crate::matching::{is_matching_covered, DEFAULT_ENUMERATION_CAP};

/// Collects parts and new pieces into one graph, keeping colors and labels.
#[derive(Default)]
struct Assembly {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// `0` marks an uncolored edge.
    colors: Vec<usize>,
    vertex_labels: Vec<(usize, String)>,
    edge_labels: Vec<(usize, String)>,
}

/// Where a part's vertices and edges landed (`None` when dropped).
struct Placed {
    vertex: Vec<Option<usize>>,
    edge: Vec<Option<usize>>,
}

impl Placed {
    fn v(&self, old: usize) -> usize {
        self.vertex[old].expect("vertex kept")
    }

    fn e(&self, old: usize) -> usize {
        self.edge[old].expect("edge kept")
    }

    fn kept_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.edge.iter().flatten().copied()
    }
}

impl Assembly {
    /// Copies `g` without `drop_vertices` (and their edges) or `drop_edges`; labels get `tag.` in front.
    fn place(
        &mut self,
        tag: &str,
        g: &Graph,
        colors: Option<&[usize]>,
        drop_vertices: &[usize],
        drop_edges: &[usize],
    ) -> Placed {
        let mut vertex = vec![None; g.n()];
        for (v, slot) in vertex.iter_mut().enumerate() {
            if !drop_vertices.contains(&v) {
                *slot = Some(self.n);
                self.n += 1;
            }
        }
        let mut edge = vec![None; g.m()];
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if drop_edges.contains(&e) {
                continue;
            }
            if let (Some(na), Some(nb)) = (vertex[a], vertex[b]) {
                edge[e] = Some(self.edges.len());
                self.edges.push((na, nb));
                self.colors.push(colors.map_or(0, |c| c[e]));
            }
        }
        for (&v, l) in g.vertex_labels() {
            if let Some(nv) = vertex[v] {
                self.vertex_labels.push((nv, format!("{tag}.{l}")));
            }
        }
        for (&e, l) in g.edge_labels() {
            if let Some(ne) = edge[e] {
                self.edge_labels.push((ne, format!("{tag}.{l}")));
            }
        }
        Placed { vertex, edge }
    }

    fn add_vertex(&mut self, label: String) -> usize {
        self.vertex_labels.push((self.n, label));
        self.n += 1;
        self.n - 1
    }

    fn add_edge(&mut self, a: usize, b: usize, color: usize, label: String) -> usize {
        self.edges.push((a, b));
        self.colors.push(color);
        self.edge_labels.push((self.edges.len() - 1, label));
        self.edges.len() - 1
    }

    fn finish(self) -> (Graph, Option<EdgeColoring>) {
        let mut g = Graph::from_edges(self.n, &self.edges);
        for (v, l) in self.vertex_labels {
            g.set_vertex_label(v, l);
        }
        for (e, l) in self.edge_labels {
            g.set_edge_label(e, l);
        }
        let coloring = self.colors.iter().all(|&c| c > 0).then(|| EdgeColoring::new(self.colors));
        (g, coloring)
    }
}

fn check_edge(part: usize, g: &Graph, e: usize) -> Result<(), ConstructionError> {
    if e < g.m() {
        Ok(())
    } else {
        Err(ConstructionError::EdgeNotInGraph { part, edge: e, m: g.m() })
    }
}

/// Endpoints `(x, y)` of `e`, lower id first unless `flip`.
fn oriented(g: &Graph, e: usize, flip: bool) -> (usize, usize) {
    let (a, b) = g.endpoints(e);
    let (lo, hi) = (a.min(b), a.max(b));
    if flip {
        (hi, lo)
    } else {
        (lo, hi)
    }
}

/// Common degree of all parts.
fn common_degree<'a>(graphs: impl Iterator<Item = &'a Graph>) -> Result<usize, ConstructionError> {
    let mut r = None;
    for (part, g) in graphs.enumerate() {
        let d = g
            .regular_degree()
            .ok_or_else(|| ConstructionError::PreconditionFailed { part, reason: "not regular".into() })?;
        match r {
            None => r = Some(d),
            Some(r0) if r0 != d => {
                return Err(ConstructionError::PreconditionFailed {
                    part,
                    reason: format!("degree {d} differs from the first part's degree {r0}"),
                })
            }
            _ => {}
        }
    }
    r.ok_or_else(|| ConstructionError::InvalidParameter("no parts".into()))
}

/// A checked class-1 coloring of an `r`-regular part: the supplied one, or one found by search.
fn part_coloring(part: usize, g: &Graph, given: Option<&EdgeColoring>, r: usize) -> Result<Vec<usize>, ConstructionError> {
    let coloring = match given {
        Some(c) => c.clone(),
        None => class_one_coloring(g, DEFAULT_COLORING_BUDGET).ok_or_else(|| ConstructionError::PreconditionFailed {
            part,
            reason: format!("no proper {r}-edge-coloring found"),
        })?,
    };
    coloring
        .check_perfect_classes(g)
        .map_err(|e| ConstructionError::ColoringMismatch { part, reason: e.to_string() })?;
    if coloring.num_colors() != r {
        return Err(ConstructionError::ColoringMismatch {
            part,
            reason: format!("uses {} colors instead of {r}", coloring.num_colors()),
        });
    }
    Ok(coloring.colors().to_vec())
}

/// Renames colors so that edge `e` gets color `target`.
fn recolor(colors: &mut [usize], e: usize, target: usize) {
    let from = colors[e];
    for c in colors.iter_mut() {
        if *c == from {
            *c = target;
        } else if *c == target {
            *c = from;
        }
    }
}

fn require_equivalent(part: usize, g: &Graph, edges: &[usize]) -> Result<(), ConstructionError> {
    let s = EdgeSet::from_ids(g.m(), edges.iter().copied());
    match verify_equivalent_set(g, &s, DEFAULT_ENUMERATION_CAP) {
        Ok(true) => Ok(()),
        Ok(false) => Err(ConstructionError::NotEquivalent { part }),
        Err(source) => Err(ConstructionError::Feasibility { part, source }),
    }
}

/// Largest `k ≤ limit` with the graph `k`-connected.
fn connectivity_up_to(g: &Graph, limit: usize) -> usize {
    (1..=limit).take_while(|&k| vertex_connectivity_at_least(g, k).holds()).last().unwrap_or(0)
}

fn is_bipartite_after_removing(g: &Graph, vertices: &[usize], edges: &[usize]) -> bool {
    let gone_e = EdgeSet::from_ids(g.m(), edges.iter().copied());
    let keep_v = VertexSet::from_ids(g.n(), (0..g.n()).filter(|v| !vertices.contains(v)));
    let keep_e = g.edges_inside(&keep_v).difference(&gone_e);
    g.subgraph(&keep_v, &keep_e).graph.is_bipartite().is_bipartite()
}

/// `K_{r,r}` with `a1b1`, `a2b2` replaced by `a1a2`, `b1b2`.
///
/// Vertices `a_i = i - 1` and `b_i = r + i - 1`. The coloring gives `a_i b_j` color
/// `((j - i) mod r) + 1`, so both removed edges and both added edges have color 1.
pub fn build_qr(r: usize) -> Result<ConstructionCertificate, ConstructionError> {
    if r < 3 {
        return Err(ConstructionError::InvalidParameter(format!("r must be at least 3, got {r}")));
    }
    let mut asm = Assembly::default();
    for i in 1..=r {
        asm.add_vertex(format!("a{i}"));
    }
    for j in 1..=r {
        asm.add_vertex(format!("b{j}"));
    }
    for i in 0..r {
        for j in 0..r {
            if i == j && i < 2 {
                continue;
            }
            asm.edges.push((i, r + j));
            asm.colors.push((j + r - i) % r + 1);
        }
    }
    let a1a2 = asm.add_edge(0, 1, 1, "a1a2".into());
    let b1b2 = asm.add_edge(r, r + 1, 1, "b1b2".into());
    let (graph, coloring) = asm.finish();
    let m = graph.m();
    Ok(ConstructionCertificate {
        name: "qr".into(),
        params: json!({ "r": r, "a1a2": a1a2, "b1b2": b1b2 }),
        graph,
        r: Some(r),
        claimed_connectivity: r,
        matching_covered: true,
        coloring,
        equivalent_sets: vec![EdgeSet::from_ids(m, [a1a2, b1b2])],
        nf_star_witnesses: Vec::new(),
        constraints: Vec::new(),
        notes: vec!["no nF* witness: removing a1a2 and b1b2 leaves a bipartite graph".into()],
    })
}

/// One input of [`splice`].
#[derive(Debug, Clone)]
pub struct SplicePart {
    pub graph: Graph,
    /// The edge `e = xy` to delete; `x` is its lower endpoint unless `flip`.
    pub edge: usize,
    pub flip: bool,
    /// An equivalent set containing `edge`; `{edge}` when absent.
    pub equivalent_set: Option<Vec<usize>>,
    pub coloring: Option<EdgeColoring>,
}

impl SplicePart {
    pub fn new(graph: Graph, edge: usize) -> Self {
        SplicePart { graph, edge, flip: false, equivalent_set: None, coloring: None }
    }
}

/// Deletes `e1 = x1y1` and `e2 = x2y2` from the disjoint union and adds `f1 = x1x2`, `f2 = y1y2`.
pub fn splice(first: SplicePart, second: SplicePart) -> Result<ConstructionCertificate, ConstructionError> {
    let parts = [&first, &second];
    for (i, p) in parts.iter().enumerate() {
        check_edge(i, &p.graph, p.edge)?;
        if p.graph.m() < 2 {
            return Err(ConstructionError::PreconditionFailed { part: i, reason: "needs at least two edges".into() });
        }
        let coverage = is_matching_covered(&p.graph);
        if !coverage.is_yes() {
            return Err(ConstructionError::NotMatchingCovered { part: i, coverage });
        }
        if let Some(s) = &p.equivalent_set {
            if !s.contains(&p.edge) {
                return Err(ConstructionError::InvalidParameter(format!("part {i}: equivalent set must contain edge {}", p.edge)));
            }
            for &e in s {
                check_edge(i, &p.graph, e)?;
            }
        }
    }
    let regular = common_degree(parts.iter().map(|p| &p.graph)).ok();
    let mut notes = Vec::new();
    let colors: Option<Vec<Vec<usize>>> = match regular {
        Some(r) => {
            let mut cs = Vec::new();
            for (i, p) in parts.iter().enumerate() {
                match part_coloring(i, &p.graph, p.coloring.as_ref(), r) {
                    Ok(mut c) => {
                        recolor(&mut c, p.edge, 1);
                        cs.push(c);
                    }
                    Err(e) if p.coloring.is_some() => return Err(e),
                    Err(e) => {
                        notes.push(format!("no class-1 claim: {e}"));
                        break;
                    }
                }
            }
            (cs.len() == parts.len()).then_some(cs)
        }
        None if first.coloring.is_some() || second.coloring.is_some() => {
            return Err(ConstructionError::ColoringMismatch {
                part: 0,
                reason: "colorings can only be composed for parts of one common degree".into(),
            })
        }
        None => None,
    };

    let mut asm = Assembly::default();
    let mut placed = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let c = colors.as_ref().map(|cs| cs[i].as_slice());
        placed.push(asm.place(&format!("g{}", i + 1), &p.graph, c, &[], &[p.edge]));
    }
    let (x1, y1) = oriented(&first.graph, first.edge, first.flip);
    let (x2, y2) = oriented(&second.graph, second.edge, second.flip);
    let color = if colors.is_some() { 1 } else { 0 };
    let f1 = asm.add_edge(placed[0].v(x1), placed[1].v(x2), color, "f1".into());
    let f2 = asm.add_edge(placed[0].v(y1), placed[1].v(y2), color, "f2".into());
    let (graph, coloring) = asm.finish();
    let m = graph.m();

    let mut equivalent_sets = vec![EdgeSet::from_ids(m, [f1, f2])];
    if parts.iter().any(|p| p.equivalent_set.is_some()) {
        let mut s = EdgeSet::from_ids(m, [f1, f2]);
        for (i, p) in parts.iter().enumerate() {
            for &e in p.equivalent_set.as_deref().unwrap_or(&[]) {
                if e != p.edge {
                    s.insert(placed[i].e(e));
                }
            }
        }
        if s.len() > 2 {
            equivalent_sets.push(s);
        }
    }
    let two_connected = parts.iter().all(|p| vertex_connectivity_at_least(&p.graph, 2).holds());
    Ok(ConstructionCertificate {
        name: "splice".into(),
        params: json!({
            "e1": first.edge, "e2": second.edge,
            "x1": placed[0].v(x1), "y1": placed[0].v(y1), "x2": placed[1].v(x2), "y2": placed[1].v(y2),
            "f1": f1, "f2": f2,
        }),
        graph,
        r: regular,
        claimed_connectivity: if two_connected { 2 } else { 1 },
        matching_covered: true,
        coloring,
        equivalent_sets,
        nf_star_witnesses: Vec::new(),
        constraints: Vec::new(),
        notes,
    })
}

/// One link of [`build_chain`]: part `i` is spliced at `e_prime` to the next part's `e`.
#[derive(Debug, Clone)]
pub struct ChainPart {
    pub graph: Graph,
    pub e: usize,
    pub e_prime: usize,
    pub flip_e: bool,
    pub flip_e_prime: bool,
    /// An equivalent set containing `e` and `e_prime`.
    pub equivalent_set: Vec<usize>,
    pub coloring: Option<EdgeColoring>,
}

impl ChainPart {
    pub fn new(graph: Graph, e: usize, e_prime: usize, equivalent_set: Vec<usize>) -> Self {
        ChainPart { graph, e, e_prime, flip_e: false, flip_e_prime: false, equivalent_set, coloring: None }
    }

    /// Edges removed from this part when it sits at position `i` of `k`.
    fn removed(&self, i: usize, k: usize) -> Vec<usize> {
        let mut out = Vec::new();
        if i > 0 {
            out.push(self.e);
        }
        if i + 1 < k {
            out.push(self.e_prime);
        }
        out
    }
}

/// Splices parts left to right, part `j` at `e'_j` to part `j+1` at `e_{j+1}`.
///
/// The certificate claims the aggregate equivalent set: every `S_i` edge that survives.
/// When `selection` (per-part edge ids) picks an even subset of it, that subset is also
/// claimed to lie in nF* provided the remainder conditions hold in some part.
pub fn build_chain(
    parts: Vec<ChainPart>,
    selection: Option<Vec<Vec<usize>>>,
) -> Result<ConstructionCertificate, ConstructionError> {
    let k = parts.len();
    if k < 2 {
        return Err(ConstructionError::InvalidParameter(format!("a chain needs at least two parts, got {k}")));
    }
    let r = common_degree(parts.iter().map(|p| &p.graph))?;
    let mut colors = Vec::with_capacity(k);
    for (i, p) in parts.iter().enumerate() {
        check_edge(i, &p.graph, p.e)?;
        check_edge(i, &p.graph, p.e_prime)?;
        if p.e == p.e_prime {
            return Err(ConstructionError::InvalidParameter(format!("part {i}: e and e' must differ")));
        }
        if !p.equivalent_set.contains(&p.e) || !p.equivalent_set.contains(&p.e_prime) {
            return Err(ConstructionError::InvalidParameter(format!("part {i}: equivalent set must contain e and e'")));
        }
        for &e in &p.equivalent_set {
            check_edge(i, &p.graph, e)?;
        }
        if !vertex_connectivity_at_least(&p.graph, 2).holds() {
            return Err(ConstructionError::PreconditionFailed { part: i, reason: "not 2-connected".into() });
        }
        require_equivalent(i, &p.graph, &p.equivalent_set)?;
        colors.push(part_coloring(i, &p.graph, p.coloring.as_ref(), r)?);
    }
    for j in 1..k {
        let target = colors[j - 1][parts[j - 1].e_prime];
        recolor(&mut colors[j], parts[j].e, target);
    }

    let mut asm = Assembly::default();
    let placed: Vec<Placed> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| asm.place(&format!("g{}", i + 1), &p.graph, Some(&colors[i]), &[], &p.removed(i, k)))
        .collect();
    let mut links = Vec::new();
    for j in 0..k - 1 {
        let (xp, yp) = oriented(&parts[j].graph, parts[j].e_prime, parts[j].flip_e_prime);
        let (x, y) = oriented(&parts[j + 1].graph, parts[j + 1].e, parts[j + 1].flip_e);
        let color = colors[j][parts[j].e_prime];
        let f1 = asm.add_edge(placed[j].v(xp), placed[j + 1].v(x), color, format!("h{}.f1", j + 1));
        let f2 = asm.add_edge(placed[j].v(yp), placed[j + 1].v(y), color, format!("h{}.f2", j + 1));
        links.push((f1, f2));
    }
    let (graph, coloring) = asm.finish();
    let m = graph.m();

    let mut aggregate = EdgeSet::empty(m);
    for (i, p) in parts.iter().enumerate() {
        let removed = p.removed(i, k);
        for &e in &p.equivalent_set {
            if !removed.contains(&e) {
                aggregate.insert(placed[i].e(e));
            }
        }
    }
    let mut equivalent_sets = vec![aggregate.clone()];
    equivalent_sets.extend(links.iter().map(|&(a, b)| EdgeSet::from_ids(m, [a, b])));

    let mut nf_star_witnesses = Vec::new();
    let mut notes = Vec::new();
    if let Some(sel) = selection {
        if sel.len() != k {
            return Err(ConstructionError::InvalidParameter(format!("selection lists {} parts, chain has {k}", sel.len())));
        }
        let mut chosen = EdgeSet::empty(m);
        for (i, edges) in sel.iter().enumerate() {
            for &e in edges {
                check_edge(i, &parts[i].graph, e)?;
                match placed[i].edge[e] {
                    Some(ne) if aggregate.contains(ne) => chosen.insert(ne),
                    _ => {
                        return Err(ConstructionError::InvalidParameter(format!(
                            "part {i}: edge {e} is not in the aggregate equivalent set"
                        )))
                    }
                }
            }
        }
        if chosen.len() % 2 == 1 {
            return Err(ConstructionError::InvalidParameter("selection must have even size".into()));
        }
        match chain_witness_conditions(&parts, &sel) {
            Ok(()) => nf_star_witnesses.push(chosen),
            Err(reason) => notes.push(format!("no nF* claim for the selection: {reason}")),
        }
    }

    Ok(ConstructionCertificate {
        name: "chain".into(),
        params: json!({ "k": k, "r": r, "links": links }),
        graph,
        r: Some(r),
        claimed_connectivity: 2,
        matching_covered: true,
        coloring,
        equivalent_sets,
        nf_star_witnesses,
        constraints: Vec::new(),
        notes,
    })
}

/// Checks that some part stays non-bipartite after removing its deleted edges and its
/// selected edges, and that in some part the selected edges are not a cut, both in the part
/// minus `e` and in the part minus all its deleted edges.
fn chain_witness_conditions(parts: &[ChainPart], sel: &[Vec<usize>]) -> Result<(), String> {
    let k = parts.len();
    let non_bipartite = parts.iter().enumerate().any(|(i, p)| {
        let mut gone = p.removed(i, k);
        gone.extend(&sel[i]);
        !is_bipartite_after_removing(&p.graph, &[], &gone)
    });
    if !non_bipartite {
        return Err("every part is bipartite after removing its deleted and selected edges".into());
    }
    let mut not_cut = false;
    for (i, p) in parts.iter().enumerate() {
        let in_reduced = !is_cut_after_removing(&p.graph, &p.removed(i, k), &sel[i]);
        let in_minus_e = !is_cut_after_removing(&p.graph, &[p.e], &sel[i]);
        if in_reduced != in_minus_e {
            return Err(format!(
                "part {i}: the selection is a cut in one of the two reduced parts but not the other"
            ));
        }
        not_cut |= in_reduced;
    }
    if !not_cut {
        return Err("in every part the selected edges form a cut".into());
    }
    Ok(())
}

/// Whether `chosen − removed` is a cut of `g − removed`.
fn is_cut_after_removing(g: &Graph, removed: &[usize], chosen: &[usize]) -> bool {
    let sub = g.remove_edges(&EdgeSet::from_ids(g.m(), removed.iter().copied()));
    let local = EdgeSet::from_ids(
        sub.graph.m(),
        chosen.iter().filter_map(|&e| sub.edge_from_parent(e)),
    );
    is_switch_equiv_empty(&sub.graph, &local).holds()
}

/// One part of [`build_cycle_cl`], with an equivalent pair `{e, e'}`.
#[derive(Debug, Clone)]
pub struct CyclePart {
    pub graph: Graph,
    pub e: usize,
    pub e_prime: usize,
    pub flip_e: bool,
    pub flip_e_prime: bool,
    pub coloring: Option<EdgeColoring>,
}

impl CyclePart {
    pub fn new(graph: Graph, e: usize, e_prime: usize) -> Self {
        CyclePart { graph, e, e_prime, flip_e: false, flip_e_prime: false, coloring: None }
    }
}

/// Deletes each part's pair `e_i = x_i y_i`, `e'_i = x'_i y'_i` and joins consecutive parts
/// by `f_i = x_i y_{i+1}` and `f'_i = x'_i y'_{i+1}`, cyclically over an odd number of parts.
pub fn build_cycle_cl(parts: Vec<CyclePart>) -> Result<ConstructionCertificate, ConstructionError> {
    let k = parts.len();
    if k < 3 || k % 2 == 0 {
        return Err(ConstructionError::InvalidParameter(format!("the number of parts must be odd and at least 3, got {k}")));
    }
    let r = common_degree(parts.iter().map(|p| &p.graph))?;
    let mut colors = Vec::with_capacity(k);
    for (i, p) in parts.iter().enumerate() {
        check_edge(i, &p.graph, p.e)?;
        check_edge(i, &p.graph, p.e_prime)?;
        if p.e == p.e_prime {
            return Err(ConstructionError::InvalidParameter(format!("part {i}: e and e' must differ")));
        }
        require_equivalent(i, &p.graph, &[p.e, p.e_prime])?;
        if !p.graph.remove_edges(&EdgeSet::from_ids(p.graph.m(), [p.e, p.e_prime])).graph.is_connected() {
            return Err(ConstructionError::PreconditionFailed { part: i, reason: "deleting e and e' disconnects it".into() });
        }
        let mut c = part_coloring(i, &p.graph, p.coloring.as_ref(), r)?;
        recolor(&mut c, p.e, 1);
        if c[p.e_prime] != 1 {
            return Err(ConstructionError::ColoringMismatch { part: i, reason: "e and e' have different colors".into() });
        }
        colors.push(c);
    }
    let connectivity = parts.iter().map(|p| connectivity_up_to(&p.graph, 4)).min().unwrap_or(0);

    let mut asm = Assembly::default();
    let placed: Vec<Placed> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| asm.place(&format!("g{}", i + 1), &p.graph, Some(&colors[i]), &[], &[p.e, p.e_prime]))
        .collect();
    let ends: Vec<_> = parts
        .iter()
        .map(|p| (oriented(&p.graph, p.e, p.flip_e), oriented(&p.graph, p.e_prime, p.flip_e_prime)))
        .collect();
    let mut pairs = Vec::with_capacity(k);
    for i in 0..k {
        let next = (i + 1) % k;
        let ((x, _), (xp, _)) = ends[i];
        let ((_, y), (_, yp)) = ends[next];
        let f = asm.add_edge(placed[i].v(x), placed[next].v(y), 1, format!("f{}", i + 1));
        let fp = asm.add_edge(placed[i].v(xp), placed[next].v(yp), 1, format!("f'{}", i + 1));
        pairs.push((f, fp));
    }
    let (graph, coloring) = asm.finish();
    let m = graph.m();

    let equivalent_sets = pairs.iter().map(|&(f, fp)| EdgeSet::from_ids(m, [f, fp])).collect();
    let mut nf_star_witnesses = Vec::new();
    let mut notes = Vec::new();
    let non_bipartite = parts.iter().any(|p| !is_bipartite_after_removing(&p.graph, &[], &[p.e, p.e_prime]));
    if non_bipartite {
        nf_star_witnesses.push(EdgeSet::from_ids(m, pairs.iter().flat_map(|&(f, fp)| [f, fp])));
    } else {
        notes.push("no nF* witness: every part is bipartite after deleting its pair".into());
    }

    Ok(ConstructionCertificate {
        name: "cycle".into(),
        params: json!({ "k": k, "r": r, "pairs": pairs }),
        graph,
        r: Some(r),
        claimed_connectivity: connectivity,
        matching_covered: true,
        coloring,
        equivalent_sets,
        nf_star_witnesses,
        constraints: vec![MatchingConstraint::Alternation { pairs }],
        notes,
    })
}

/// One part of [`build_star_xs`].
#[derive(Debug, Clone)]
pub struct StarPart {
    pub graph: Graph,
    /// The vertex replaced by hub edges; defaults to the highest-id vertex touching no planted set.
    pub w: Option<usize>,
    pub coloring: Option<EdgeColoring>,
    /// Equivalent sets of the part that should survive into the result.
    pub planted: Vec<Vec<usize>>,
}

impl StarPart {
    pub fn new(graph: Graph) -> Self {
        StarPart { graph, w: None, coloring: None, planted: Vec::new() }
    }

    /// Carries a certificate's coloring and equivalent sets into a new star.
    pub fn from_certificate(cert: &ConstructionCertificate) -> Self {
        StarPart {
            graph: cert.graph.clone(),
            w: None,
            coloring: cert.coloring.clone(),
            planted: cert.equivalent_sets.iter().map(EdgeSet::to_vec).collect(),
        }
    }
}

/// Removes a vertex `w_i` from each of `r` parts and joins hub `u_j` to the neighbour
/// `v_{i,j}` that `w_i` reached by its color-`j` edge.
///
/// Color `s` of the result takes, from part `i`, color `c = ((i + s - 2) mod r) + 1`
/// without `w_i v_{i,c}`, plus the hub edge `u_c v_{i,c}` (all indices from 1).
pub fn build_star_xs(parts: Vec<StarPart>) -> Result<ConstructionCertificate, ConstructionError> {
    let r = common_degree(parts.iter().map(|p| &p.graph))?;
    if r < 3 || parts.len() != r {
        return Err(ConstructionError::InvalidParameter(format!(
            "a star over {r}-regular parts needs exactly {r} parts (r >= 3), got {}",
            parts.len()
        )));
    }
    let mut ws = Vec::with_capacity(r);
    let mut colors = Vec::with_capacity(r);
    let mut nbrs = Vec::with_capacity(r);
    for (i, p) in parts.iter().enumerate() {
        let g = &p.graph;
        if !vertex_connectivity_at_least(g, r).holds() {
            return Err(ConstructionError::PreconditionFailed { part: i, reason: format!("not {r}-connected") });
        }
        for s in &p.planted {
            for &e in s {
                check_edge(i, g, e)?;
            }
        }
        let touches = |v: usize| p.planted.iter().flatten().any(|&e| {
            let (a, b) = g.endpoints(e);
            a == v || b == v
        });
        let w = match p.w {
            Some(w) if w >= g.n() => return Err(ConstructionError::VertexNotInGraph { part: i, vertex: w, n: g.n() }),
            Some(w) if touches(w) => {
                return Err(ConstructionError::InvalidParameter(format!("part {i}: w = {w} touches a planted set")))
            }
            Some(w) => w,
            None => (0..g.n()).rev().find(|&v| !touches(v)).ok_or_else(|| {
                ConstructionError::InvalidParameter(format!("part {i}: every vertex touches a planted set"))
            })?,
        };
        let c = part_coloring(i, g, p.coloring.as_ref(), r)?;
        let mut v_of_color = vec![usize::MAX; r + 1];
        for &(nb, e) in g.incident(w) {
            if v_of_color[c[e]] != usize::MAX {
                return Err(ConstructionError::ColoringMismatch { part: i, reason: format!("color {} repeats at w", c[e]) });
            }
            v_of_color[c[e]] = nb;
        }
        ws.push(w);
        colors.push(c);
        nbrs.push(v_of_color);
    }

    let class_of = |i: usize, c: usize| (c + r - 1 - i) % r + 1;
    let mut asm = Assembly::default();
    let mut placed = Vec::with_capacity(r);
    for (i, p) in parts.iter().enumerate() {
        let shifted: Vec<usize> = colors[i].iter().map(|&c| class_of(i, c)).collect();
        placed.push(asm.place(&format!("g{}", i + 1), &p.graph, Some(&shifted), &[ws[i]], &[]));
    }
    let hubs: Vec<usize> = (1..=r).map(|j| asm.add_vertex(format!("u{j}"))).collect();
    let mut bundles_ids = vec![Vec::with_capacity(r); r];
    for (i, bundle) in bundles_ids.iter_mut().enumerate() {
        for j in 1..=r {
            let v = placed[i].v(nbrs[i][j]);
            let e = asm.add_edge(hubs[j - 1], v, class_of(i, j), format!("u{j}v{},{j}", i + 1));
            bundle.push(e);
        }
    }
    let (graph, coloring) = asm.finish();
    let m = graph.m();

    let non_bipartite: Vec<bool> =
        parts.iter().zip(&ws).map(|(p, &w)| !is_bipartite_after_removing(&p.graph, &[w], &[])).collect();
    let mut nf_star_witnesses = Vec::new();
    let mut notes = Vec::new();
    for i in 0..r {
        let partner = (0..r).any(|j| j != i && non_bipartite[j]);
        if non_bipartite[i] && partner {
            nf_star_witnesses.push(EdgeSet::from_ids(m, placed[i].kept_edges()));
        } else {
            notes.push(format!("no nF* claim for part {}: it or every other part is bipartite once w is removed", i + 1));
        }
    }
    let mut equivalent_sets = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        for s in &p.planted {
            equivalent_sets.push(EdgeSet::from_ids(m, s.iter().map(|&e| placed[i].e(e))));
        }
    }
    let bundles = bundles_ids.iter().map(|b| EdgeSet::from_ids(m, b.iter().copied())).collect();
    let neighbors: Vec<Vec<usize>> = (0..r).map(|i| (1..=r).map(|j| placed[i].v(nbrs[i][j])).collect()).collect();

    Ok(ConstructionCertificate {
        name: "star".into(),
        params: json!({ "r": r, "w": ws, "hubs": hubs, "neighbors": neighbors }),
        graph,
        r: Some(r),
        claimed_connectivity: r,
        matching_covered: true,
        coloring,
        equivalent_sets,
        nf_star_witnesses,
        constraints: vec![MatchingConstraint::OnePerBundle { bundles }],
        notes,
    })
}
