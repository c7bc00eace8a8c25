//! Proper edge colorings and exact chromatic index by backtracking.

use std::collections::VecDeque;

use crate::bitvec::EdgeSet;
use crate::graph::Graph;
use crate::matching::check_perfect;

/// Colors `1..=k` indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ColoringError {
    #[error("coloring has {got} entries but the graph has {expected} edges")]
    WrongLength { expected: usize, got: usize },
    #[error("edge {edge} has color 0; colors start at 1")]
    ZeroColor { edge: usize },
    #[error("edges {a} and {b} share vertex {vertex} and color {color}")]
    Clash { a: usize, b: usize, vertex: usize, color: usize },
    #[error("color class {color} is not a perfect matching")]
    ClassNotPerfect { color: usize },
}

impl EdgeColoring {
    pub fn new(colors: Vec<usize>) -> Self {
        EdgeColoring { colors }
    }

    pub fn color(&self, e: usize) -> usize {
        self.colors[e]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Largest color used.
    pub fn num_colors(&self) -> usize {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    pub fn class(&self, color: usize) -> EdgeSet {
        EdgeSet::from_ids(self.colors.len(), (0..self.colors.len()).filter(|&e| self.colors[e] == color))
    }

    /// Exchanges the names of two colors.
    pub fn swap_colors(&mut self, a: usize, b: usize) {
        for c in &mut self.colors {
            if *c == a {
                *c = b;
            } else if *c == b {
                *c = a;
            }
        }
    }

    /// Checks that no two edges sharing a vertex have the same color.
    pub fn check_proper(&self, g: &Graph) -> Result<(), ColoringError> {
        if self.colors.len() != g.m() {
            return Err(ColoringError::WrongLength { expected: g.m(), got: self.colors.len() });
        }
        if let Some(edge) = self.colors.iter().position(|&c| c == 0) {
            return Err(ColoringError::ZeroColor { edge });
        }
        for v in 0..g.n() {
            let mut seen: Vec<(usize, usize)> = Vec::new();
            for &(_, e) in g.incident(v) {
                let c = self.colors[e];
                if let Some(&(_, a)) = seen.iter().find(|&&(sc, a)| sc == c && a != e) {
                    return Err(ColoringError::Clash { a, b: e, vertex: v, color: c });
                }
                seen.push((c, e));
            }
        }
        Ok(())
    }

    /// Proper, and every class `1..=num_colors` is a perfect matching.
    pub fn check_perfect_classes(&self, g: &Graph) -> Result<(), ColoringError> {
        self.check_proper(g)?;
        for color in 1..=self.num_colors() {
            check_perfect(g, &self.class(color)).map_err(|_| ColoringError::ClassNotPerfect { color })?;
        }
        Ok(())
    }
}

/// Outcome of an exact chromatic-index search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChromaticIndex {
    Exact { colors: usize, coloring: EdgeColoring },
    /// The budget ran out, or every count up to the color limit failed.
    Unknown { lower_bound: usize },
}

impl ChromaticIndex {
    pub fn value(&self) -> Option<usize> {
        match self {
            ChromaticIndex::Exact { colors, .. } => Some(*colors),
            ChromaticIndex::Unknown { .. } => None,
        }
    }
}

pub const DEFAULT_COLORING_BUDGET: usize = 5_000_000;

/// Smallest `k ≤ limit_colors` admitting a proper `k`-edge-coloring, found by trying
/// `k = Δ, Δ+1, …` with at most `budget` color assignments in total.
pub fn chromatic_index_exact(g: &Graph, limit_colors: usize, budget: usize) -> ChromaticIndex {
    let delta = g.max_degree();
    let mut remaining = budget;
    for k in delta..=limit_colors {
        match color_with(g, k, &mut remaining) {
            Search::Found(coloring) => return ChromaticIndex::Exact { colors: k, coloring },
            Search::Impossible => continue,
            Search::OutOfBudget => return ChromaticIndex::Unknown { lower_bound: k },
        }
    }
    ChromaticIndex::Unknown { lower_bound: limit_colors.max(delta) + 1 }
}

/// A proper `Δ`-edge-coloring if one exists within the budget.
pub fn class_one_coloring(g: &Graph, budget: usize) -> Option<EdgeColoring> {
    let mut remaining = budget;
    match color_with(g, g.max_degree(), &mut remaining) {
        Search::Found(c) => Some(c),
        _ => None,
    }
}

enum Search {
    Found(EdgeColoring),
    Impossible,
    OutOfBudget,
}

/// Edges in breadth-first order from vertex 0, so each edge tends to touch colored ones.
fn edge_order(g: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(g.m());
    let mut placed = vec![false; g.m()];
    let mut seen = vec![false; g.n()];
    for root in 0..g.n() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in g.incident(v) {
                if !placed[e] {
                    placed[e] = true;
                    order.push(e);
                }
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

fn color_with(g: &Graph, k: usize, remaining: &mut usize) -> Search {
    if g.m() == 0 {
        return Search::Found(EdgeColoring::new(Vec::new()));
    }
    if k == 0 || k > 64 {
        return Search::Impossible;
    }
    let order = edge_order(g);
    let mut used = vec![0u64; g.n()];
    let mut colors = vec![0usize; g.m()];
    match assign(g, &order, 0, k, 0, &mut used, &mut colors, remaining) {
        Some(true) => Search::Found(EdgeColoring::new(colors)),
        Some(false) => Search::Impossible,
        None => Search::OutOfBudget,
    }
}

/// `Some(found)` when the subtree was fully explored, `None` when the budget ran out.
#[allow(clippy::too_many_arguments)]
fn assign(
    g: &Graph,
    order: &[usize],
    at: usize,
    k: usize,
    max_used: usize,
    used: &mut [u64],
    colors: &mut [usize],
    remaining: &mut usize,
) -> Option<bool> {
    if at == order.len() {
        return Some(true);
    }
    let e = order[at];
    let (a, b) = g.endpoints(e);
    // colors above max_used + 1 are interchangeable with max_used + 1
    let top = k.min(max_used + 1);
    for c in 1..=top {
        let bit = 1u64 << (c - 1);
        if (used[a] | used[b]) & bit != 0 {
            continue;
        }
        if *remaining == 0 {
            return None;
        }
        *remaining -= 1;
        used[a] |= bit;
        used[b] |= bit;
        colors[e] = c;
        let found = assign(g, order, at + 1, k, max_used.max(c), used, colors, remaining);
        used[a] &= !bit;
        used[b] &= !bit;
        match found {
            Some(true) => return Some(true),
            Some(false) => {}
            None => return None,
        }
    }
    colors[e] = 0;
    Some(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn small_chromatic_indices() {
        assert_eq!(chromatic_index_exact(&families::complete(4), 5, 10_000).value(), Some(3));
        assert_eq!(chromatic_index_exact(&families::cycle(6), 5, 10_000).value(), Some(2));
        assert_eq!(chromatic_index_exact(&families::cycle(5), 5, 10_000).value(), Some(3));
        assert_eq!(chromatic_index_exact(&crate::constructions::petersen(), 5, 1_000_000).value(), Some(4));
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        assert!(matches!(
            chromatic_index_exact(&crate::constructions::petersen(), 5, 3),
            ChromaticIndex::Unknown { lower_bound: 3 }
        ));
    }

    #[test]
    fn found_colorings_are_proper() {
        let k44 = families::complete_bipartite(4, 4);
        let c = class_one_coloring(&k44, 100_000).unwrap();
        assert_eq!(c.check_perfect_classes(&k44), Ok(()));
        assert_eq!(c.num_colors(), 4);
    }

    #[test]
    fn clash_is_reported() {
        let p3 = families::path(3);
        let c = EdgeColoring::new(vec![1, 1]);
        assert_eq!(c.check_proper(&p3), Err(ColoringError::Clash { a: 0, b: 1, vertex: 1, color: 1 }));
    }
}
