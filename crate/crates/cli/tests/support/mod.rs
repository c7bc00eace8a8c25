//! Process helpers and small independent graph checks for the CLI tests.

#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use nfstar_core::Graph;

pub fn nfstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nfstar")).args(args).output().expect("nfstar binary runs")
}

pub fn nfstar_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nfstar")).current_dir(dir).args(args).output().expect("nfstar binary runs")
}

pub fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}); stderr: {}", String::from_utf8_lossy(&out.stderr)))
}

pub fn edge_mask<I: IntoIterator<Item = usize>>(ids: I) -> u64 {
    ids.into_iter().fold(0, |acc, e| acc | 1 << e)
}

/// All perfect matchings as edge masks, by matching the lowest free vertex every way possible.
pub fn perfect_matchings(g: &Graph) -> Vec<u64> {
    fn go(g: &Graph, free: &mut Vec<bool>, chosen: u64, out: &mut Vec<u64>) {
        let Some(v) = free.iter().position(|&f| f) else {
            out.push(chosen);
            return;
        };
        free[v] = false;
        for &(u, e) in g.incident(v) {
            if free[u] {
                free[u] = false;
                go(g, free, chosen | 1 << e, out);
                free[u] = true;
            }
        }
        free[v] = true;
    }
    assert!(g.m() <= 64);
    let mut out = Vec::new();
    go(g, &mut vec![true; g.n()], 0, &mut out);
    out
}

/// Rank over GF(2) of a list of edge masks.
pub fn rank(vectors: &[u64]) -> usize {
    reduce_basis(vectors).len()
}

fn reduce_basis(vectors: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vectors {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

pub fn in_span(vectors: &[u64], x: u64) -> bool {
    rank(vectors) == rank(&[vectors, &[x]].concat())
}

/// Vertex stars, which span the cut space.
pub fn stars(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| edge_mask(g.incident(v).iter().map(|&(_, e)| e))).collect()
}

pub fn all_edges(g: &Graph) -> u64 {
    if g.m() == 64 {
        u64::MAX
    } else {
        (1u64 << g.m()) - 1
    }
}

/// Connected after deleting the vertices in `gone`.
pub fn connected_without(g: &Graph, gone: &[usize]) -> bool {
    let keep: Vec<usize> = (0..g.n()).filter(|v| !gone.contains(v)).collect();
    let Some(&start) = keep.first() else { return true };
    let mut seen = vec![false; g.n()];
    for &v in gone {
        seen[v] = true;
    }
    seen[start] = true;
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &(u, _) in g.incident(v) {
            if !seen[u] {
                seen[u] = true;
                reached += 1;
                stack.push(u);
            }
        }
    }
    reached == keep.len()
}

/// No set of fewer than `k` vertices disconnects `g` (and `g` has more than `k` vertices).
pub fn k_connected_by_deletion(g: &Graph, k: usize) -> bool {
    fn subsets(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == size {
            return f(cur);
        }
        for v in start..n {
            cur.push(v);
            let ok = subsets(n, size, v + 1, cur, f);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    g.n() > k && (0..k).all(|size| subsets(g.n(), size, 0, &mut Vec::new(), &mut |s| connected_without(g, s)))
}

/// Colors form a proper edge coloring whose classes are perfect matchings.
pub fn coloring_is_class_one(g: &Graph, colors: &[usize], pms: &[u64]) -> bool {
    let mut palette = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();
    colors.len() == g.m()
        && palette.iter().all(|&c| {
            let class = edge_mask((0..g.m()).filter(|&e| colors[e] == c));
            pms.contains(&class)
        })
}

pub fn color_count(colors: &[usize]) -> usize {
    let mut palette = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();
    palette.len()
}
