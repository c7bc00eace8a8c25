//! Inputs shared by the benchmarks.

use nfstar_core::constructions::petersen;
use nfstar_core::{families, Graph};

/// Named graphs of increasing size used across benchmark groups.
pub fn fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("k4", families::complete(4)),
        ("c12", families::cycle(12)),
        ("cube", families::hypercube(3)),
        ("petersen", petersen()),
        ("k44", families::complete_bipartite(4, 4)),
        ("k6", families::complete(6)),
    ]
}
