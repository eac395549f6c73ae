//! Shared reference implementations for integration tests. Deliberately
//! naive and structurally unlike the library's bucket peeling, so the two
//! can only agree by computing the same thing.

use kcollapse::graph::NodeId;

/// Reference core values: for each k in turn, repeatedly strip nodes with
/// fewer than k remaining neighbors; a node's core value is the largest k
/// it survives. Quadratic per level.
pub fn naive_cores(n: usize, edges: &[(NodeId, NodeId)]) -> Vec<u32> {
    let mut core = vec![0u32; n];
    let mut alive = vec![true; n];
    for k in 1..=n {
        loop {
            let mut deg = vec![0usize; n];
            for &(u, v) in edges {
                if alive[u] && alive[v] {
                    deg[u] += 1;
                    deg[v] += 1;
                }
            }
            let mut changed = false;
            for (i, a) in alive.iter_mut().enumerate() {
                if *a && deg[i] < k {
                    *a = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if !alive.contains(&true) {
            break;
        }
        for (i, &a) in alive.iter().enumerate() {
            if a {
                core[i] = k as u32;
            }
        }
    }
    core
}

/// Live edge pairs of a view, for feeding back into `naive_cores`.
#[allow(dead_code)] // each test binary compiles its own copy of this module
pub fn live_pairs(view: &kcollapse::GraphView) -> Vec<(NodeId, NodeId)> {
    view.live_edges().map(|e| e.endpoints()).collect()
}
