//! Core decomposition and incremental maintenance under edge deletion.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Edge, GraphView, NodeId};

/// Core value per node, kept in lockstep with a [`GraphView`] by
/// [`cascade_after_removal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreIndex {
    core: Vec<u32>,
}

impl CoreIndex {
    pub fn core(&self, i: NodeId) -> u32 {
        self.core[i]
    }

    pub fn values(&self) -> &[u32] {
        &self.core
    }

    pub fn len(&self) -> usize {
        self.core.len()
    }

    pub fn is_empty(&self) -> bool {
        self.core.is_empty()
    }

    pub fn max_core(&self) -> u32 {
        self.core.iter().copied().max().unwrap_or(0)
    }
}

/// Full decomposition by bucket peeling: repeatedly retire the minimum-degree
/// node; the degree at retirement (clamped to never decrease) is its core
/// value. Runs in O(V + E).
pub fn compute_cores(view: &GraphView) -> CoreIndex {
    let n = view.node_count();
    let mut deg: Vec<usize> = (0..n).map(|i| view.live_degree(i)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // Bucket sort nodes by degree: vert is the node order, pos the inverse,
    // bin[d] the start offset of degree-d nodes.
    let mut bin = vec![0usize; max_deg + 2];
    for &d in &deg {
        bin[d + 1] += 1;
    }
    for d in 1..bin.len() {
        bin[d] += bin[d - 1];
    }
    let mut vert = vec![0usize; n];
    let mut pos = vec![0usize; n];
    {
        let mut next = bin.clone();
        for v in 0..n {
            pos[v] = next[deg[v]];
            vert[pos[v]] = v;
            next[deg[v]] += 1;
        }
    }

    let mut core = vec![0u32; n];
    for idx in 0..n {
        let v = vert[idx];
        core[v] = deg[v] as u32;
        for u in view.live_neighbors(v) {
            if deg[u] > deg[v] {
                // Swap u with the first node of its degree bucket, then
                // shrink its degree by one.
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw];
                if u != w {
                    vert[pu] = w;
                    vert[pw] = u;
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    CoreIndex { core }
}

/// Nodes of the k-core, i.e. every node with core value >= k.
pub fn kcore_members(index: &CoreIndex, k: u32) -> Vec<NodeId> {
    (0..index.len()).filter(|&i| index.core(i) >= k).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CascadeReport {
    pub edge: Edge,
    /// Core level the removal could affect: min of the endpoint cores.
    pub k: u32,
    /// Nodes whose core value dropped (by exactly one), ascending.
    pub collapsed: Vec<NodeId>,
}

/// Delete `e` from the view and repair the core index incrementally.
///
/// Only nodes whose core value equals min(core(u), core(v)) can change, and
/// each drops by exactly one, so the repair seeds an eviction queue at the
/// min-core endpoints and walks same-core support chains: a node is evicted
/// once its count of live neighbors with core >= k falls below k.
pub fn cascade_after_removal(
    view: &mut GraphView,
    index: &mut CoreIndex,
    e: Edge,
) -> Result<CascadeReport> {
    if index.len() != view.node_count() {
        return Err(Error::InconsistentIndex(index.len(), view.node_count()));
    }
    let (a, b) = e.endpoints();
    let k = index.core(a).min(index.core(b));
    view.delete_edge(e)?;

    // support[y]: live neighbors of y with core >= k, counting evicted
    // nodes until their demotion pass runs (each pass then decrements the
    // already-computed entries exactly once).
    let mut support: HashMap<NodeId, usize> = HashMap::new();
    let mut evicted: HashSet<NodeId> = HashSet::new();
    let mut queue: VecDeque<NodeId> = VecDeque::new();
    let mut collapsed: Vec<NodeId> = Vec::new();

    let support_of = |view: &GraphView, index: &CoreIndex, y: NodeId| {
        view.live_neighbors(y)
            .filter(|&z| index.core(z) >= k)
            .count()
    };

    for w in [a, b] {
        if index.core(w) == k && !evicted.contains(&w) {
            let s = *support
                .entry(w)
                .or_insert_with(|| support_of(view, index, w));
            if s < k as usize {
                evicted.insert(w);
                queue.push_back(w);
            }
        }
    }

    while let Some(x) = queue.pop_front() {
        index.core[x] = k - 1;
        collapsed.push(x);
        let nbrs: Vec<NodeId> = view.live_neighbors(x).collect();
        for y in nbrs {
            if index.core(y) != k || evicted.contains(&y) {
                continue;
            }
            let s = support
                .entry(y)
                .and_modify(|s| *s -= 1)
                .or_insert_with(|| support_of(view, index, y));
            if *s < k as usize {
                evicted.insert(y);
                queue.push_back(y);
            }
        }
    }

    collapsed.sort_unstable();
    Ok(CascadeReport { edge: e, k, collapsed })
}
