//! Exact minimum-removal oracle: brute-force subset search, independent of
//! the incremental cascade machinery so it can arbitrate disputes.
//!
//! Membership after a trial removal is recomputed from scratch by peeling
//! the induced subgraph of the original k-core (removals never add nodes to
//! a core, so nothing outside it matters).

use std::collections::HashMap;
use std::time::Instant;

use crate::decomp::{compute_cores, CoreIndex};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, GraphView, NodeId};
use crate::metrics::{candidate_edges, core_strength};
use crate::solvers::CollapseResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateMode {
    /// Only edges with min endpoint core == k, restricted to the target's
    /// connected component of the k-core. No other removal can reach the
    /// target, so the search space shrinks without losing minimality.
    Reduced,
    /// Every live edge. Exists to validate the reduction.
    Full,
}

impl CandidateMode {
    fn method_name(self) -> &'static str {
        match self {
            CandidateMode::Reduced => "oracle-reduced",
            CandidateMode::Full => "oracle-full",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    /// Largest subset cardinality to try.
    pub size_cap: usize,
    /// Maximum number of subset evaluations before giving up.
    pub budget: u64,
    pub deadline: Option<Instant>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            size_cap: 4,
            budget: 10_000_000,
            deadline: None,
        }
    }
}

/// Minimum-cardinality edge set whose removal drops the target's core value,
/// found by enumerating subsets in increasing cardinality and lexicographic
/// order (so the witness is reproducible). Errors rather than guessing when
/// the budget or size cap is exhausted.
pub fn exact_nr(
    graph: &Graph,
    target: NodeId,
    mode: CandidateMode,
    opts: &OracleOptions,
) -> Result<CollapseResult> {
    graph.require_node(target)?;
    let started = Instant::now();
    let view = GraphView::new(graph);
    let index = compute_cores(&view);
    let k = index.core(target);
    if k == 0 {
        return Err(Error::TargetIsolated(target));
    }
    let cs = core_strength(&view, &index, target)? as usize;

    let candidates: Vec<Edge> = match mode {
        CandidateMode::Reduced => {
            let comp = core_component(&view, &index, target, k);
            candidate_edges(&view, &index, k)
                .into_iter()
                .filter(|e| comp.contains_key(&e.endpoints().0))
                .collect()
        }
        CandidateMode::Full => view.live_edges().collect(),
    };

    let sub = ShellSubgraph::build(&view, &index, k);
    let max_m = cs.min(opts.size_cap).min(candidates.len());
    let mut evaluated: u64 = 0;
    let mut scratch = sub.scratch();

    for m in 1..=max_m {
        let mut combo: Vec<usize> = (0..m).collect();
        loop {
            evaluated += 1;
            if evaluated > opts.budget {
                return Err(Error::OracleInfeasible {
                    reason: format!(
                        "budget of {} subset evaluations exhausted at cardinality {m}",
                        opts.budget
                    ),
                });
            }
            if evaluated % 4096 == 0 {
                if let Some(deadline) = opts.deadline {
                    if Instant::now() > deadline {
                        return Err(Error::Timeout(started.elapsed().as_secs_f64()));
                    }
                }
            }
            let subset: Vec<Edge> = combo.iter().map(|&i| candidates[i]).collect();
            if !sub.survives(&mut scratch, target, &subset) {
                return Ok(assemble_result(
                    graph,
                    target,
                    k,
                    mode.method_name(),
                    subset,
                    started,
                ));
            }
            // Advance the combination odometer; lexicographic order.
            let n = candidates.len();
            let mut j = m;
            while j > 0 && combo[j - 1] == n - m + (j - 1) {
                j -= 1;
            }
            if j == 0 {
                break;
            }
            combo[j - 1] += 1;
            for l in j..m {
                combo[l] = combo[l - 1] + 1;
            }
        }
    }

    Err(Error::OracleInfeasible {
        reason: format!(
            "no witness within size cap {} (core strength {cs}, {} candidates)",
            opts.size_cap,
            candidates.len()
        ),
    })
}

/// Replay `edges` on a fresh view and recompute cores from scratch; true iff
/// the target's core value dropped. Errors if some edge is unknown, dead, or
/// repeated.
pub fn verify_collapse(graph: &Graph, target: NodeId, edges: &[Edge]) -> Result<bool> {
    graph.require_node(target)?;
    let mut view = GraphView::new(graph);
    let before = compute_cores(&view).core(target);
    for &e in edges {
        view.delete_edge(e).map_err(|_| Error::InvalidReplay(e))?;
    }
    Ok(compute_cores(&view).core(target) < before)
}

/// Connected component of `target` inside the k-core (adjacency restricted
/// to live edges between nodes of core >= k), as node -> subindex.
fn core_component(
    view: &GraphView,
    index: &CoreIndex,
    target: NodeId,
    k: u32,
) -> HashMap<NodeId, usize> {
    let mut comp = HashMap::new();
    comp.insert(target, 0);
    let mut stack = vec![target];
    while let Some(u) = stack.pop() {
        for v in view.live_neighbors(u) {
            if index.core(v) >= k && !comp.contains_key(&v) {
                let idx = comp.len();
                comp.insert(v, idx);
                stack.push(v);
            }
        }
    }
    comp
}

/// CSR snapshot of the k-core's induced subgraph, reused across subset
/// evaluations.
struct ShellSubgraph {
    k: usize,
    ids: HashMap<NodeId, usize>,
    offsets: Vec<usize>,
    nbrs: Vec<usize>,
    base_deg: Vec<usize>,
}

struct Scratch {
    deg: Vec<usize>,
    dead: Vec<bool>,
    queue: Vec<usize>,
}

impl ShellSubgraph {
    fn build(view: &GraphView, index: &CoreIndex, k: u32) -> ShellSubgraph {
        let members: Vec<NodeId> =
            (0..view.node_count()).filter(|&i| index.core(i) >= k).collect();
        let ids: HashMap<NodeId, usize> =
            members.iter().enumerate().map(|(s, &n)| (n, s)).collect();
        let mut offsets = vec![0usize; members.len() + 1];
        let mut nbrs = Vec::new();
        for (s, &n) in members.iter().enumerate() {
            for v in view.live_neighbors(n) {
                if let Some(&sv) = ids.get(&v) {
                    nbrs.push(sv);
                }
            }
            offsets[s + 1] = nbrs.len();
        }
        let base_deg = (0..members.len())
            .map(|s| offsets[s + 1] - offsets[s])
            .collect();
        ShellSubgraph {
            k: k as usize,
            ids,
            offsets,
            nbrs,
            base_deg,
        }
    }

    fn scratch(&self) -> Scratch {
        Scratch {
            deg: vec![0; self.base_deg.len()],
            dead: vec![false; self.base_deg.len()],
            queue: Vec::new(),
        }
    }

    /// Peel the shell subgraph minus `removed` at level k; true iff the
    /// target stays. Removed edges touching nodes outside the shell cannot
    /// affect the outcome and are ignored.
    fn survives(&self, scratch: &mut Scratch, target: NodeId, removed: &[Edge]) -> bool {
        let target = self.ids[&target];
        let removed_sub: Vec<(usize, usize)> = removed
            .iter()
            .filter_map(|e| {
                let (a, b) = e.endpoints();
                match (self.ids.get(&a), self.ids.get(&b)) {
                    (Some(&sa), Some(&sb)) => Some((sa.min(sb), sa.max(sb))),
                    _ => None,
                }
            })
            .collect();

        scratch.deg.copy_from_slice(&self.base_deg);
        scratch.dead.iter_mut().for_each(|d| *d = false);
        scratch.queue.clear();
        for &(a, b) in &removed_sub {
            scratch.deg[a] -= 1;
            scratch.deg[b] -= 1;
        }
        for s in 0..scratch.deg.len() {
            if scratch.deg[s] < self.k {
                scratch.dead[s] = true;
                scratch.queue.push(s);
            }
        }
        let is_removed = |a: usize, b: usize| {
            let key = (a.min(b), a.max(b));
            removed_sub.iter().any(|&p| p == key)
        };
        while let Some(x) = scratch.queue.pop() {
            if x == target {
                return false;
            }
            for i in self.offsets[x]..self.offsets[x + 1] {
                let y = self.nbrs[i];
                if scratch.dead[y] || is_removed(x, y) {
                    continue;
                }
                scratch.deg[y] -= 1;
                if scratch.deg[y] < self.k {
                    scratch.dead[y] = true;
                    scratch.queue.push(y);
                }
            }
        }
        true
    }
}

fn assemble_result(
    graph: &Graph,
    target: NodeId,
    k: u32,
    method: &str,
    removed: Vec<Edge>,
    started: Instant,
) -> CollapseResult {
    // Trace via scratch recomputation to stay independent of the cascade.
    let mut view = GraphView::new(graph);
    let index = compute_cores(&view);
    let mut trace = vec![crate::metrics::supportive_count(&view, &index, target, k)];
    for &e in &removed {
        view.delete_edge(e).expect("witness edges are live");
        let index = compute_cores(&view);
        trace.push(crate::metrics::supportive_count(&view, &index, target, k));
    }
    CollapseResult {
        target,
        method: method.to_owned(),
        k,
        nr: removed.len(),
        removed,
        trace,
        wall_time: started.elapsed(),
    }
}
