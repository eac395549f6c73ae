//! Per-node resilience metrics built on the core index.
//!
//! A neighbor j supports i at level k when core(j) >= k: losing such a
//! neighbor is what can push i out of the k-core. Core strength counts how
//! many such losses i can absorb at its own level before collapsing.

use std::collections::BTreeSet;

use crate::decomp::CoreIndex;
use crate::error::{Error, Result};
use crate::graph::{Edge, GraphView, NodeId};

/// Neighbors of `i` with core value >= k, ascending.
pub fn supportive_neighbors(
    view: &GraphView,
    index: &CoreIndex,
    i: NodeId,
    k: u32,
) -> Vec<NodeId> {
    view.live_neighbors(i)
        .filter(|&j| index.core(j) >= k)
        .collect()
}

pub fn supportive_count(view: &GraphView, index: &CoreIndex, i: NodeId, k: u32) -> usize {
    view.live_neighbors(i)
        .filter(|&j| index.core(j) >= k)
        .count()
}

/// CS(i) = |SN(i, core(i))| - core(i) + 1: the number of supportive-neighbor
/// losses node i survives at its own core level. Undefined for core 0.
pub fn core_strength(view: &GraphView, index: &CoreIndex, i: NodeId) -> Result<u32> {
    view.graph().require_node(i)?;
    let k = index.core(i);
    if k == 0 {
        return Err(Error::CoreZero(i));
    }
    let sn = supportive_count(view, index, i, k);
    // The core support condition guarantees |SN| >= k while i sits in the
    // k-core, so this never underflows.
    Ok((sn as u32) - k + 1)
}

pub fn is_corona(view: &GraphView, index: &CoreIndex, i: NodeId) -> bool {
    index.core(i) > 0 && matches!(core_strength(view, index, i), Ok(1))
}

/// Nodes with core value exactly k and core strength 1, ascending. These are
/// the weakest members of the k-shell: one lost supporter ejects them.
pub fn corona_nodes(view: &GraphView, index: &CoreIndex, k: u32) -> Vec<NodeId> {
    (0..view.node_count())
        .filter(|&i| index.core(i) == k && matches!(core_strength(view, index, i), Ok(1)))
        .collect()
}

/// A maximal connected set of corona nodes at one core level, together with
/// the live edges that can trigger it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoronaPedigree {
    pub k: u32,
    /// Member corona nodes, ascending.
    pub members: Vec<NodeId>,
    /// Live edges with an endpoint in `members` and both endpoint cores
    /// >= k (each bridges a member to one of its supporters, so removing
    /// any one of them collapses the whole pedigree). Canonical order.
    pub incident_edges: Vec<Edge>,
}

/// The pedigree containing corona node `i`: flood-fill over adjacent corona
/// nodes of the same core value.
pub fn corona_pedigree(view: &GraphView, index: &CoreIndex, i: NodeId) -> Result<CoronaPedigree> {
    view.graph().require_node(i)?;
    if !is_corona(view, index, i) {
        return Err(Error::NotCorona(i));
    }
    let k = index.core(i);
    let mut members = BTreeSet::new();
    let mut stack = vec![i];
    members.insert(i);
    while let Some(u) = stack.pop() {
        for v in view.live_neighbors(u) {
            if index.core(v) == k
                && !members.contains(&v)
                && matches!(core_strength(view, index, v), Ok(1))
            {
                members.insert(v);
                stack.push(v);
            }
        }
    }
    let mut incident = BTreeSet::new();
    for &u in &members {
        for v in view.live_neighbors(u) {
            if index.core(v) >= k {
                incident.insert(Edge::new(u, v));
            }
        }
    }
    Ok(CoronaPedigree {
        k,
        members: members.into_iter().collect(),
        incident_edges: incident.into_iter().collect(),
    })
}

/// All pedigrees at level k; they partition `corona_nodes(k)`.
pub fn corona_pedigrees(view: &GraphView, index: &CoreIndex, k: u32) -> Vec<CoronaPedigree> {
    let mut seen: BTreeSet<NodeId> = BTreeSet::new();
    let mut out = Vec::new();
    for i in corona_nodes(view, index, k) {
        if seen.contains(&i) {
            continue;
        }
        let p = corona_pedigree(view, index, i).expect("corona_nodes yields corona nodes");
        seen.extend(p.members.iter().copied());
        out.push(p);
    }
    out
}

/// Live edges whose removal can touch the k-shell: min endpoint core == k.
/// Canonical order.
pub fn candidate_edges(view: &GraphView, index: &CoreIndex, k: u32) -> Vec<Edge> {
    view.live_edges()
        .filter(|e| {
            let (u, v) = e.endpoints();
            index.core(u).min(index.core(v)) == k
        })
        .collect()
}

/// True iff deleting `e` immediately collapses at least one node: some
/// endpoint must be at core strength 1 (condition i) and the strength and
/// core orderings must not oppose each other (condition ii), which together
/// pin the fragile endpoint as the one actually losing a supporter.
pub fn single_edge_collapse_check(view: &GraphView, index: &CoreIndex, e: Edge) -> Result<bool> {
    let (u, v) = e.endpoints();
    if !view.is_live(e) {
        return Err(Error::UnknownEdge(u, v));
    }
    let cs_u = core_strength(view, index, u)? as i64;
    let cs_v = core_strength(view, index, v)? as i64;
    let c_u = index.core(u) as i64;
    let c_v = index.core(v) as i64;
    Ok(cs_u.min(cs_v) == 1 && (cs_u - cs_v) * (c_u - c_v) >= 0)
}
