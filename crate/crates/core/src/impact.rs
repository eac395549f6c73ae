//! Collapse-impact scoring: given a corona node, which nodes follow it down
//! and how many of them sit next to the target.
//!
//! The simulation never mutates the view. It plays the threshold cascade
//! implied by core strength: a node follows once it has lost CS(v) same-core
//! supporters, and every follower charges one loss to each same-core
//! supportive neighbor. Tallies are tracked per node; a node that already
//! followed is skipped when popped again.

use std::collections::{BTreeSet, HashMap};

use crate::decomp::CoreIndex;
use crate::error::{Error, Result};
use crate::graph::{GraphView, NodeId};
use crate::metrics::{core_strength, is_corona};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImpactReport {
    pub target: NodeId,
    pub seed: NodeId,
    /// Nodes predicted to leave the k-shell if the seed collapses, ascending.
    pub followed: Vec<NodeId>,
    /// Nodes that lose at least one supporter in the process, ascending.
    pub influenced: Vec<NodeId>,
    /// |followed ∩ N(target)| — the score the solvers rank seeds by.
    pub followed_in_nbhd: usize,
    pub influenced_in_nbhd: usize,
}

/// Simulate the cascade unleashed by collapsing corona node `seed` and
/// report its reach into the neighborhood of `target`.
pub fn calculate_impact(
    view: &GraphView,
    index: &CoreIndex,
    target: NodeId,
    seed: NodeId,
) -> Result<ImpactReport> {
    view.graph().require_node(target)?;
    view.graph().require_node(seed)?;
    if !is_corona(view, index, seed) {
        return Err(Error::NotCorona(seed));
    }

    let mut cs_memo: HashMap<NodeId, u32> = HashMap::new();
    let mut tally: HashMap<NodeId, u32> = HashMap::new();
    let mut followed: BTreeSet<NodeId> = BTreeSet::new();
    let mut influenced: BTreeSet<NodeId> = BTreeSet::new();
    let mut stack: Vec<NodeId> = vec![seed];

    while let Some(u) = stack.pop() {
        if followed.contains(&u) {
            continue;
        }
        let t = tally.entry(u).or_insert(0);
        *t += 1;
        let t = *t;
        influenced.insert(u);
        let cs_u = *cs_memo
            .entry(u)
            .or_insert_with(|| core_strength(view, index, u).expect("core > 0 in shell"));
        if cs_u <= t {
            followed.insert(u);
            // Charge the loss of u to its same-core supportive neighbors
            // that have not reached their threshold yet; ascending push so
            // ties pop deterministically.
            let k = index.core(u);
            let mut pushes: Vec<NodeId> = view
                .live_neighbors(u)
                .filter(|&v| index.core(v) == k && !followed.contains(&v))
                .filter(|&v| {
                    let cs_v = *cs_memo
                        .entry(v)
                        .or_insert_with(|| core_strength(view, index, v).expect("core > 0"));
                    cs_v > tally.get(&v).copied().unwrap_or(0)
                })
                .collect();
            pushes.sort_unstable();
            stack.extend(pushes);
        }
    }

    let nbhd: BTreeSet<NodeId> = view.live_neighbors(target).collect();
    let followed_in_nbhd = followed.intersection(&nbhd).count();
    let influenced_in_nbhd = influenced.intersection(&nbhd).count();
    Ok(ImpactReport {
        target,
        seed,
        followed: followed.into_iter().collect(),
        influenced: influenced.into_iter().collect(),
        followed_in_nbhd,
        influenced_in_nbhd,
    })
}
