//! Targeted collapse heuristics. Both solvers peel the target out of its
//! k-core by repeated single-edge removals and share the invariant that the
//! number of removals never exceeds the target's initial core strength:
//! every removal strips at least one supporter, and core strength counts
//! exactly how many the target can spare.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decomp::{cascade_after_removal, compute_cores, CoreIndex};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, GraphView, NodeId};
use crate::impact::calculate_impact;
use crate::metrics::{
    core_strength, corona_pedigrees, is_corona, supportive_count, supportive_neighbors,
};

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub seed: u64,
    /// When the adaptive solver falls back to direct disconnection, pick the
    /// supporters in random order instead of cheapest-first.
    pub atnc_random_fallback: bool,
    pub deadline: Option<Instant>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: 0,
            atnc_random_fallback: false,
            deadline: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CollapseResult {
    pub target: NodeId,
    pub method: String,
    /// Core value the target was ejected from.
    pub k: u32,
    pub removed: Vec<Edge>,
    pub nr: usize,
    /// Supporter count of the target after 0, 1, .., nr removals.
    pub trace: Vec<usize>,
    #[serde(serialize_with = "crate::serialize_secs")]
    pub wall_time: Duration,
}

/// Shared solver bookkeeping: live view, incrementally repaired core index,
/// and the removal/trace log. Also used by the baseline strategies.
pub(crate) struct Session<'g> {
    pub(crate) view: GraphView<'g>,
    pub(crate) index: CoreIndex,
    pub(crate) target: NodeId,
    pub(crate) k: u32,
    removed: Vec<Edge>,
    trace: Vec<usize>,
    started: Instant,
    deadline: Option<Instant>,
}

impl<'g> Session<'g> {
    pub(crate) fn open(
        graph: &'g Graph,
        target: NodeId,
        deadline: Option<Instant>,
    ) -> Result<Session<'g>> {
        graph.require_node(target)?;
        let view = GraphView::new(graph);
        let index = compute_cores(&view);
        let k = index.core(target);
        if k == 0 {
            return Err(Error::TargetIsolated(target));
        }
        let trace = vec![supportive_count(&view, &index, target, k)];
        Ok(Session {
            view,
            index,
            target,
            k,
            removed: Vec::new(),
            trace,
            started: Instant::now(),
            deadline,
        })
    }

    pub(crate) fn alive(&self) -> bool {
        self.index.core(self.target) >= self.k
    }

    pub(crate) fn check_deadline(&self) -> Result<()> {
        if let Some(d) = self.deadline {
            if Instant::now() > d {
                return Err(Error::Timeout(self.started.elapsed().as_secs_f64()));
            }
        }
        Ok(())
    }

    pub(crate) fn remove(&mut self, e: Edge) -> Result<()> {
        cascade_after_removal(&mut self.view, &mut self.index, e)?;
        self.removed.push(e);
        self.trace
            .push(supportive_count(&self.view, &self.index, self.target, self.k));
        Ok(())
    }

    pub(crate) fn close(self, method: &str) -> CollapseResult {
        CollapseResult {
            target: self.target,
            method: method.to_owned(),
            k: self.k,
            nr: self.removed.len(),
            removed: self.removed,
            trace: self.trace,
            wall_time: self.started.elapsed(),
        }
    }
}

/// Pedigree-guided collapse. Each round scores every corona pedigree of the
/// target's level by simulating the cascade its collapse would trigger, then
/// removes one edge of the pedigree that drags the most of the target's
/// neighborhood down with it. When no pedigree reaches the target, one
/// supporter is disconnected directly.
pub fn tnc(graph: &Graph, target: NodeId, opts: &SolveOptions) -> Result<CollapseResult> {
    let mut s = Session::open(graph, target, opts.deadline)?;
    while s.alive() {
        s.check_deadline()?;
        let mut best: Option<(usize, usize, NodeId, Edge)> = None;
        for p in corona_pedigrees(&s.view, &s.index, s.k) {
            let rep = p.members[0];
            let imp = calculate_impact(&s.view, &s.index, s.target, rep)?;
            let (f, i) = (imp.followed_in_nbhd, imp.influenced_in_nbhd);
            let better = match best {
                None => true,
                Some((bf, bi, brep, _)) => {
                    f > bf || (f == bf && (i > bi || (i == bi && rep < brep)))
                }
            };
            if better {
                best = Some((f, i, rep, p.incident_edges[0]));
            }
        }
        match best {
            Some((f, _, _, edge)) if f > 0 => s.remove(edge)?,
            _ => {
                // No pedigree cascade reaches the target's neighborhood;
                // cut the cheapest supporter loose instead.
                let sn = supportive_neighbors(&s.view, &s.index, s.target, s.k);
                let pick = sn
                    .into_iter()
                    .min_by_key(|&v| (core_strength(&s.view, &s.index, v).unwrap_or(u32::MAX), v))
                    .expect("a live target has at least k supporters");
                s.remove(Edge::new(s.target, pick))?;
            }
        }
    }
    Ok(s.close("tnc"))
}

/// Neighborhood-first variant: only corona nodes adjacent to the target are
/// scored (one representative per pedigree), and the removed edge is always
/// incident to the target. With no adjacent corona, all supporters beyond
/// what the core requires are disconnected in one batch.
pub fn atnc(graph: &Graph, target: NodeId, opts: &SolveOptions) -> Result<CollapseResult> {
    let mut s = Session::open(graph, target, opts.deadline)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    while s.alive() {
        s.check_deadline()?;
        let corona_nbrs: Vec<NodeId> = {
            let mut v: Vec<NodeId> = s
                .view
                .live_neighbors(s.target)
                .filter(|&v| s.index.core(v) == s.k && is_corona(&s.view, &s.index, v))
                .collect();
            v.sort_unstable();
            v
        };
        if corona_nbrs.is_empty() {
            batch_disconnect(&mut s, opts.atnc_random_fallback, &mut rng)?;
            continue;
        }
        let mut covered: std::collections::HashSet<NodeId> = Default::default();
        let mut best: Option<(usize, usize, NodeId)> = None;
        for &v in &corona_nbrs {
            if covered.contains(&v) {
                continue;
            }
            let p = crate::metrics::corona_pedigree(&s.view, &s.index, v)?;
            covered.extend(p.members.iter().copied());
            let imp = calculate_impact(&s.view, &s.index, s.target, v)?;
            let (f, i) = (imp.followed_in_nbhd, imp.influenced_in_nbhd);
            let better = match best {
                None => true,
                Some((bf, bi, bv)) => f > bf || (f == bf && (i > bi || (i == bi && v < bv))),
            };
            if better {
                best = Some((f, i, v));
            }
        }
        let (_, _, pick) = best.expect("corona_nbrs is non-empty");
        s.remove(Edge::new(s.target, pick))?;
    }
    Ok(s.close("atnc"))
}

/// Disconnect supporters until the target falls out of its core. The
/// snapshot taken up front suffices: supporters never reappear, so cutting
/// core-strength many of them is always enough.
fn batch_disconnect(s: &mut Session, random: bool, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut sn = supportive_neighbors(&s.view, &s.index, s.target, s.k);
    if random {
        sn.shuffle(rng);
    } else {
        sn.sort_by_key(|&v| (core_strength(&s.view, &s.index, v).unwrap_or(u32::MAX), v));
    }
    for v in sn {
        if !s.alive() {
            break;
        }
        // A cascade may have taken this supporter down already.
        if s.index.core(v) < s.k || !s.view.is_live(Edge::new(s.target, v)) {
            continue;
        }
        s.remove(Edge::new(s.target, v))?;
    }
    Ok(())
}
