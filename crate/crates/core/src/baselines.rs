//! Baseline collapse strategies the targeted solvers are measured against.
//! None of them honors the core-strength removal bound by construction; the
//! greedy and Shapley variants chase global cascade size and can overshoot
//! the target's own cheapest exit.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomp::cascade_after_removal;
use crate::error::Result;
use crate::graph::{Edge, Graph, NodeId};
use crate::metrics::candidate_edges;
use crate::solvers::{CollapseResult, Session};

/// Uniformly random deletion over all live edges, anywhere in the graph.
pub fn red(
    graph: &Graph,
    target: NodeId,
    rng: &mut impl Rng,
    deadline: Option<Instant>,
) -> Result<CollapseResult> {
    let mut s = Session::open(graph, target, deadline)?;
    let mut pool: Vec<Edge> = s.view.live_edges().collect();
    while s.alive() {
        s.check_deadline()?;
        let e = pool.swap_remove(rng.gen_range(0..pool.len()));
        s.remove(e)?;
    }
    Ok(s.close("red"))
}

/// Uniformly random disconnection among the target's own live edges.
pub fn rnd(
    graph: &Graph,
    target: NodeId,
    rng: &mut impl Rng,
    deadline: Option<Instant>,
) -> Result<CollapseResult> {
    let mut s = Session::open(graph, target, deadline)?;
    while s.alive() {
        s.check_deadline()?;
        let nbrs: Vec<NodeId> = s.view.live_neighbors(s.target).collect();
        let v = nbrs[rng.gen_range(0..nbrs.len())];
        s.remove(Edge::new(s.target, v))?;
    }
    Ok(s.close("rnd"))
}

/// Greedy cascade maximization: each round probes every shell edge (min
/// endpoint core equal to the target's level) by cloning the state and
/// removing the one that collapses the most nodes, smallest edge on ties.
/// Optimizes global damage, not the target, so its removal count can exceed
/// the target's core strength.
pub fn knm(graph: &Graph, target: NodeId, deadline: Option<Instant>) -> Result<CollapseResult> {
    let mut s = Session::open(graph, target, deadline)?;
    while s.alive() {
        s.check_deadline()?;
        let e = greedy_shell_pick(&s.view, &s.index, s.k)?
            .expect("a live target keeps at least one shell edge");
        s.remove(e)?;
    }
    Ok(s.close("knm"))
}

/// The shell edge whose removal collapses the most nodes right now, probed
/// by cloning the state; smallest edge on ties, `None` once the shell has no
/// edges left. Target-independent, so sweeps can replay one greedy sequence
/// for every node of the level.
pub(crate) fn greedy_shell_pick(
    view: &crate::graph::GraphView,
    index: &crate::decomp::CoreIndex,
    k: u32,
) -> Result<Option<Edge>> {
    let mut best: Option<(usize, Edge)> = None;
    for e in candidate_edges(view, index, k) {
        let mut pv = view.clone();
        let mut pi = index.clone();
        let gain = cascade_after_removal(&mut pv, &mut pi, e)?.collapsed.len();
        if best.map_or(true, |(bg, be)| gain > bg || (gain == bg && e < be)) {
            best = Some((gain, e));
        }
    }
    Ok(best.map(|(_, e)| e))
}

#[derive(Clone, Copy, Debug)]
pub struct SvOptions {
    pub seed: u64,
    /// Squared additive error ε² the permutation count is sized for:
    /// t = ceil(ln(2·|candidates|) / (2·ε²)).
    pub epsilon_sq: f64,
    /// Re-estimate weights after every removal instead of once up front.
    pub refresh_weights: bool,
    pub deadline: Option<Instant>,
}

impl Default for SvOptions {
    fn default() -> Self {
        SvOptions {
            seed: 0,
            epsilon_sq: 0.1,
            refresh_weights: false,
            deadline: None,
        }
    }
}

/// Shapley-value attack: sample edge permutations, credit each shell edge
/// with the cascade it triggers given the prefix already removed, then
/// delete edges by descending average credit until the target drops out.
pub fn sv(graph: &Graph, target: NodeId, opts: &SvOptions) -> Result<CollapseResult> {
    let mut s = Session::open(graph, target, opts.deadline)?;
    loop {
        if !s.alive() {
            break;
        }
        let order = weighted_order(&s, opts)?;
        for e in order {
            if !s.alive() {
                break;
            }
            s.check_deadline()?;
            s.remove(e)?;
            if opts.refresh_weights {
                break;
            }
        }
        if !opts.refresh_weights {
            // Shell edges include every supporter edge of the target, so
            // walking the full order always collapses it.
            debug_assert!(!s.alive());
            break;
        }
    }
    Ok(s.close("sv"))
}

fn weighted_order(s: &Session, opts: &SvOptions) -> Result<Vec<Edge>> {
    shell_weight_order(&s.view, &s.index, s.k, opts.epsilon_sq, opts.seed, opts.deadline)
}

/// Current shell edges sorted by estimated Shapley weight, descending,
/// smallest edge on ties. Permutation `p` draws from stream `p` of the
/// seeded generator so the estimate is stable under thread counts. The
/// ordering only depends on the shell level, not on any target, which is
/// what lets sweeps share it across every node of the level.
pub(crate) fn shell_weight_order(
    view: &crate::graph::GraphView,
    index: &crate::decomp::CoreIndex,
    k: u32,
    epsilon_sq: f64,
    seed: u64,
    deadline: Option<Instant>,
) -> Result<Vec<Edge>> {
    let started = Instant::now();
    let candidates = candidate_edges(view, index, k);
    let n = candidates.len();
    let t = ((2.0 * n as f64).ln() / (2.0 * epsilon_sq)).ceil() as usize;
    let t = t.max(1);
    let mut weight = vec![0.0f64; n];
    let mut perm: Vec<usize> = (0..n).collect();
    for p in 0..t {
        if let Some(d) = deadline {
            if Instant::now() > d {
                return Err(crate::error::Error::Timeout(started.elapsed().as_secs_f64()));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(p as u64);
        perm.shuffle(&mut rng);
        let mut view = view.clone();
        let mut index = index.clone();
        for &ci in &perm {
            let e = candidates[ci];
            let (a, b) = e.endpoints();
            let level = index.core(a).min(index.core(b));
            let collapsed = cascade_after_removal(&mut view, &mut index, e)?.collapsed.len();
            if level == k {
                weight[ci] += collapsed as f64;
            }
        }
    }
    let mut order: Vec<(f64, Edge)> = weight
        .iter()
        .zip(&candidates)
        .map(|(&w, &e)| (w / t as f64, e))
        .collect();
    order.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
    Ok(order.into_iter().map(|(_, e)| e).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::verify_collapse;

    fn seeded(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn rnd_strips_a_star_center_spoke_by_spoke() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let r = rnd(&g, 0, &mut seeded(1), None).unwrap();
        assert_eq!(r.nr, 3);
        assert_eq!(r.trace, vec![3, 2, 1, 0]);
        assert!(r.removed.iter().all(|e| {
            let (u, _) = e.endpoints();
            u == 0
        }));
    }

    #[test]
    fn red_fells_a_triangle_with_any_single_edge() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]);
        let r = red(&g, 0, &mut seeded(3), None).unwrap();
        assert_eq!(r.nr, 1);
        assert!(verify_collapse(&g, 0, &r.removed).unwrap());
    }

    #[test]
    fn red_is_seed_deterministic_and_may_waste_removals() {
        // Triangle target plus a far-away square: uniform edge picks can land
        // in the square, so the removal count may exceed what the target
        // needs.
        let g = Graph::from_edges(
            7,
            &[(0, 1), (0, 2), (1, 2), (3, 4), (4, 5), (5, 6), (3, 6)],
        );
        let a = red(&g, 0, &mut seeded(11), None).unwrap();
        let b = red(&g, 0, &mut seeded(11), None).unwrap();
        assert_eq!(a.removed, b.removed);
        assert!(verify_collapse(&g, 0, &a.removed).unwrap());
    }

    #[test]
    fn knm_chases_the_bigger_cascade_and_overshoots_the_target() {
        // Target 0 sits on a triangle (core strength 1); the disjoint square
        // offers a larger cascade, so the greedy spends a removal there
        // first. This is the documented NR > CS behavior.
        let g = Graph::from_edges(
            7,
            &[(0, 1), (0, 2), (1, 2), (3, 4), (4, 5), (5, 6), (3, 6)],
        );
        let r = knm(&g, 0, None).unwrap();
        assert_eq!(r.removed, vec![Edge::new(3, 4), Edge::new(0, 1)]);
        assert_eq!(r.nr, 2);
        assert!(verify_collapse(&g, 0, &r.removed).unwrap());
    }

    #[test]
    fn knm_breaks_ties_toward_the_smallest_edge() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let r = knm(&g, 0, None).unwrap();
        assert_eq!(
            r.removed,
            vec![Edge::new(0, 1), Edge::new(0, 2), Edge::new(0, 3)]
        );
    }

    #[test]
    fn sv_needs_one_edge_on_k4_and_is_deterministic() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let a = sv(&g, 0, &SvOptions::default()).unwrap();
        let b = sv(&g, 0, &SvOptions::default()).unwrap();
        assert_eq!(a.nr, 1);
        assert_eq!(a.removed, b.removed);
        assert!(verify_collapse(&g, 0, &a.removed).unwrap());
    }

    #[test]
    fn sv_collapses_a_path_interior() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let r = sv(&g, 1, &SvOptions::default()).unwrap();
        assert_eq!(r.nr, 2);
        assert!(verify_collapse(&g, 1, &r.removed).unwrap());
    }

    #[test]
    fn sv_refresh_mode_also_terminates() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (2, 4)]);
        let opts = SvOptions {
            refresh_weights: true,
            ..SvOptions::default()
        };
        let r = sv(&g, 2, &opts).unwrap();
        assert!(verify_collapse(&g, 2, &r.removed).unwrap());
    }
}
