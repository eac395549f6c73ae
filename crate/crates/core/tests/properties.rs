//! Randomized structural checks: the library's incremental and heuristic
//! machinery is held against naive recomputation and against the few
//! invariants that are provable for every input.

mod common;

use common::{live_pairs, naive_cores};
use proptest::prelude::*;

use kcollapse::baselines::SvOptions;
use kcollapse::decomp::{cascade_after_removal, compute_cores};
use kcollapse::eval::{self, war, Method, SingleOptions, SweepOptions};
use kcollapse::graph::{Graph, GraphView, ParseOptions};
use kcollapse::metrics::{
    core_strength, corona_nodes, corona_pedigrees, single_edge_collapse_check,
};
use kcollapse::oracle::{exact_nr, verify_collapse, CandidateMode, OracleOptions};
use kcollapse::solvers::SolveOptions;

/// Random simple graph: n nodes, a random subset of the possible edges.
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        proptest::sample::subsequence(pairs, 0..=m)
            .prop_map(move |chosen| Graph::from_edges(n, &chosen))
    })
}

fn cores_of(g: &Graph) -> Vec<u32> {
    let view = GraphView::new(g);
    let index = compute_cores(&view);
    (0..g.node_count()).map(|i| index.core(i)).collect()
}

proptest! {
    #[test]
    fn cores_match_naive_reference(g in arb_graph(16)) {
        let pairs: Vec<_> = g.edges().map(|e| e.endpoints()).collect();
        prop_assert_eq!(cores_of(&g), naive_cores(g.node_count(), &pairs));
    }

    #[test]
    fn parse_round_trips_canonical_form(g in arb_graph(12)) {
        prop_assume!(g.edge_count() > 0);
        let text = g.to_canonical_edge_list();
        let (back, stats) = Graph::parse(&text, &ParseOptions::default()).unwrap();
        prop_assert_eq!(stats.self_loops + stats.duplicates, 0);
        prop_assert_eq!(back.to_canonical_edge_list(), text);
    }

    #[test]
    fn cascade_repair_equals_full_recompute(
        g in arb_graph(12),
        picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..8),
    ) {
        let mut view = GraphView::new(&g);
        let mut index = compute_cores(&view);
        for pick in picks {
            let live: Vec<_> = view.live_edges().collect();
            if live.is_empty() {
                break;
            }
            let e = live[pick.index(live.len())];
            let before: Vec<u32> = (0..g.node_count()).map(|i| index.core(i)).collect();
            let report = cascade_after_removal(&mut view, &mut index, e).unwrap();

            // the repaired index must equal recomputation from scratch
            let fresh = compute_cores(&view);
            for i in 0..g.node_count() {
                prop_assert_eq!(index.core(i), fresh.core(i));
            }
            // and the report must name exactly the nodes that moved,
            // each starting at the edge's level and dropping by one
            let mut changed: Vec<usize> = Vec::new();
            for i in 0..g.node_count() {
                if fresh.core(i) != before[i] {
                    changed.push(i);
                    prop_assert_eq!(before[i], report.k);
                    prop_assert_eq!(fresh.core(i), before[i] - 1);
                }
            }
            prop_assert_eq!(&changed, &report.collapsed);
            // independent cross-check of the recomputation itself
            prop_assert_eq!(
                (0..g.node_count()).map(|i| fresh.core(i)).collect::<Vec<_>>(),
                naive_cores(g.node_count(), &live_pairs(&view))
            );
        }
    }

    #[test]
    fn pedigrees_partition_corona_and_collapse_wholesale(g in arb_graph(12)) {
        let view = GraphView::new(&g);
        let index = compute_cores(&view);
        for k in 1..=index.max_core() {
            let corona = corona_nodes(&view, &index, k);
            let peds = corona_pedigrees(&view, &index, k);
            let mut members: Vec<_> =
                peds.iter().flat_map(|p| p.members.iter().copied()).collect();
            members.sort_unstable();
            prop_assert_eq!(&members, &corona); // partition, no overlap, no gaps
            for p in &peds {
                for &e in &p.incident_edges {
                    let mut cut = view.clone();
                    cut.delete_edge(e).unwrap();
                    let after = compute_cores(&cut);
                    for &m in &p.members {
                        prop_assert!(
                            after.core(m) < k,
                            "pedigree member {} survived removal of {}", m, e
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn single_edge_check_agrees_with_ground_truth(g in arb_graph(14)) {
        let view = GraphView::new(&g);
        let index = compute_cores(&view);
        for e in g.edges() {
            let predicted = single_edge_collapse_check(&view, &index, e).unwrap();
            let mut cut = view.clone();
            cut.delete_edge(e).unwrap();
            let after = compute_cores(&cut);
            let truth = (0..g.node_count()).any(|i| after.core(i) != index.core(i));
            prop_assert_eq!(predicted, truth, "edge {} predicted {}", e, predicted);
        }
    }

    #[test]
    fn every_method_produces_a_valid_collapse_set(g in arb_graph(10), seed in any::<u64>()) {
        let view = GraphView::new(&g);
        let index = compute_cores(&view);
        let single = SingleOptions { seed, ..SingleOptions::default() };
        for target in 0..g.node_count() {
            if index.core(target) == 0 {
                continue;
            }
            let cs = core_strength(&view, &index, target).unwrap() as usize;
            for method in Method::ALL {
                let r = eval::collapse_one(&g, target, method, &single).unwrap();
                prop_assert_eq!(r.nr, r.removed.len());
                prop_assert!(r.nr >= 1);
                prop_assert!(
                    verify_collapse(&g, target, &r.removed).unwrap(),
                    "{} left {} standing", method, target
                );
                // the trace walks supporter counts down, never up
                prop_assert!(r.trace.windows(2).all(|w| w[1] <= w[0]));
                prop_assert_eq!(r.trace.len(), r.nr + 1);
                // the cheap budget bounds the solvers that aim for it;
                // the global baselines may overshoot by design
                if matches!(method, Method::Tnc | Method::Atnc) {
                    prop_assert!(r.nr <= cs, "{}: nr {} > cs {}", method, r.nr, cs);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_candidate_reduction_is_lossless(g in arb_graph(9)) {
        let view = GraphView::new(&g);
        let index = compute_cores(&view);
        let opts = OracleOptions { size_cap: 9, ..OracleOptions::default() };
        for target in 0..g.node_count() {
            if index.core(target) < 2 {
                continue;
            }
            let cs = core_strength(&view, &index, target).unwrap() as usize;
            let reduced = exact_nr(&g, target, CandidateMode::Reduced, &opts).unwrap();
            let full = exact_nr(&g, target, CandidateMode::Full, &opts).unwrap();
            prop_assert_eq!(reduced.nr, full.nr);
            prop_assert!(reduced.nr >= 1 && reduced.nr <= cs);
            prop_assert!(verify_collapse(&g, target, &reduced.removed).unwrap());
        }
    }

    #[test]
    fn heuristics_never_beat_the_oracle(g in arb_graph(8)) {
        let view = GraphView::new(&g);
        let index = compute_cores(&view);
        let opts = OracleOptions { size_cap: 8, ..OracleOptions::default() };
        for target in 0..g.node_count() {
            if index.core(target) == 0 {
                continue;
            }
            let best = exact_nr(&g, target, CandidateMode::Reduced, &opts).unwrap().nr;
            let tnc = kcollapse::solvers::tnc(&g, target, &SolveOptions::default()).unwrap();
            let atnc = kcollapse::solvers::atnc(&g, target, &SolveOptions::default()).unwrap();
            let knm = kcollapse::baselines::knm(&g, target, None).unwrap();
            let sv = kcollapse::baselines::sv(&g, target, &SvOptions::default()).unwrap();
            for r in [tnc, atnc, knm, sv] {
                prop_assert!(r.nr >= best, "{} undercut the oracle: {} < {}", r.method, r.nr, best);
            }
        }
    }

    #[test]
    fn war_ignores_count_scaling(
        spec in proptest::collection::vec((1u32..=5, 1usize..=4), 0..=4),
        scale in 2usize..=4,
    ) {
        let base: Vec<f64> = spec
            .iter()
            .flat_map(|&(v, c)| std::iter::repeat(v as f64).take(c))
            .collect();
        let scaled: Vec<f64> = spec
            .iter()
            .flat_map(|&(v, c)| std::iter::repeat(v as f64).take(c * scale))
            .collect();
        prop_assert!((war(&base) - war(&scaled)).abs() < 1e-9);
    }

    #[test]
    fn sweep_aggregates_match_row_recomputation(g in arb_graph(9), seed in any::<u64>()) {
        let opts = SweepOptions {
            methods: vec![Method::Tnc, Method::Rnd],
            seed,
            runs: 2,
            ..SweepOptions::default()
        };
        let report = eval::sweep(&g, &opts).unwrap();
        for m in &report.methods {
            let total_cs = m.rows.iter().fold(0.0, |a, r| a + r.cs as f64);
            let mut reductions = Vec::new();
            for row in &m.rows {
                if let Some(nr) = row.nr {
                    if (row.cs as f64) > nr {
                        reductions.push(row.cs as f64 - nr);
                    }
                }
            }
            let src = reductions.iter().fold(0.0, |a, b| a + b);
            prop_assert_eq!(m.aggregates.nbn, reductions.len());
            prop_assert_eq!(m.aggregates.src, src);
            prop_assert_eq!(m.aggregates.war, war(&reductions));
            let rp = if total_cs > 0.0 { src / total_cs * 100.0 } else { 0.0 };
            prop_assert_eq!(m.aggregates.rp, rp);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sweeps_are_reproducible(g in arb_graph(9), seed in any::<u64>()) {
        let opts = SweepOptions {
            methods: vec![Method::Tnc, Method::Red, Method::Sv],
            seed,
            runs: 2,
            ..SweepOptions::default()
        };
        let a = eval::normalized(&eval::sweep(&g, &opts).unwrap());
        let b = eval::normalized(&eval::sweep(&g, &opts).unwrap());
        prop_assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}

#[test]
fn war_of_empty_and_uniform_multisets() {
    assert_eq!(war(&[]), 0.0);
    assert_eq!(war(&[2.0, 2.0, 2.0]), 2.0);
    assert_eq!(war(&[7.0]), 7.0);
}
