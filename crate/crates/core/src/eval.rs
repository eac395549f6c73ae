//! Whole-graph sweeps and the aggregate metric suite.
//!
//! A sweep runs one or more collapse methods against every non-isolated
//! node and reports, per node, the core value, core strength, and removal
//! count, plus four aggregates over the *bubble nodes* (nodes whose core
//! strength strictly overestimates the removals a method needed):
//!
//! - NBN: how many bubble nodes the method exposed
//! - SRC: total core-strength overestimate, Σ (CS − NR)
//! - WAR: inverse-frequency weighted average of the per-node reductions
//! - RP:  SRC as a percentage of the graph's total core strength

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::baselines;
use crate::decomp::{compute_cores, cascade_after_removal, CoreIndex};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphView, NodeId};
use crate::metrics::core_strength;
use crate::solvers::{self, CollapseResult, SolveOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Method {
    Tnc,
    Atnc,
    Red,
    Rnd,
    Knm,
    Sv,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Tnc,
        Method::Atnc,
        Method::Red,
        Method::Rnd,
        Method::Knm,
        Method::Sv,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Tnc => "tnc",
            Method::Atnc => "atnc",
            Method::Red => "red",
            Method::Rnd => "rnd",
            Method::Knm => "knm",
            Method::Sv => "sv",
        }
    }

    /// True for the methods whose output varies across repeated runs, which
    /// the sweep therefore averages over `runs` seeds.
    pub fn is_stochastic(self) -> bool {
        matches!(self, Method::Red | Method::Rnd)
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Method> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method `{s}`")))
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> serde::Deserialize<'de> for Method {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Method, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub methods: Vec<Method>,
    pub seed: u64,
    /// Repetitions for the stochastic baselines; the reported NR is their
    /// mean.
    pub runs: usize,
    /// Squared additive error ε² sizing the Shapley baseline's permutation
    /// count.
    pub epsilon_sq: f64,
    /// Per-node budget (per shared shell walk for the cached methods).
    pub timeout: Option<Duration>,
    pub threads: Option<usize>,
    /// Randomize the adaptive solver's direct-disconnection order instead of
    /// cutting cheapest-first.
    pub atnc_random_fallback: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            methods: Method::ALL.to_vec(),
            seed: 0,
            runs: 10,
            epsilon_sq: 0.1,
            timeout: Some(Duration::from_secs(60)),
            threads: None,
            atnc_random_fallback: true,
        }
    }
}

#[derive(Clone, Debug, Serialize, serde::Deserialize)]
pub struct NodeRow {
    pub node: NodeId,
    pub label: String,
    pub core: u32,
    pub cs: u32,
    /// Removal count (mean over runs for stochastic methods); `None` when
    /// the node timed out and is excluded from the aggregates.
    pub nr: Option<f64>,
    /// The individual run outcomes behind `nr`.
    pub runs: Vec<usize>,
    pub wall_secs: f64,
}

#[derive(Clone, Copy, Debug, Default, Serialize, serde::Deserialize)]
pub struct Aggregates {
    pub nbn: usize,
    pub src: f64,
    pub war: f64,
    pub rp: f64,
}

/// One method's sweep outcome: per-node rows plus the bubble aggregates.
#[derive(Clone, Debug, Serialize, serde::Deserialize)]
pub struct MetricsReport {
    pub method: Method,
    pub aggregates: Aggregates,
    /// Rows whose node timed out; they carry no NR and sit outside the
    /// aggregates.
    pub incomplete: usize,
    pub wall_secs: f64,
    pub rows: Vec<NodeRow>,
}

#[derive(Clone, Debug, Serialize, serde::Deserialize)]
pub struct SweepReport {
    pub schema_version: String,
    pub nodes: usize,
    pub edges: usize,
    pub max_core: u32,
    pub seed: u64,
    pub runs: usize,
    pub epsilon_sq: f64,
    /// Isolated (core 0) nodes: nothing to collapse, so no row.
    pub skipped_isolated: usize,
    pub methods: Vec<MetricsReport>,
    pub wall_secs: f64,
}

/// Inverse-frequency weighted average of the bubble reductions: each unique
/// reduction value r contributes r/p_r against a total weight of 1/p_r,
/// where p_r is the share of bubble nodes with that value. Rare large
/// reductions therefore dominate. Empty input is defined as 0.
pub fn war(reductions: &[f64]) -> f64 {
    if reductions.is_empty() {
        return 0.0;
    }
    let n = reductions.len() as f64;
    // Group by bit pattern; for the non-negative values seen here the bit
    // order is the numeric order, giving a deterministic summing sequence.
    let mut counts: BTreeMap<u64, (f64, usize)> = BTreeMap::new();
    for &r in reductions {
        counts.entry(r.to_bits()).or_insert((r, 0)).1 += 1;
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for (r, c) in counts.values() {
        let p = *c as f64 / n;
        num += r / p;
        den += 1.0 / p;
    }
    num / den
}

fn aggregates_of(rows: &[NodeRow]) -> Aggregates {
    let total_cs = rows.iter().fold(0.0, |a, r| a + r.cs as f64);
    let mut reductions = Vec::new();
    for row in rows {
        if let Some(nr) = row.nr {
            if (row.cs as f64) > nr {
                reductions.push(row.cs as f64 - nr);
            }
        }
    }
    // fold over +0.0 so an empty slice reports 0.0 instead of the -0.0
    // that `Iterator::sum` produces for empty float iterators
    let src = reductions.iter().fold(0.0, |a, b| a + b);
    Aggregates {
        nbn: reductions.len(),
        src,
        war: war(&reductions),
        rp: if total_cs > 0.0 { src / total_cs * 100.0 } else { 0.0 },
    }
}

pub fn sweep(graph: &Graph, opts: &SweepOptions) -> Result<SweepReport> {
    match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(|| sweep_inner(graph, opts)),
        None => sweep_inner(graph, opts),
    }
}

fn sweep_inner(graph: &Graph, opts: &SweepOptions) -> Result<SweepReport> {
    let started = Instant::now();
    let view = GraphView::new(graph);
    let index = compute_cores(&view);
    let eligible: Vec<NodeId> = (0..graph.node_count())
        .filter(|&i| index.core(i) > 0)
        .collect();

    let mut methods = Vec::new();
    for &method in &opts.methods {
        let m_started = Instant::now();
        let mut rows = if matches!(method, Method::Knm | Method::Sv) {
            shared_walk_rows(graph, &index, &eligible, method, opts)?
        } else {
            eligible
                .par_iter()
                .map(|&t| per_node_row(graph, &index, t, method, opts))
                .collect::<Result<Vec<_>>>()?
        };
        rows.sort_by_key(|r| r.node);
        let incomplete = rows.iter().filter(|r| r.nr.is_none()).count();
        methods.push(MetricsReport {
            method,
            aggregates: aggregates_of(&rows),
            incomplete,
            wall_secs: m_started.elapsed().as_secs_f64(),
            rows,
        });
    }

    Ok(SweepReport {
        schema_version: crate::SCHEMA_VERSION.to_owned(),
        nodes: graph.node_count(),
        edges: graph.edge_count(),
        max_core: index.max_core(),
        seed: opts.seed,
        runs: opts.runs,
        epsilon_sq: opts.epsilon_sq,
        skipped_isolated: graph.node_count() - eligible.len(),
        methods,
        wall_secs: started.elapsed().as_secs_f64(),
    })
}

/// Seed for a node's private generator, decorrelated across nodes.
fn node_seed(seed: u64, node: NodeId) -> u64 {
    seed ^ (node as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn per_node_row(
    graph: &Graph,
    index: &CoreIndex,
    node: NodeId,
    method: Method,
    opts: &SweepOptions,
) -> Result<NodeRow> {
    let started = Instant::now();
    let deadline = opts.timeout.map(|t| started + t);
    let view = GraphView::new(graph);
    let cs = core_strength(&view, index, node)?;

    let mut timed_out = false;
    let mut nr_values: Vec<usize> = Vec::new();
    let result: Result<()> = (|| {
        match method {
            Method::Tnc => {
                let o = SolveOptions { seed: node_seed(opts.seed, node), deadline, ..SolveOptions::default() };
                nr_values.push(solvers::tnc(graph, node, &o)?.nr);
            }
            Method::Atnc => {
                let o = SolveOptions {
                    seed: node_seed(opts.seed, node),
                    atnc_random_fallback: opts.atnc_random_fallback,
                    deadline,
                };
                nr_values.push(solvers::atnc(graph, node, &o)?.nr);
            }
            Method::Red | Method::Rnd => {
                for run in 0..opts.runs.max(1) {
                    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed + run as u64);
                    rng.set_stream(node as u64);
                    let r = match method {
                        Method::Red => baselines::red(graph, node, &mut rng, deadline)?,
                        _ => baselines::rnd(graph, node, &mut rng, deadline)?,
                    };
                    nr_values.push(r.nr);
                }
            }
            Method::Knm | Method::Sv => unreachable!("handled by shared walks"),
        }
        Ok(())
    })();
    match result {
        Ok(()) => {}
        Err(Error::Timeout(_)) => timed_out = true,
        Err(e) => return Err(e),
    }
    let runs = nr_values;

    let nr = if timed_out || runs.is_empty() {
        None
    } else {
        Some(runs.iter().sum::<usize>() as f64 / runs.len() as f64)
    };
    Ok(NodeRow {
        node,
        label: graph.label(node).to_owned(),
        core: index.core(node),
        cs,
        nr,
        runs,
        wall_secs: started.elapsed().as_secs_f64(),
    })
}

/// knm and sv pick edges independently of the target, so one removal walk
/// per core level serves every node of that level: a node's NR is the step
/// at which the shared walk collapsed it. Output-identical to running the
/// baseline per node, at a fraction of the cost.
fn shared_walk_rows(
    graph: &Graph,
    index: &CoreIndex,
    eligible: &[NodeId],
    method: Method,
    opts: &SweepOptions,
) -> Result<Vec<NodeRow>> {
    let mut groups: BTreeMap<u32, Vec<NodeId>> = BTreeMap::new();
    for &i in eligible {
        groups.entry(index.core(i)).or_default().push(i);
    }
    let groups: Vec<(u32, Vec<NodeId>)> = groups.into_iter().collect();
    let per_level: Vec<Vec<(NodeId, Option<usize>, f64)>> = groups
        .par_iter()
        .map(|(k, tracked)| shell_walk(graph, *k, tracked, method, opts))
        .collect::<Result<Vec<_>>>()?;

    let view = GraphView::new(graph);
    let mut rows = Vec::new();
    for level in per_level {
        for (node, step, wall_secs) in level {
            rows.push(NodeRow {
                node,
                label: graph.label(node).to_owned(),
                core: index.core(node),
                cs: core_strength(&view, index, node)?,
                nr: step.map(|s| s as f64),
                runs: step.into_iter().collect(),
                wall_secs,
            });
        }
    }
    Ok(rows)
}

fn shell_walk(
    graph: &Graph,
    k: u32,
    tracked: &[NodeId],
    method: Method,
    opts: &SweepOptions,
) -> Result<Vec<(NodeId, Option<usize>, f64)>> {
    let started = Instant::now();
    let deadline = opts.timeout.map(|t| started + t);
    let mut view = GraphView::new(graph);
    let mut index = compute_cores(&view);
    let mut alive: Vec<NodeId> = tracked.to_vec();
    let mut out = Vec::new();

    let sv_order = if method == Method::Sv {
        match baselines::shell_weight_order(&view, &index, k, opts.epsilon_sq, opts.seed, deadline) {
            Ok(order) => Some(order),
            Err(Error::Timeout(_)) => {
                let t = started.elapsed().as_secs_f64();
                return Ok(tracked.iter().map(|&x| (x, None, t)).collect());
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };

    let mut step = 0usize;
    let mut sv_cursor = 0usize;
    while !alive.is_empty() {
        if let Some(d) = deadline {
            if Instant::now() > d {
                break;
            }
        }
        let edge = match &sv_order {
            Some(order) => {
                let e = order.get(sv_cursor).copied();
                sv_cursor += 1;
                e
            }
            None => baselines::greedy_shell_pick(&view, &index, k)?,
        };
        // Either source runs dry only after every level-k node has fallen;
        // the guard is belt-and-braces.
        let Some(edge) = edge else { break };
        cascade_after_removal(&mut view, &mut index, edge)?;
        step += 1;
        let elapsed = started.elapsed().as_secs_f64();
        alive.retain(|&x| {
            if index.core(x) < k {
                out.push((x, Some(step), elapsed));
                false
            } else {
                true
            }
        });
    }
    let elapsed = started.elapsed().as_secs_f64();
    out.extend(alive.into_iter().map(|x| (x, None, elapsed)));
    Ok(out)
}

#[derive(Clone, Copy, Debug)]
pub struct SingleOptions {
    pub seed: u64,
    pub epsilon_sq: f64,
    pub atnc_random_fallback: bool,
    pub deadline: Option<Instant>,
}

impl Default for SingleOptions {
    fn default() -> Self {
        SingleOptions {
            seed: 0,
            epsilon_sq: 0.1,
            atnc_random_fallback: false,
            deadline: None,
        }
    }
}

/// One method, one node. Stochastic baselines draw from the same stream the
/// sweep uses for its first run, so single calls reproduce sweep rows.
pub fn collapse_one(
    graph: &Graph,
    target: NodeId,
    method: Method,
    opts: &SingleOptions,
) -> Result<CollapseResult> {
    match method {
        Method::Tnc => solvers::tnc(
            graph,
            target,
            &SolveOptions { seed: opts.seed, deadline: opts.deadline, ..SolveOptions::default() },
        ),
        // Same per-node stream the sweep uses, so single calls reproduce
        // sweep rows under identical flags.
        Method::Atnc => solvers::atnc(
            graph,
            target,
            &SolveOptions {
                seed: node_seed(opts.seed, target),
                atnc_random_fallback: opts.atnc_random_fallback,
                deadline: opts.deadline,
            },
        ),
        Method::Red | Method::Rnd => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(target as u64);
            match method {
                Method::Red => baselines::red(graph, target, &mut rng, opts.deadline),
                _ => baselines::rnd(graph, target, &mut rng, opts.deadline),
            }
        }
        Method::Knm => baselines::knm(graph, target, opts.deadline),
        Method::Sv => baselines::sv(
            graph,
            target,
            &baselines::SvOptions {
                seed: opts.seed,
                epsilon_sq: opts.epsilon_sq,
                refresh_weights: false,
                deadline: opts.deadline,
            },
        ),
    }
}

/// Removal-by-removal supporter trajectory of one result, ready to plot
/// against the critical line at k.
#[derive(Clone, Debug, Serialize)]
pub struct CaseTrace {
    pub target: NodeId,
    pub label: String,
    pub method: String,
    /// The critical supporter count: the series ends strictly below it.
    pub k: u32,
    /// (edges removed so far, supporters left).
    pub points: Vec<(usize, usize)>,
}

pub fn case_trace(graph: &Graph, result: &CollapseResult) -> CaseTrace {
    CaseTrace {
        target: result.target,
        label: graph.label(result.target).to_owned(),
        method: result.method.clone(),
        k: result.k,
        points: result.trace.iter().copied().enumerate().collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoreLevelStats {
    pub k: u32,
    pub nodes: usize,
    pub corona: usize,
    pub total_cs: f64,
    /// Over completed rows only.
    pub total_nr: f64,
    pub bubbles: usize,
}

/// Per-core-level CS-vs-NR comparison for one method's sweep.
#[derive(Clone, Debug, Serialize)]
pub struct ResilienceSummary {
    pub schema_version: String,
    pub method: Method,
    pub levels: Vec<CoreLevelStats>,
    pub total_cs: f64,
    pub total_nr: f64,
    /// Fraction of total core strength the method proved redundant;
    /// equals RP / 100 by definition.
    pub redundancy: f64,
}

pub fn resilience_summary(report: &MetricsReport) -> ResilienceSummary {
    let mut levels: BTreeMap<u32, CoreLevelStats> = BTreeMap::new();
    for row in &report.rows {
        let entry = levels.entry(row.core).or_insert(CoreLevelStats {
            k: row.core,
            nodes: 0,
            corona: 0,
            total_cs: 0.0,
            total_nr: 0.0,
            bubbles: 0,
        });
        entry.nodes += 1;
        if row.cs == 1 {
            entry.corona += 1;
        }
        entry.total_cs += row.cs as f64;
        if let Some(nr) = row.nr {
            entry.total_nr += nr;
            if (row.cs as f64) > nr {
                entry.bubbles += 1;
            }
        }
    }
    let levels: Vec<CoreLevelStats> = levels.into_values().collect();
    ResilienceSummary {
        schema_version: crate::SCHEMA_VERSION.to_owned(),
        method: report.method,
        total_cs: levels.iter().fold(0.0, |a, l| a + l.total_cs),
        total_nr: levels.iter().fold(0.0, |a, l| a + l.total_nr),
        redundancy: report.aggregates.rp / 100.0,
        levels,
    }
}

/// Table-shaped comparison of method aggregates.
pub fn compare(reports: &[&MetricsReport]) -> String {
    let mut out = String::from("method,NBN,SRC,WAR,RP\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{:.4},{:.4},{:.4}\n",
            r.method, r.aggregates.nbn, r.aggregates.src, r.aggregates.war, r.aggregates.rp
        ));
    }
    out
}

/// Copy of the report with every wall-clock field zeroed, for comparing
/// repeated sweeps.
pub fn normalized(report: &SweepReport) -> SweepReport {
    let mut r = report.clone();
    r.wall_secs = 0.0;
    for m in &mut r.methods {
        m.wall_secs = 0.0;
        for row in &mut m.rows {
            row.wall_secs = 0.0;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn war_matches_hand_computed_fixtures() {
        assert_eq!(war(&[]), 0.0);
        assert!((war(&[2.0, 2.0, 2.0]) - 2.0).abs() < 1e-12);

        // One reduction of 3 among eighteen of 1: exactly 55/19.
        let mut counts = vec![3.0];
        counts.extend(std::iter::repeat(1.0).take(18));
        assert!((war(&counts) - 55.0 / 19.0).abs() < 1e-12);

        // {8 x 3, 54 x 2, 4043 x 1}: exactly 360043/125549.
        let mut big = Vec::new();
        big.extend(std::iter::repeat(3.0).take(8));
        big.extend(std::iter::repeat(2.0).take(54));
        big.extend(std::iter::repeat(1.0).take(4043));
        assert!((war(&big) - 360_043.0 / 125_549.0).abs() < 1e-12);
        assert!((war(&big) - 2.868).abs() < 0.003);
    }

    #[test]
    fn war_is_scale_free_in_counts() {
        let base = [3.0, 1.0, 1.0, 2.5];
        let tripled: Vec<f64> = base.iter().flat_map(|&r| [r, r, r]).collect();
        assert!((war(&base) - war(&tripled)).abs() < 1e-12);
    }

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    fn wheel6() -> Graph {
        Graph::from_edges(
            6,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (1, 5),
            ],
        )
    }

    fn tnc_only() -> SweepOptions {
        SweepOptions {
            methods: vec![Method::Tnc],
            ..SweepOptions::default()
        }
    }

    #[test]
    fn k4_sweep_has_no_bubbles() {
        let report = sweep(&k4(), &tnc_only()).unwrap();
        let m = &report.methods[0];
        assert_eq!(m.rows.len(), 4);
        for row in &m.rows {
            assert_eq!(row.cs, 1);
            assert_eq!(row.nr, Some(1.0));
        }
        assert_eq!(m.aggregates.nbn, 0);
        assert_eq!(m.aggregates.src, 0.0);
        assert_eq!(m.aggregates.war, 0.0);
        assert_eq!(m.aggregates.rp, 0.0);
    }

    #[test]
    fn wheel_hub_is_the_single_bubble_node() {
        let report = sweep(&wheel6(), &tnc_only()).unwrap();
        let m = &report.methods[0];
        let hub = &m.rows[0];
        assert_eq!(hub.cs, 3);
        assert_eq!(hub.nr, Some(1.0));
        assert_eq!(m.aggregates.nbn, 1);
        assert_eq!(m.aggregates.src, 2.0);
        assert_eq!(m.aggregates.war, 2.0);
        assert!((m.aggregates.rp - 25.0).abs() < 1e-12);

        let summary = resilience_summary(m);
        assert!((summary.redundancy - 0.25).abs() < 1e-12);
        assert!((summary.redundancy - m.aggregates.rp / 100.0).abs() < 1e-15);
        assert_eq!(summary.total_cs, 8.0);
        assert_eq!(summary.levels.len(), 1);
        assert_eq!(summary.levels[0].corona, 5);
    }

    #[test]
    fn shared_knm_walk_matches_per_node_runs() {
        let g = crate::generators::erdos_renyi(12, 0.3, 11);
        let opts = SweepOptions {
            methods: vec![Method::Knm],
            ..SweepOptions::default()
        };
        let report = sweep(&g, &opts).unwrap();
        for row in &report.methods[0].rows {
            let direct = baselines::knm(&g, row.node, None).unwrap();
            assert_eq!(row.nr, Some(direct.nr as f64), "node {}", row.node);
        }
    }

    #[test]
    fn shared_sv_walk_matches_per_node_runs() {
        let g = crate::generators::erdos_renyi(12, 0.35, 5);
        let opts = SweepOptions {
            methods: vec![Method::Sv],
            ..SweepOptions::default()
        };
        let report = sweep(&g, &opts).unwrap();
        for row in &report.methods[0].rows {
            let direct = baselines::sv(
                &g,
                row.node,
                &baselines::SvOptions {
                    seed: opts.seed,
                    epsilon_sq: opts.epsilon_sq,
                    ..baselines::SvOptions::default()
                },
            )
            .unwrap();
            assert_eq!(row.nr, Some(direct.nr as f64), "node {}", row.node);
        }
    }

    #[test]
    fn stochastic_rows_average_their_runs() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let opts = SweepOptions {
            methods: vec![Method::Rnd],
            runs: 5,
            ..SweepOptions::default()
        };
        let report = sweep(&star, &opts).unwrap();
        let center = &report.methods[0].rows[0];
        assert_eq!(center.runs, vec![3, 3, 3, 3, 3]);
        assert_eq!(center.nr, Some(3.0));
    }

    #[test]
    fn isolated_nodes_are_skipped_not_failed() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (3, 0)]);
        let report = sweep(&g, &tnc_only()).unwrap();
        assert_eq!(report.skipped_isolated, 1);
        assert_eq!(report.methods[0].rows.len(), 4);
    }

    #[test]
    fn sweeps_are_deterministic_modulo_wall_time() {
        let g = crate::generators::erdos_renyi(14, 0.3, 3);
        let opts = SweepOptions {
            runs: 3,
            ..SweepOptions::default()
        };
        let a = serde_json::to_string(&normalized(&sweep(&g, &opts).unwrap())).unwrap();
        let b = serde_json::to_string(&normalized(&sweep(&g, &opts).unwrap())).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn case_trace_matches_the_removal_series() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let r = collapse_one(&star, 0, Method::Rnd, &SingleOptions::default()).unwrap();
        let trace = case_trace(&star, &r);
        assert_eq!(trace.k, 1);
        assert_eq!(trace.points, vec![(0, 3), (1, 2), (2, 1), (3, 0)]);

        let r = collapse_one(&k4(), 0, Method::Tnc, &SingleOptions::default()).unwrap();
        let trace = case_trace(&k4(), &r);
        assert_eq!(trace.points, vec![(0, 3), (1, 0)]);
        assert!(trace.points.last().unwrap().1 < trace.k as usize);
    }

    #[test]
    fn compare_emits_one_row_per_method() {
        let report = sweep(&k4(), &SweepOptions::default()).unwrap();
        let refs: Vec<&MetricsReport> = report.methods.iter().collect();
        let csv = compare(&refs);
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines[0], "method,NBN,SRC,WAR,RP");
        assert_eq!(lines.len(), 1 + Method::ALL.len());
        assert!(lines[1].starts_with("tnc,"));
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("bogus".parse::<Method>().is_err());
    }
}
