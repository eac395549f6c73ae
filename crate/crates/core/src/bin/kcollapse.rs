//! Command-line front end. Machine-parseable tables on stdout (CSV or
//! JSON), progress chatter on stderr, exit codes 0 (ok) / 1 (usage) /
//! 2 (data or computation error).

use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kcollapse::decomp::compute_cores;
use kcollapse::eval::{self, Method, SingleOptions, SweepOptions};
use kcollapse::graph::{Graph, GraphView, NodeId, ParseOptions};
use kcollapse::metrics::{core_strength, is_corona};
use kcollapse::oracle::{self, CandidateMode, OracleOptions};
use kcollapse::{Error, Result, SCHEMA_VERSION};

#[derive(Parser)]
#[command(
    name = "kcollapse",
    version,
    about = "k-core resilience toolkit: decomposition, targeted collapse, and sweeps"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Core value of every node
    Decompose(GraphIo),
    /// Per-node resilience metrics: core value, core strength, corona flag
    Metrics(GraphIo),
    /// Collapse one target with one method and report the removed edges
    Collapse(CollapseArgs),
    /// Run methods against every node and report bubble aggregates
    Sweep(SweepArgs),
    /// Merge sweep reports into a method-by-aggregates CSV table
    Compare(CompareArgs),
    /// Removal-by-removal supporter trajectory for one target
    Trace(CollapseArgs),
    /// Compare a method's removal counts against the exact oracle
    #[command(name = "oracle-check")]
    OracleCheck(OracleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CandidateModeArg {
    Reduced,
    Full,
}

impl From<CandidateModeArg> for CandidateMode {
    fn from(m: CandidateModeArg) -> CandidateMode {
        match m {
            CandidateModeArg::Reduced => CandidateMode::Reduced,
            CandidateModeArg::Full => CandidateMode::Full,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FallbackArg {
    /// Disconnect the cheapest supporters first (deterministic)
    Cheapest,
    /// Disconnect supporters in seeded random order
    Random,
}

#[derive(Args)]
struct GraphIo {
    /// Edge-list file: one `u v` pair per line, `#`/`%` comments allowed
    graph: PathBuf,
    /// Skip the first line of the input unconditionally
    #[arg(long)]
    skip_header: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores; KCOLLAPSE_THREADS as fallback)
    #[arg(long)]
    threads: Option<usize>,
}

impl GraphIo {
    fn load(&self) -> Result<Graph> {
        let (graph, stats) = Graph::load_path(&self.graph, &ParseOptions {
            skip_header: self.skip_header,
        })?;
        if stats.self_loops + stats.duplicates > 0 {
            eprintln!(
                "note: dropped {} self-loops and {} duplicate edges",
                stats.self_loops, stats.duplicates
            );
        }
        Ok(graph)
    }

    fn threads(&self) -> Option<usize> {
        self.threads.or_else(|| {
            std::env::var("KCOLLAPSE_THREADS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text)?,
            None => print!("{text}"),
        }
        Ok(())
    }
}

#[derive(Args)]
struct CollapseArgs {
    #[command(flatten)]
    io: GraphIo,
    /// One of: tnc, atnc, red, rnd, knm, sv
    #[arg(long, value_parser = parse_method)]
    method: Method,
    /// Node label (or dense id) to collapse
    #[arg(long)]
    target: String,
    /// Squared additive error ε² sizing the Shapley baseline's
    /// permutation count
    #[arg(long, default_value_t = 0.1)]
    eps2: f64,
    /// Per-run budget in seconds; 0 disables
    #[arg(long, default_value_t = 0)]
    timeout_secs: u64,
    /// Supporter-disconnection order when atnc finds no corona neighbor
    #[arg(long, value_enum, default_value_t = FallbackArg::Cheapest)]
    atnc_fallback: FallbackArg,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    io: GraphIo,
    /// Methods to run (repeatable); default: all six
    #[arg(long = "method", value_parser = parse_method)]
    methods: Vec<Method>,
    /// Repetitions for the stochastic baselines
    #[arg(long, default_value_t = 10)]
    runs: usize,
    /// Squared additive error ε² for the Shapley baseline
    #[arg(long, default_value_t = 0.1)]
    eps2: f64,
    /// Per-node budget in seconds; 0 disables
    #[arg(long, default_value_t = 60)]
    timeout_secs: u64,
    #[arg(long, value_enum, default_value_t = FallbackArg::Random)]
    atnc_fallback: FallbackArg,
}

#[derive(Args)]
struct CompareArgs {
    /// Sweep reports (JSON) to merge
    reports: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    io: GraphIo,
    #[arg(long, value_parser = parse_method)]
    method: Method,
    #[arg(long, value_enum, default_value_t = CandidateModeArg::Reduced)]
    candidate_mode: CandidateModeArg,
    /// Largest removal-set cardinality the oracle will try
    #[arg(long, default_value_t = 4)]
    size_cap: usize,
    /// Subset-evaluation budget before the oracle gives up on a node
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Squared additive error ε² for the Shapley baseline
    #[arg(long, default_value_t = 0.1)]
    eps2: f64,
    /// Per-node budget in seconds; 0 disables
    #[arg(long, default_value_t = 0)]
    timeout_secs: u64,
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        let code = match e {
            Error::InvalidArgument(_) | Error::Io(_) => 1,
            _ => 2,
        };
        std::process::exit(code);
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Decompose(io) => decompose(&io),
        Cmd::Metrics(io) => metrics(&io),
        Cmd::Collapse(args) => collapse(&args),
        Cmd::Sweep(args) => sweep(&args),
        Cmd::Compare(args) => compare(&args),
        Cmd::Trace(args) => trace(&args),
        Cmd::OracleCheck(args) => oracle_check(&args),
    }
}

fn resolve_node(graph: &Graph, token: &str) -> Result<NodeId> {
    if let Some(id) = graph.node_by_label(token) {
        return Ok(id);
    }
    if let Ok(id) = token.parse::<usize>() {
        if id < graph.node_count() {
            return Ok(id);
        }
    }
    Err(Error::UnknownLabel(token.to_owned()))
}

fn deadline_of(secs: u64) -> Option<Instant> {
    (secs > 0).then(|| Instant::now() + Duration::from_secs(secs))
}

fn csv_table(rows: &[Vec<String>], header: &[&str]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv writer emits utf-8"))
}

fn json_doc(value: &impl Serialize) -> Result<String> {
    Ok(format!("{}\n", serde_json::to_string_pretty(value)?))
}

fn decompose(io: &GraphIo) -> Result<()> {
    let graph = io.load()?;
    let view = GraphView::new(&graph);
    let index = compute_cores(&view);

    #[derive(Serialize)]
    struct Row<'a> {
        node: NodeId,
        label: &'a str,
        core: u32,
    }
    let rows: Vec<Row> = (0..graph.node_count())
        .map(|i| Row { node: i, label: graph.label(i), core: index.core(i) })
        .collect();

    let text = match io.format {
        Format::Json => json_doc(&serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "nodes": graph.node_count(),
            "edges": graph.edge_count(),
            "max_core": index.max_core(),
            "rows": rows,
        }))?,
        Format::Csv => csv_table(
            &rows
                .iter()
                .map(|r| vec![r.node.to_string(), r.label.to_owned(), r.core.to_string()])
                .collect::<Vec<_>>(),
            &["node", "label", "core"],
        )?,
    };
    io.emit(&text)
}

fn metrics(io: &GraphIo) -> Result<()> {
    let graph = io.load()?;
    let view = GraphView::new(&graph);
    let index = compute_cores(&view);

    #[derive(Serialize)]
    struct Row<'a> {
        node: NodeId,
        label: &'a str,
        core: u32,
        /// Undefined (null) for isolated nodes.
        cs: Option<u32>,
        corona: bool,
    }
    let rows: Vec<Row> = (0..graph.node_count())
        .map(|i| Row {
            node: i,
            label: graph.label(i),
            core: index.core(i),
            cs: core_strength(&view, &index, i).ok(),
            corona: is_corona(&view, &index, i),
        })
        .collect();

    let text = match io.format {
        Format::Json => json_doc(&serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "rows": rows,
        }))?,
        Format::Csv => csv_table(
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.node.to_string(),
                        r.label.to_owned(),
                        r.core.to_string(),
                        r.cs.map(|c| c.to_string()).unwrap_or_default(),
                        r.corona.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
            &["node", "label", "core", "cs", "corona"],
        )?,
    };
    io.emit(&text)
}

fn single_result(args: &CollapseArgs) -> Result<(Graph, kcollapse::solvers::CollapseResult)> {
    let graph = args.io.load()?;
    let target = resolve_node(&graph, &args.target)?;
    let result = eval::collapse_one(
        &graph,
        target,
        args.method,
        &SingleOptions {
            seed: args.io.seed,
            epsilon_sq: args.eps2,
            atnc_random_fallback: matches!(args.atnc_fallback, FallbackArg::Random),
            deadline: deadline_of(args.timeout_secs),
        },
    )?;
    Ok((graph, result))
}

fn collapse(args: &CollapseArgs) -> Result<()> {
    let (graph, result) = single_result(args)?;
    let removed_labels: Vec<[&str; 2]> = result
        .removed
        .iter()
        .map(|e| {
            let (u, v) = e.endpoints();
            [graph.label(u), graph.label(v)]
        })
        .collect();

    let text = match args.io.format {
        Format::Json => json_doc(&serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "method": result.method,
            "target": result.target,
            "label": graph.label(result.target),
            "k": result.k,
            "nr": result.nr,
            "removed": removed_labels,
            "trace": result.trace,
            "wall_secs": result.wall_time.as_secs_f64(),
        }))?,
        Format::Csv => {
            let mut rows = vec![vec![
                "0".to_owned(),
                String::new(),
                String::new(),
                result.trace[0].to_string(),
            ]];
            for (i, e) in result.removed.iter().enumerate() {
                let (u, v) = e.endpoints();
                rows.push(vec![
                    (i + 1).to_string(),
                    graph.label(u).to_owned(),
                    graph.label(v).to_owned(),
                    result.trace[i + 1].to_string(),
                ]);
            }
            csv_table(&rows, &["step", "u", "v", "supporters"])?
        }
    };
    args.io.emit(&text)
}

fn trace(args: &CollapseArgs) -> Result<()> {
    let (graph, result) = single_result(args)?;
    let trace = eval::case_trace(&graph, &result);
    let text = match args.io.format {
        Format::Json => json_doc(&trace)?,
        Format::Csv => csv_table(
            &trace
                .points
                .iter()
                .map(|&(step, sn)| vec![step.to_string(), sn.to_string(), trace.k.to_string()])
                .collect::<Vec<_>>(),
            &["edges_removed", "supporters", "critical_k"],
        )?,
    };
    args.io.emit(&text)
}

fn sweep(args: &SweepArgs) -> Result<()> {
    let graph = args.io.load()?;
    let methods = if args.methods.is_empty() {
        Method::ALL.to_vec()
    } else {
        args.methods.clone()
    };
    eprintln!(
        "sweep: {} nodes, {} edges, methods [{}]",
        graph.node_count(),
        graph.edge_count(),
        methods.iter().map(|m| m.as_str()).collect::<Vec<_>>().join(", ")
    );
    let report = eval::sweep(&graph, &SweepOptions {
        methods,
        seed: args.io.seed,
        runs: args.runs,
        epsilon_sq: args.eps2,
        timeout: (args.timeout_secs > 0).then(|| Duration::from_secs(args.timeout_secs)),
        threads: args.io.threads(),
        atnc_random_fallback: matches!(args.atnc_fallback, FallbackArg::Random),
    })?;
    for m in &report.methods {
        eprintln!(
            "sweep: {} done in {:.2}s (NBN={}, SRC={:.1}, incomplete={})",
            m.method, m.wall_secs, m.aggregates.nbn, m.aggregates.src, m.incomplete
        );
    }

    let text = match args.io.format {
        Format::Json => json_doc(&report)?,
        Format::Csv => {
            let mut rows = Vec::new();
            for m in &report.methods {
                for r in &m.rows {
                    rows.push(vec![
                        m.method.to_string(),
                        r.node.to_string(),
                        r.label.clone(),
                        r.core.to_string(),
                        r.cs.to_string(),
                        r.nr.map(|v| format!("{v}")).unwrap_or_default(),
                        r.nr.map(|v| format!("{}", r.cs as f64 - v)).unwrap_or_default(),
                        r.nr.is_some().to_string(),
                    ]);
                }
            }
            csv_table(
                &rows,
                &["method", "node", "label", "core", "cs", "nr", "rc", "complete"],
            )?
        }
    };
    args.io.emit(&text)
}

fn compare(args: &CompareArgs) -> Result<()> {
    if args.reports.is_empty() {
        return Err(Error::InvalidArgument(
            "compare needs at least one sweep report".to_owned(),
        ));
    }
    let mut loaded = Vec::new();
    for path in &args.reports {
        let text = std::fs::read_to_string(path)?;
        let report: eval::SweepReport = serde_json::from_str(&text)?;
        loaded.push(report);
    }
    let refs: Vec<&eval::MetricsReport> =
        loaded.iter().flat_map(|r| r.methods.iter()).collect();
    let csv = eval::compare(&refs);
    match &args.out {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn oracle_check(args: &OracleArgs) -> Result<()> {
    use rayon::prelude::*;

    let graph = args.io.load()?;
    let view = GraphView::new(&graph);
    let index = compute_cores(&view);
    let eligible: Vec<NodeId> =
        (0..graph.node_count()).filter(|&i| index.core(i) > 0).collect();
    eprintln!(
        "oracle-check: {} eligible nodes, method {}, {:?} candidates",
        eligible.len(),
        args.method,
        args.candidate_mode as u8
    );

    let oracle_opts = OracleOptions {
        size_cap: args.size_cap,
        budget: args.budget,
        deadline: deadline_of(args.timeout_secs),
    };
    let single = SingleOptions {
        seed: args.io.seed,
        epsilon_sq: args.eps2,
        atnc_random_fallback: false,
        deadline: deadline_of(args.timeout_secs),
    };

    #[derive(Serialize)]
    struct Row {
        node: NodeId,
        label: String,
        core: u32,
        cs: u32,
        nr_method: usize,
        /// Missing when the oracle hit its budget or size cap.
        nr_oracle: Option<usize>,
        gap: Option<i64>,
    }

    let mode: CandidateMode = args.candidate_mode.into();
    let check = |&t: &NodeId| -> Result<Row> {
        let method = eval::collapse_one(&graph, t, args.method, &single)?;
        let nr_oracle = match oracle::exact_nr(&graph, t, mode, &oracle_opts) {
            Ok(r) => Some(r.nr),
            Err(Error::OracleInfeasible { .. }) | Err(Error::Timeout(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(Row {
            node: t,
            label: graph.label(t).to_owned(),
            core: index.core(t),
            cs: core_strength(&view, &index, t)?,
            nr_method: method.nr,
            nr_oracle,
            gap: nr_oracle.map(|o| method.nr as i64 - o as i64),
        })
    };
    let rows: Vec<Row> = match args.io.threads() {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(|| eligible.par_iter().map(check).collect::<Result<_>>())?,
        None => eligible.par_iter().map(check).collect::<Result<_>>()?,
    };

    let text = match args.io.format {
        Format::Json => json_doc(&serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "method": args.method,
            "rows": rows,
        }))?,
        Format::Csv => csv_table(
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.node.to_string(),
                        r.label.clone(),
                        r.core.to_string(),
                        r.cs.to_string(),
                        r.nr_method.to_string(),
                        r.nr_oracle.map(|v| v.to_string()).unwrap_or_default(),
                        r.gap.map(|v| v.to_string()).unwrap_or_default(),
                    ]
                })
                .collect::<Vec<_>>(),
            &["node", "label", "core", "cs", "nr_method", "nr_oracle", "gap"],
        )?,
    };
    args.io.emit(&text)
}
