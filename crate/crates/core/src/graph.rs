//! Immutable base graph plus a cheap deletion overlay.
//!
//! The base [`Graph`] is built once from an edge list and never mutated;
//! every solver works on a [`GraphView`] that records deleted edges on top
//! of it. Node ids are dense (`0..n`), assigned by sorting the original
//! labels, so runs over the same input are reproducible regardless of the
//! order edges appear in the file.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Undirected edge in canonical orientation (`u < v`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    u: NodeId,
    v: NodeId,
}

impl Edge {
    pub fn new(a: NodeId, b: NodeId) -> Self {
        assert_ne!(a, b, "self-loop edge ({a}, {b})");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn endpoints(self) -> (NodeId, NodeId) {
        (self.u, self.v)
    }

    /// The endpoint that is not `x`. Panics if `x` is not an endpoint.
    pub fn other(self, x: NodeId) -> NodeId {
        if x == self.u {
            self.v
        } else {
            assert_eq!(x, self.v, "node {x} is not an endpoint of {self:?}");
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

impl serde::Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.u, self.v).serialize(s)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Skip the first line unconditionally (column headers and the like).
    pub skip_header: bool,
}

/// Counters for lines the parser dropped rather than rejected.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseStats {
    pub lines: usize,
    pub skipped: usize,
    pub self_loops: usize,
    pub duplicates: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    label_ids: HashMap<String, NodeId>,
    adj: Vec<Vec<NodeId>>,
    m: usize,
}

impl Graph {
    /// Parse a whitespace-separated edge list. Lines starting with `#` or
    /// `%` and blank lines are skipped; self-loops and duplicate (including
    /// reversed) edges are dropped and counted. Nodes are whatever tokens
    /// appear; ids are assigned by sorting labels (numerically when every
    /// label parses as an integer, lexicographically otherwise).
    pub fn parse(text: &str, opts: &ParseOptions) -> Result<(Graph, ParseStats)> {
        let mut stats = ParseStats::default();
        let mut raw: Vec<(String, String)> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            stats.lines += 1;
            if opts.skip_header && idx == 0 {
                stats.skipped += 1;
                continue;
            }
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
                stats.skipped += 1;
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(Error::MalformedLine {
                    line: idx + 1,
                    found: tokens.len(),
                });
            }
            if tokens[0] == tokens[1] {
                stats.self_loops += 1;
                continue;
            }
            raw.push((tokens[0].to_owned(), tokens[1].to_owned()));
        }
        if raw.is_empty() {
            return Err(Error::EmptyGraph);
        }

        let mut labels: Vec<String> = raw
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        // Numeric sort when the whole label set is numeric; the string
        // itself breaks ties so "007" and "7" stay distinct nodes.
        if labels.iter().all(|l| l.parse::<i64>().is_ok()) {
            labels.sort_by_key(|l| (l.parse::<i64>().unwrap(), l.clone()));
        }
        let label_ids: HashMap<String, NodeId> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();

        let mut edges = BTreeSet::new();
        for (a, b) in &raw {
            edges.insert(Edge::new(label_ids[a], label_ids[b]));
        }
        stats.duplicates = raw.len() - edges.len();

        Ok((Self::assemble(labels, label_ids, &edges), stats))
    }

    pub fn load_path(path: impl AsRef<Path>, opts: &ParseOptions) -> Result<(Graph, ParseStats)> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, opts)
    }

    /// Build directly from id pairs; labels are the decimal ids. Intended
    /// for tests and generators, so unlike `parse` it tolerates isolated
    /// nodes (they simply end up with core value 0).
    pub fn from_edges(n: usize, pairs: &[(NodeId, NodeId)]) -> Graph {
        let mut edges = BTreeSet::new();
        for &(a, b) in pairs {
            assert!(a < n && b < n, "edge ({a}, {b}) out of range for n={n}");
            edges.insert(Edge::new(a, b));
        }
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let label_ids = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        Self::assemble(labels, label_ids, &edges)
    }

    fn assemble(
        labels: Vec<String>,
        label_ids: HashMap<String, NodeId>,
        edges: &BTreeSet<Edge>,
    ) -> Graph {
        let mut adj = vec![Vec::new(); labels.len()];
        for e in edges {
            let (u, v) = e.endpoints();
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            labels,
            label_ids,
            adj,
            m: edges.len(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn degree(&self, i: NodeId) -> usize {
        self.adj[i].len()
    }

    pub fn neighbors(&self, i: NodeId) -> &[NodeId] {
        &self.adj[i]
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        let (u, v) = e.endpoints();
        u < self.node_count() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter()
                .filter(move |&&v| u < v)
                .map(move |&v| Edge { u, v })
        })
    }

    pub fn label(&self, i: NodeId) -> &str {
        &self.labels[i]
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.label_ids.get(label).copied()
    }

    pub fn require_node(&self, i: NodeId) -> Result<()> {
        if i < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange(i, self.node_count()))
        }
    }

    /// Canonical serialization: one `u v` label pair per line, endpoints in
    /// id order, lines sorted by id pair. Parsing the output reproduces the
    /// graph exactly.
    pub fn to_canonical_edge_list(&self) -> String {
        let mut out = String::new();
        for e in self.edges() {
            let (u, v) = e.endpoints();
            out.push_str(&format!("{} {}\n", self.labels[u], self.labels[v]));
        }
        out
    }
}

/// Deletion overlay over a base [`Graph`]. Cloning is cheap enough for the
/// probe-style simulations the solvers run (deleted set plus one degree
/// vector), which is the reason edges are never removed from the base.
#[derive(Clone, Debug)]
pub struct GraphView<'g> {
    graph: &'g Graph,
    deleted: HashSet<Edge>,
    live_degree: Vec<usize>,
}

impl<'g> GraphView<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        GraphView {
            graph,
            deleted: HashSet::new(),
            live_degree: (0..graph.node_count()).map(|i| graph.degree(i)).collect(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn is_live(&self, e: Edge) -> bool {
        self.graph.has_edge(e) && !self.deleted.contains(&e)
    }

    pub fn live_degree(&self, i: NodeId) -> usize {
        self.live_degree[i]
    }

    pub fn live_edge_count(&self) -> usize {
        self.graph.edge_count() - self.deleted.len()
    }

    pub fn live_neighbors(&self, i: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.graph
            .neighbors(i)
            .iter()
            .copied()
            .filter(move |&v| !self.deleted.contains(&Edge::new(i, v)))
    }

    /// Checked variant for external callers; id out of range is an error.
    pub fn neighbors(&self, i: NodeId) -> Result<Vec<NodeId>> {
        self.graph.require_node(i)?;
        Ok(self.live_neighbors(i).collect())
    }

    pub fn live_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.graph.edges().filter(move |e| !self.deleted.contains(e))
    }

    pub fn deleted_edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self.deleted.iter().copied().collect();
        out.sort_unstable();
        out
    }

    pub fn delete_edge(&mut self, e: Edge) -> Result<()> {
        let (u, v) = e.endpoints();
        if !self.graph.has_edge(e) {
            return Err(Error::UnknownEdge(u, v));
        }
        if !self.deleted.insert(e) {
            return Err(Error::EdgeAlreadyDeleted(u, v));
        }
        self.live_degree[u] -= 1;
        self.live_degree[v] -= 1;
        Ok(())
    }
}
