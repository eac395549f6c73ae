//! Resilience analysis for k-cores: how cheaply can a chosen node be pushed
//! out of its core by deleting edges?
//!
//! The crate provides the graph plumbing (parsing, deletion overlays, core
//! decomposition with incremental repair), per-node resilience metrics,
//! targeted collapse solvers with their baselines, an exact brute-force
//! oracle for small instances, and batch evaluation over whole graphs.

pub mod baselines;
pub mod decomp;
pub mod error;
pub mod eval;
pub mod generators;
pub mod graph;
pub mod impact;
pub mod metrics;
pub mod oracle;
pub mod solvers;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, GraphView, NodeId};

/// Version tag stamped into serialized reports.
pub const SCHEMA_VERSION: &str = "1";

pub(crate) fn serialize_secs<S: serde::Serializer>(
    d: &std::time::Duration,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}
