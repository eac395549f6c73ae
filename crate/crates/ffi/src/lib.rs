//! C ABI over the collapse engine: opaque handles, integer status codes,
//! JSON for bulk data. Every entry point catches panics at the boundary
//! and stores failure detail in a thread-local message readable with
//! [`kc_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kcollapse::decomp::{compute_cores, CoreIndex};
use kcollapse::eval::{self, Method, SingleOptions, SweepOptions};
use kcollapse::graph::{Graph, GraphView, ParseOptions};
use kcollapse::metrics::{core_strength, is_corona};
use kcollapse::solvers::CollapseResult;
use kcollapse::Error;

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KcStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The edge list could not be parsed.
    ParseError = 3,
    /// Node id out of range or label unknown.
    UnknownNode = 4,
    /// Unrecognized method name or out-of-range numeric argument.
    InvalidArgument = 5,
    /// The computation failed; see kc_last_error_message.
    RuntimeError = 6,
    /// A panic was caught at the boundary.
    Panic = 7,
}

/// Parsed graph plus its core decomposition, built once at load.
pub struct KcGraph {
    graph: Graph,
    index: CoreIndex,
}

/// One collapse run: the removed edges, their count, and the trace.
pub struct KcCollapseResult {
    inner: CollapseResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg)
        .unwrap_or_else(|_| CString::new("error message contained an interior NUL").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: KcStatus, msg: impl std::fmt::Display) -> KcStatus {
    set_error(msg.to_string());
    status
}

fn status_of(e: &Error) -> KcStatus {
    match e {
        Error::MalformedLine { .. } | Error::EmptyGraph => KcStatus::ParseError,
        Error::NodeOutOfRange(..) | Error::UnknownLabel(_) => KcStatus::UnknownNode,
        Error::InvalidArgument(_) => KcStatus::InvalidArgument,
        _ => KcStatus::RuntimeError,
    }
}

fn guarded(f: impl FnOnce() -> KcStatus) -> KcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("panic caught at the C boundary".to_owned());
            KcStatus::Panic
        }
    }
}

/// Shared null-check + UTF-8 decode for string arguments.
///
/// # Safety
/// `p` must be null or a NUL-terminated string pointer.
unsafe fn utf8_arg<'a>(p: *const c_char) -> Result<&'a str, KcStatus> {
    if p.is_null() {
        return Err(fail(KcStatus::NullArgument, "string argument is null"));
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|e| fail(KcStatus::InvalidUtf8, e))
}

fn graph_arg<'a>(g: *const KcGraph) -> Result<&'a KcGraph, KcStatus> {
    if g.is_null() {
        return Err(fail(KcStatus::NullArgument, "graph handle is null"));
    }
    Ok(unsafe { &*g })
}

fn result_arg<'a>(r: *const KcCollapseResult) -> Result<&'a KcCollapseResult, KcStatus> {
    if r.is_null() {
        return Err(fail(KcStatus::NullArgument, "result handle is null"));
    }
    Ok(unsafe { &*r })
}

fn write_out<T>(out: *mut T, value: T) -> KcStatus {
    if out.is_null() {
        return fail(KcStatus::NullArgument, "out pointer is null");
    }
    unsafe { out.write(value) };
    KcStatus::Ok
}

fn write_string(out: *mut *mut c_char, s: String) -> KcStatus {
    match CString::new(s) {
        Ok(c) => write_out(out, c.into_raw()),
        Err(e) => fail(KcStatus::RuntimeError, e),
    }
}

fn install_graph(graph: Graph, out: *mut *mut KcGraph) -> KcStatus {
    let index = compute_cores(&GraphView::new(&graph));
    write_out(out, Box::into_raw(Box::new(KcGraph { graph, index })))
}

/// Parse an edge list (one `u v` pair per line, `#`/`%` comments allowed)
/// into a graph handle. The handle owns its memory; release it with
/// `kc_graph_free`.
#[no_mangle]
pub extern "C" fn kc_graph_parse(
    text: *const c_char,
    skip_header: bool,
    out: *mut *mut KcGraph,
) -> KcStatus {
    guarded(|| {
        let text = match unsafe { utf8_arg(text) } {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Graph::parse(text, &ParseOptions { skip_header }) {
            Ok((graph, _)) => install_graph(graph, out),
            Err(e) => fail(status_of(&e), e),
        }
    })
}

/// Load an edge-list file from disk. See `kc_graph_parse` for the format.
#[no_mangle]
pub extern "C" fn kc_graph_load_path(
    path: *const c_char,
    skip_header: bool,
    out: *mut *mut KcGraph,
) -> KcStatus {
    guarded(|| {
        let path = match unsafe { utf8_arg(path) } {
            Ok(p) => p,
            Err(s) => return s,
        };
        match Graph::load_path(path, &ParseOptions { skip_header }) {
            Ok((graph, _)) => install_graph(graph, out),
            Err(e) => fail(status_of(&e), e),
        }
    })
}

/// Release a graph handle. Null is a no-op.
#[no_mangle]
pub extern "C" fn kc_graph_free(g: *mut KcGraph) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Number of nodes, or 0 for a null handle.
#[no_mangle]
pub extern "C" fn kc_graph_node_count(g: *const KcGraph) -> usize {
    graph_arg(g).map_or(0, |h| h.graph.node_count())
}

/// Number of edges, or 0 for a null handle.
#[no_mangle]
pub extern "C" fn kc_graph_edge_count(g: *const KcGraph) -> usize {
    graph_arg(g).map_or(0, |h| h.graph.edge_count())
}

/// Largest core value in the graph, or 0 for a null handle.
#[no_mangle]
pub extern "C" fn kc_graph_max_core(g: *const KcGraph) -> u32 {
    graph_arg(g).map_or(0, |h| h.index.max_core())
}

/// Resolve a node label to its dense id.
#[no_mangle]
pub extern "C" fn kc_graph_node_by_label(
    g: *const KcGraph,
    label: *const c_char,
    out: *mut usize,
) -> KcStatus {
    guarded(|| {
        let h = match graph_arg(g) {
            Ok(h) => h,
            Err(s) => return s,
        };
        let label = match unsafe { utf8_arg(label) } {
            Ok(l) => l,
            Err(s) => return s,
        };
        match h.graph.node_by_label(label) {
            Some(id) => write_out(out, id),
            None => fail(KcStatus::UnknownNode, format!("unknown node label {label:?}")),
        }
    })
}

/// Copy a node's label into a fresh string; release it with
/// `kc_string_free`.
#[no_mangle]
pub extern "C" fn kc_graph_node_label(
    g: *const KcGraph,
    node: usize,
    out: *mut *mut c_char,
) -> KcStatus {
    guarded(|| {
        let h = match graph_arg(g) {
            Ok(h) => h,
            Err(s) => return s,
        };
        if let Err(e) = h.graph.require_node(node) {
            return fail(status_of(&e), e);
        }
        write_string(out, h.graph.label(node).to_owned())
    })
}

/// Core value of a node.
#[no_mangle]
pub extern "C" fn kc_core_value(g: *const KcGraph, node: usize, out: *mut u32) -> KcStatus {
    guarded(|| {
        let h = match graph_arg(g) {
            Ok(h) => h,
            Err(s) => return s,
        };
        if let Err(e) = h.graph.require_node(node) {
            return fail(status_of(&e), e);
        }
        write_out(out, h.index.core(node))
    })
}

/// Core strength of a node. Fails with a runtime error for core-0 nodes,
/// where the quantity is undefined.
#[no_mangle]
pub extern "C" fn kc_core_strength(g: *const KcGraph, node: usize, out: *mut u32) -> KcStatus {
    guarded(|| {
        let h = match graph_arg(g) {
            Ok(h) => h,
            Err(s) => return s,
        };
        match core_strength(&GraphView::new(&h.graph), &h.index, node) {
            Ok(cs) => write_out(out, cs),
            Err(e) => fail(status_of(&e), e),
        }
    })
}

/// Whether the node sits on its core's corona (core strength exactly 1).
#[no_mangle]
pub extern "C" fn kc_is_corona(g: *const KcGraph, node: usize, out: *mut bool) -> KcStatus {
    guarded(|| {
        let h = match graph_arg(g) {
            Ok(h) => h,
            Err(s) => return s,
        };
        if let Err(e) = h.graph.require_node(node) {
            return fail(status_of(&e), e);
        }
        write_out(out, is_corona(&GraphView::new(&h.graph), &h.index, node))
    })
}

/// Run one collapse method ("tnc", "atnc", "red", "rnd", "knm", or "sv")
/// against a target node. Release the result with `kc_result_free`.
#[no_mangle]
pub extern "C" fn kc_collapse(
    g: *const KcGraph,
    target: usize,
    method: *const c_char,
    seed: u64,
    out: *mut *mut KcCollapseResult,
) -> KcStatus {
    guarded(|| {
        let h = match graph_arg(g) {
            Ok(h) => h,
            Err(s) => return s,
        };
        let method: Method = match unsafe { utf8_arg(method) }.map(str::parse) {
            Ok(Ok(m)) => m,
            Ok(Err(e)) => return fail(KcStatus::InvalidArgument, e),
            Err(s) => return s,
        };
        let opts = SingleOptions { seed, ..SingleOptions::default() };
        match eval::collapse_one(&h.graph, target, method, &opts) {
            Ok(inner) => write_out(out, Box::into_raw(Box::new(KcCollapseResult { inner }))),
            Err(e) => fail(status_of(&e), e),
        }
    })
}

/// Number of removed edges (the method's NR figure), or 0 on null.
#[no_mangle]
pub extern "C" fn kc_result_nr(r: *const KcCollapseResult) -> usize {
    result_arg(r).map_or(0, |h| h.inner.nr)
}

/// Core level the collapse was fought at, or 0 on null.
#[no_mangle]
pub extern "C" fn kc_result_level(r: *const KcCollapseResult) -> u32 {
    result_arg(r).map_or(0, |h| h.inner.k)
}

/// Endpoints of the i-th removed edge, in removal order.
#[no_mangle]
pub extern "C" fn kc_result_edge(
    r: *const KcCollapseResult,
    i: usize,
    u: *mut usize,
    v: *mut usize,
) -> KcStatus {
    guarded(|| {
        let h = match result_arg(r) {
            Ok(h) => h,
            Err(s) => return s,
        };
        match h.inner.removed.get(i) {
            Some(e) => {
                let (a, b) = e.endpoints();
                let s = write_out(u, a);
                if s != KcStatus::Ok {
                    return s;
                }
                write_out(v, b)
            }
            None => fail(
                KcStatus::InvalidArgument,
                format!("edge index {i} out of range ({} removed)", h.inner.removed.len()),
            ),
        }
    })
}

/// Whole result (method, target, removed edges, supporter trace) as a JSON
/// document; release it with `kc_string_free`.
#[no_mangle]
pub extern "C" fn kc_result_json(r: *const KcCollapseResult, out: *mut *mut c_char) -> KcStatus {
    guarded(|| {
        let h = match result_arg(r) {
            Ok(h) => h,
            Err(s) => return s,
        };
        match serde_json::to_string(&h.inner) {
            Ok(s) => write_string(out, s),
            Err(e) => fail(KcStatus::RuntimeError, e),
        }
    })
}

/// Release a collapse result. Null is a no-op.
#[no_mangle]
pub extern "C" fn kc_result_free(r: *mut KcCollapseResult) {
    if !r.is_null() {
        drop(unsafe { Box::from_raw(r) });
    }
}

/// Run a whole-graph sweep and return the report as JSON. `methods` is a
/// comma-separated subset of the six method names, or null for all of
/// them. Release the string with `kc_string_free`.
#[no_mangle]
pub extern "C" fn kc_sweep_json(
    g: *const KcGraph,
    methods: *const c_char,
    seed: u64,
    runs: usize,
    out: *mut *mut c_char,
) -> KcStatus {
    guarded(|| {
        let h = match graph_arg(g) {
            Ok(h) => h,
            Err(s) => return s,
        };
        let methods = if methods.is_null() {
            Method::ALL.to_vec()
        } else {
            let spec = match unsafe { utf8_arg(methods) } {
                Ok(s) => s,
                Err(s) => return s,
            };
            let mut parsed = Vec::new();
            for name in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                match name.parse() {
                    Ok(m) => parsed.push(m),
                    Err(e) => return fail(KcStatus::InvalidArgument, e),
                }
            }
            if parsed.is_empty() {
                return fail(KcStatus::InvalidArgument, "no method names given");
            }
            parsed
        };
        let opts = SweepOptions { methods, seed, runs, ..SweepOptions::default() };
        match eval::sweep(&h.graph, &opts) {
            Ok(report) => match serde_json::to_string(&report) {
                Ok(s) => write_string(out, s),
                Err(e) => fail(KcStatus::RuntimeError, e),
            },
            Err(e) => fail(status_of(&e), e),
        }
    })
}

/// Release a string allocated by this library. Null is a no-op.
#[no_mangle]
pub extern "C" fn kc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Message describing the calling thread's most recent failure, or null if
/// none. The pointer stays valid until the next failing call on the same
/// thread; do not free it.
#[no_mangle]
pub extern "C" fn kc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
