// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! C ABI for prismext.
//!
//! Graphs and colorings are opaque handles created by `px_*` constructors
//! and released with the matching `*_free` function. Every fallible call
//! returns a [`PxStatus`]; on failure a message is available from
//! [`px_last_error`] until the next failing call on the same thread.
//! Strings returned by the library are released with [`px_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use prismext::extend::extend_auto;
use prismext::graph::{build_complete, build_complete_bipartite, build_cycle, build_hypercube, build_path, build_star, prism};
use prismext::io::{read_coloring, read_graph, write_coloring_text, write_graph_text};
use prismext::oracle::{chromatic_index_value, extend_exhaustive};
use prismext::{Error, ExtensionOutcome, Graph, PartialEdgeColoring, SearchBudget};

/// Result of a fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidGraph = 4,
    InvalidColoring = 5,
    InvalidParameter = 6,
    Precondition = 7,
    BudgetExhausted = 8,
    Internal = 9,
}

/// Result of an extension attempt.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PxVerdict {
    Extended = 0,
    NotExtendable = 1,
    Unknown = 2,
}

/// Graph builders for [`px_graph_build`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PxFamily {
    Path = 0,
    Cycle = 1,
    Star = 2,
    Complete = 3,
    Hypercube = 4,
}

/// Opaque graph handle.
pub struct PxGraph(Arc<Graph>);

/// Opaque handle of a partial edge coloring.
pub struct PxColoring(PartialEdgeColoring);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> PxStatus {
    match e {
        Error::Parse { .. } => PxStatus::Parse,
        Error::InvalidGraph(_) => PxStatus::InvalidGraph,
        Error::InvalidColoring(_) | Error::ImproperColoring { .. } | Error::GraphMismatch => PxStatus::InvalidColoring,
        Error::InvalidParameter(_) | Error::Unreachable => PxStatus::InvalidParameter,
        Error::Precondition(_) => PxStatus::Precondition,
        Error::Internal(_) => PxStatus::Internal,
    }
}

struct Fail(PxStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording failures and turning panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PxStatus::Ok,
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("panic inside prismext");
            PxStatus::Internal
        }
    }
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(PxStatus::NullPointer, "null handle".into()))
}

unsafe fn get_mut<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail(PxStatus::NullPointer, "null pointer".into()))
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(PxStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail(PxStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    *get_mut(out)? = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let s = CString::new(s).map_err(|_| Fail(PxStatus::Internal, "interior nul".into()))?;
    *get_mut(out)? = s.into_raw();
    Ok(())
}

fn budget(max_nodes: u64) -> SearchBudget {
    match max_nodes {
        0 => SearchBudget::UNLIMITED,
        n => SearchBudget::nodes(n),
    }
}

/// Message of the last failed call on this thread, or null. Valid until
/// the next failing call.
#[no_mangle]
pub extern "C" fn px_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn px_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph in the text or JSON format.
///
/// # Safety
/// `src` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn px_graph_parse(src: *const c_char, out: *mut *mut PxGraph) -> PxStatus {
    guard(|| put(out, PxGraph(Arc::new(read_graph(text(src)?)?))))
}

/// Builds a graph from `m` edges given as `2 * m` vertex ids.
///
/// # Safety
/// `edges` points to `2 * m` values (or is null when `m` is 0); `out` is
/// writable.
#[no_mangle]
pub unsafe extern "C" fn px_graph_from_edges(n: usize, edges: *const usize, m: usize, out: *mut *mut PxGraph) -> PxStatus {
    guard(|| {
        let flat: &[usize] = if m == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(get(edges)?, 2 * m)
        };
        let g = Graph::from_edges(n, flat.chunks_exact(2).map(|p| (p[0], p[1])))?;
        put(out, PxGraph(Arc::new(g)))
    })
}

/// Builds a member of a standard family. `n` is the vertex count, or the
/// dimension for hypercubes and the number of leaves for stars.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn px_graph_build(family: PxFamily, n: usize, out: *mut *mut PxGraph) -> PxStatus {
    guard(|| {
        let g = match family {
            PxFamily::Path => build_path(n)?,
            PxFamily::Cycle => build_cycle(n)?,
            PxFamily::Star => build_star(n)?,
            PxFamily::Complete => build_complete(n)?,
            PxFamily::Hypercube => build_hypercube(n)?,
        };
        put(out, PxGraph(Arc::new(g)))
    })
}

/// Builds `K_{m,n}`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn px_graph_complete_bipartite(m: usize, n: usize, out: *mut *mut PxGraph) -> PxStatus {
    guard(|| put(out, PxGraph(Arc::new(build_complete_bipartite(m, n)?))))
}

/// Builds the prism `G□K2`: copy `c` of vertex `v` is `c * n + v`.
///
/// # Safety
/// `g` is a live graph handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn px_graph_prism(g: *const PxGraph, out: *mut *mut PxGraph) -> PxStatus {
    guard(|| put(out, PxGraph(Arc::new(prism(&get(g)?.0)?.product))))
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` is null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn px_graph_vertex_count(g: *const PxGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `g` is null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn px_graph_edge_count(g: *const PxGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Writes the graph in the text format.
///
/// # Safety
/// `g` is a live graph handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn px_graph_to_text(g: *const PxGraph, out: *mut *mut c_char) -> PxStatus {
    guard(|| put_string(out, write_graph_text(&get(g)?.0)))
}

/// Chromatic index. `max_nodes` 0 means no limit.
///
/// # Safety
/// `g` is a live graph handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn px_chromatic_index(g: *const PxGraph, max_nodes: u64, out: *mut u32) -> PxStatus {
    guard(|| match chromatic_index_value(&get(g)?.0, budget(max_nodes))? {
        Some(chi) => {
            *get_mut(out)? = chi;
            Ok(())
        }
        None => Err(Fail(PxStatus::BudgetExhausted, "chromatic index undecided".into())),
    })
}

/// Releases a graph. Colorings keep their own reference to it.
///
/// # Safety
/// `g` is null or a graph handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn px_graph_free(g: *mut PxGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// An empty coloring of `g` with colors `1..=palette`.
///
/// # Safety
/// `g` is a live graph handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn px_coloring_empty(g: *const PxGraph, palette: u32, out: *mut *mut PxColoring) -> PxStatus {
    guard(|| put(out, PxColoring(PartialEdgeColoring::empty(get(g)?.0.clone(), palette)?)))
}

/// Parses a coloring of `g` in the text or JSON format.
///
/// # Safety
/// `g` is a live graph handle; `src` is a nul-terminated string; `out` is
/// writable.
#[no_mangle]
pub unsafe extern "C" fn px_coloring_parse(g: *const PxGraph, src: *const c_char, out: *mut *mut PxColoring) -> PxStatus {
    guard(|| put(out, PxColoring(read_coloring(get(g)?.0.clone(), text(src)?)?)))
}

/// Colors edge `uv` with `color`, or uncolors it when `color` is 0. The
/// result must stay proper.
///
/// # Safety
/// `c` is a live coloring handle.
#[no_mangle]
pub unsafe extern "C" fn px_coloring_set(c: *mut PxColoring, u: usize, v: usize, color: u32) -> PxStatus {
    guard(|| {
        let c = get_mut(c)?;
        let e = c.0.graph().edge_id(u, v).ok_or_else(|| Fail(PxStatus::InvalidParameter, format!("no edge {u}-{v}")))?;
        let next = if color == 0 { c.0.without(e) } else { c.0.with(e, color)? };
        next.ensure_proper()?;
        c.0 = next;
        Ok(())
    })
}

/// Color of edge `uv`, 0 when uncolored.
///
/// # Safety
/// `c` is a live coloring handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn px_coloring_get(c: *const PxColoring, u: usize, v: usize, out: *mut u32) -> PxStatus {
    guard(|| {
        let c = get(c)?;
        let e = c.0.graph().edge_id(u, v).ok_or_else(|| Fail(PxStatus::InvalidParameter, format!("no edge {u}-{v}")))?;
        *get_mut(out)? = c.0.get(e).unwrap_or(0);
        Ok(())
    })
}

/// Number of colored edges, or 0 for a null handle.
///
/// # Safety
/// `c` is null or a live coloring handle.
#[no_mangle]
pub unsafe extern "C" fn px_coloring_colored_count(c: *const PxColoring) -> usize {
    c.as_ref().map_or(0, |c| c.0.colored_count())
}

/// Writes the coloring in the text format.
///
/// # Safety
/// `c` is a live coloring handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn px_coloring_to_text(c: *const PxColoring, out: *mut *mut c_char) -> PxStatus {
    guard(|| put_string(out, write_coloring_text(&get(c)?.0)))
}

/// Releases a coloring.
///
/// # Safety
/// `c` is null or a coloring handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn px_coloring_free(c: *mut PxColoring) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

unsafe fn deliver(out: ExtensionOutcome, verdict: *mut PxVerdict, extension: *mut *mut PxColoring) -> Result<(), Fail> {
    let v = get_mut(verdict)?;
    if !extension.is_null() {
        *extension = ptr::null_mut();
    }
    *v = match out {
        ExtensionOutcome::Extended(f) => {
            if !extension.is_null() {
                put(extension, PxColoring(f))?;
            }
            PxVerdict::Extended
        }
        ExtensionOutcome::NotExtendable => PxVerdict::NotExtendable,
        ExtensionOutcome::Unknown { .. } => PxVerdict::Unknown,
    };
    Ok(())
}

/// Exhaustive search for an extension. `max_nodes` 0 means no limit. On
/// `Extended` the total coloring is stored in `extension` when it is not
/// null; otherwise `extension` is set to null.
///
/// # Safety
/// `c` is a live coloring handle; `verdict` is writable; `extension` is null
/// or writable.
#[no_mangle]
pub unsafe extern "C" fn px_extend_exhaustive(
    c: *const PxColoring,
    max_nodes: u64,
    verdict: *mut PxVerdict,
    extension: *mut *mut PxColoring,
) -> PxStatus {
    guard(|| deliver(extend_exhaustive(&get(c)?.0, budget(max_nodes))?, verdict, extension))
}

/// Extends a precoloring of a prism with the matching constructive
/// extender. `trace`, when not null, receives the trace as JSON.
///
/// # Safety
/// As [`px_extend_exhaustive`]; `trace` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn px_extend_auto(
    c: *const PxColoring,
    max_nodes: u64,
    verdict: *mut PxVerdict,
    extension: *mut *mut PxColoring,
    trace: *mut *mut c_char,
) -> PxStatus {
    guard(|| {
        let (out, tr) = extend_auto(&get(c)?.0, budget(max_nodes))?;
        if !trace.is_null() {
            put_string(trace, serde_json::to_string(&tr).map_err(|e| Fail(PxStatus::Internal, e.to_string()))?)?;
        }
        deliver(out, verdict, extension)
    })
}
