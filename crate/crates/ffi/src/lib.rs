//! C ABI over the `lambdatree` solver.
//!
//! Handles (`LtTree`, `LtResult`) are opaque and owned by the caller once returned; free them
//! with the matching `*_free` function. Every fallible call returns an `LtStatus`; on failure
//! `lt_last_error()` describes the most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lambdatree::gen::{generate_tree, TreeKind};
use lambdatree::solver::{decide_lambda, solve_l21_with, solve_lp1_with};
use lambdatree::{parse_tree, validate_labeling, Algorithm, Error, Labeling, SolveConfig, SolveResult, Tree};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LtStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    InvalidArgument = 3,
    /// The solver has no witness to return (infeasible decision, or none requested).
    NoWitness = 4,
    BufferTooSmall = 5,
    /// An internal invariant failed; please report.
    Internal = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LtAlgorithm {
    Auto = 0,
    Ck = 1,
    Fast = 2,
    Linear = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LtTreeKind {
    Path = 0,
    Star = 1,
    Caterpillar = 2,
    Broom = 3,
    Random = 4,
    V45Stress = 5,
}

/// An immutable tree.
pub struct LtTree(Tree);

/// The outcome of a solve or decision.
pub struct LtResult(SolveResult);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn status_of(e: &Error) -> LtStatus {
    match e {
        Error::Parse { .. } | Error::InvalidTree(_) => LtStatus::Parse,
        Error::Invariant(_) => LtStatus::Internal,
        _ => LtStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (LtStatus, String)>) -> LtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LtStatus::Ok,
        Ok(Err((st, msg))) => {
            set_error(msg);
            st
        }
        Err(_) => {
            set_error("panic inside lambdatree");
            LtStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (LtStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (LtStatus, String) {
    (LtStatus::NullPointer, format!("{what} is null"))
}

fn config(alg: LtAlgorithm) -> SolveConfig {
    SolveConfig::with_algorithm(match alg {
        LtAlgorithm::Auto => Algorithm::Auto,
        LtAlgorithm::Ck => Algorithm::Ck,
        LtAlgorithm::Fast => Algorithm::Fast,
        LtAlgorithm::Linear => Algorithm::Linear,
    })
}

/// Message for the last failed call on this thread; empty if none. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn lt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses the edge-list text format (`n`, then `n-1` lines `u v`).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lt_tree_parse(text: *const c_char, out: *mut *mut LtTree) -> LtStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return Err(null("argument"));
        }
        let s = CStr::from_ptr(text).to_str().map_err(|e| (LtStatus::Parse, e.to_string()))?;
        let t = parse_tree(s).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(LtTree(t)));
        Ok(())
    })
}

/// Builds a tree from `n-1` edges stored as `2(n-1)` consecutive vertex ids.
///
/// # Safety
/// `edges` must point to `2*(n-1)` readable values (it may be null when `n == 1`).
#[no_mangle]
pub unsafe extern "C" fn lt_tree_from_edges(n: usize, edges: *const u32, out: *mut *mut LtTree) -> LtStatus {
    guard(|| {
        if out.is_null() || (edges.is_null() && n > 1) {
            return Err(null("argument"));
        }
        if n == 0 {
            return Err((LtStatus::InvalidArgument, "n must be at least 1".into()));
        }
        let raw: &[u32] = if n > 1 { std::slice::from_raw_parts(edges, 2 * (n - 1)) } else { &[] };
        let pairs: Vec<(usize, usize)> = raw.chunks_exact(2).map(|c| (c[0] as usize, c[1] as usize)).collect();
        let t = Tree::from_edges(n, &pairs).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(LtTree(t)));
        Ok(())
    })
}

/// Generates a tree; `delta == 0` means no target degree.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lt_tree_generate(
    kind: LtTreeKind,
    n: usize,
    delta: usize,
    seed: u64,
    out: *mut *mut LtTree,
) -> LtStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let kind = match kind {
            LtTreeKind::Path => TreeKind::Path,
            LtTreeKind::Star => TreeKind::Star,
            LtTreeKind::Caterpillar => TreeKind::Caterpillar,
            LtTreeKind::Broom => TreeKind::Broom,
            LtTreeKind::Random => TreeKind::Random,
            LtTreeKind::V45Stress => TreeKind::V45Stress,
        };
        let t = generate_tree(kind, n, (delta > 0).then_some(delta), seed).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(LtTree(t)));
        Ok(())
    })
}

/// # Safety
/// `t` must come from an `lt_tree_*` constructor and not be freed yet; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lt_tree_free(t: *mut LtTree) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Vertex count; 0 for null.
///
/// # Safety
/// `t` must be a live tree handle or null.
#[no_mangle]
pub unsafe extern "C" fn lt_tree_vertex_count(t: *const LtTree) -> usize {
    t.as_ref().map_or(0, |t| t.0.vertex_count())
}

/// # Safety
/// `t` must be a live tree handle or null.
#[no_mangle]
pub unsafe extern "C" fn lt_tree_max_degree(t: *const LtTree) -> usize {
    t.as_ref().map_or(0, |t| t.0.max_degree())
}

unsafe fn solve_into(
    t: *const LtTree,
    out: *mut *mut LtResult,
    f: impl FnOnce(&Tree) -> lambdatree::Result<SolveResult>,
) -> LtStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("tree"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let r = f(&t.0).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(LtResult(r)));
        Ok(())
    })
}

/// Optimal L(2,1) span with a witness.
///
/// # Safety
/// `t` must be a live tree handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lt_solve_l21(t: *const LtTree, alg: LtAlgorithm, out: *mut *mut LtResult) -> LtStatus {
    solve_into(t, out, |t| solve_l21_with(t, &config(alg)))
}

/// Optimal L(p,1) span with a witness.
///
/// # Safety
/// `t` must be a live tree handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lt_solve_lp1(t: *const LtTree, p: u32, alg: LtAlgorithm, out: *mut *mut LtResult) -> LtStatus {
    solve_into(t, out, |t| solve_lp1_with(t, p, &config(alg)))
}

/// Decides whether a labeling of span `lambda` exists.
///
/// # Safety
/// `t` must be a live tree handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lt_decide(
    t: *const LtTree,
    p: u32,
    lambda: u32,
    alg: LtAlgorithm,
    want_witness: bool,
    out: *mut *mut LtResult,
) -> LtStatus {
    solve_into(t, out, |t| decide_lambda(t, p, lambda, &config(alg), want_witness))
}

/// # Safety
/// `r` must be a live result handle or null.
#[no_mangle]
pub unsafe extern "C" fn lt_result_feasible(r: *const LtResult) -> bool {
    r.as_ref().is_some_and(|r| r.0.feasible)
}

/// The span that was solved or decided.
///
/// # Safety
/// `r` must be a live result handle or null.
#[no_mangle]
pub unsafe extern "C" fn lt_result_lambda(r: *const LtResult) -> u32 {
    r.as_ref().map_or(0, |r| r.0.lambda)
}

/// Copies the witness labels into `buf` (one per vertex). `*len` holds the buffer length on
/// entry and the label count on return, also when the buffer is too small.
///
/// # Safety
/// `r` must be a live result handle; `buf` must have room for `*len` values.
#[no_mangle]
pub unsafe extern "C" fn lt_result_labels(r: *const LtResult, buf: *mut u32, len: *mut usize) -> LtStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("result"))?;
        if len.is_null() {
            return Err(null("len"));
        }
        let w = r.0.witness.as_ref().ok_or((LtStatus::NoWitness, "result carries no witness".into()))?;
        let cap = *len;
        *len = w.labels.len();
        if cap < w.labels.len() || buf.is_null() {
            return Err((LtStatus::BufferTooSmall, format!("need room for {} labels", w.labels.len())));
        }
        ptr::copy_nonoverlapping(w.labels.as_ptr(), buf, w.labels.len());
        Ok(())
    })
}

/// # Safety
/// `r` must come from a solve/decide call and not be freed yet; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lt_result_free(r: *mut LtResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Checks an L(p,q)-labeling with all labels at most `lambda`; the answer goes to `*valid`.
///
/// # Safety
/// `t` must be a live tree handle; `labels` must hold `len` values; `valid` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lt_validate(
    t: *const LtTree,
    labels: *const u32,
    len: usize,
    lambda: u32,
    p: u32,
    q: u32,
    valid: *mut bool,
) -> LtStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("tree"))?;
        if labels.is_null() || valid.is_null() {
            return Err(null("argument"));
        }
        let f = Labeling { lambda, labels: std::slice::from_raw_parts(labels, len).to_vec() };
        *valid = validate_labeling(&t.0, &f, p, q).map_err(lib_err)?;
        Ok(())
    })
}
