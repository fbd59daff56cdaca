//! C ABI over the `wlpa` kernel.
//!
//! Graphs and algebras are opaque handles released with their `_free`
//! function. Every fallible call returns a [`WlpaStatus`]; on failure the
//! message is available from [`wlpa_last_error_message`] on the same
//! thread. Strings returned through `out` parameters are owned by the
//! caller and released with [`wlpa_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use wlpa::classify::wlpa_classify;
use wlpa::expr::parse_expression;
use wlpa::format::parse_graph;
use wlpa::grading::{local_valuation, ValuationValue};
use wlpa::graph::WeightedGraph;
use wlpa::rewrite::ReductionSystem;
use wlpa::ring::{Ring, RingError};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WlpaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Precondition = 4,
    Internal = 5,
}

/// A validated weighted graph.
pub struct WlpaGraph {
    graph: Arc<WeightedGraph>,
}

/// The reduction system of a graph over a coefficient ring.
pub struct WlpaAlgebra {
    system: ReductionSystem,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(WlpaStatus, String);

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> WlpaStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => WlpaStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            WlpaStatus::Internal
        }
    }
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(WlpaStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(WlpaStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(WlpaStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out_ptr<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure(WlpaStatus::NullPointer, "output pointer is null".into()))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s)
        .expect("printed elements contain no NUL")
        .into_raw()
}

fn parse_ring(s: &str) -> Result<Ring, Failure> {
    s.parse().map_err(|e: RingError| {
        let status = match e {
            RingError::NotPrime(_) | RingError::ModulusTooLarge(_) => WlpaStatus::Precondition,
            _ => WlpaStatus::Parse,
        };
        Failure(status, e.to_string())
    })
}

/// Parses a graph file. On success `*out` receives a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wlpa_graph_parse(
    text: *const c_char,
    out: *mut *mut WlpaGraph,
) -> WlpaStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let src = c_str(text, "graph text")?;
        let graph = parse_graph(src).map_err(|e| Failure(WlpaStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(WlpaGraph {
            graph: Arc::new(graph),
        }));
        Ok(())
    })
}

/// # Safety
/// `graph` must come from [`wlpa_graph_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wlpa_graph_free(graph: *mut WlpaGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Builds the algebra of `graph` over `ring` (`"Z"`, `"Q"` or `"Fp:<p>"`).
/// The algebra keeps its own reference to the graph.
///
/// # Safety
/// `graph` must be a live handle, `ring` a NUL-terminated string and `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wlpa_algebra_new(
    graph: *const WlpaGraph,
    ring: *const c_char,
    out: *mut *mut WlpaAlgebra,
) -> WlpaStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let g = handle(graph, "graph")?;
        let ring = parse_ring(c_str(ring, "ring")?)?;
        *out = Box::into_raw(Box::new(WlpaAlgebra {
            system: ReductionSystem::new(g.graph.clone(), ring),
        }));
        Ok(())
    })
}

/// # Safety
/// `algebra` must come from [`wlpa_algebra_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wlpa_algebra_free(algebra: *mut WlpaAlgebra) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}

unsafe fn element(
    rs: &ReductionSystem,
    p: *const c_char,
    what: &str,
) -> Result<wlpa::element::Element, Failure> {
    parse_expression(rs.graph(), rs.ring(), c_str(p, what)?)
        .map_err(|e| Failure(WlpaStatus::Parse, e.to_string()))
}

/// Normal form of `expr`, printed in the expression syntax.
///
/// # Safety
/// Pointers must be valid; `expr` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn wlpa_normal_form(
    algebra: *const WlpaAlgebra,
    expr: *const c_char,
    out: *mut *mut c_char,
) -> WlpaStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let rs = &handle(algebra, "algebra")?.system;
        let nf = rs.normal_form(&element(rs, expr, "expression")?);
        *out = to_c(nf.display(rs.graph()).to_string());
        Ok(())
    })
}

/// Normal form of the product `left · right`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn wlpa_multiply(
    algebra: *const WlpaAlgebra,
    left: *const c_char,
    right: *const c_char,
    out: *mut *mut c_char,
) -> WlpaStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let rs = &handle(algebra, "algebra")?.system;
        let a = element(rs, left, "left operand")?;
        let b = element(rs, right, "right operand")?;
        *out = to_c(rs.multiply(&a, &b).display(rs.graph()).to_string());
        Ok(())
    })
}

/// Local valuation of `expr`; `-1` stands for `-inf` (the zero element).
///
/// # Safety
/// Pointers must be valid; `expr` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn wlpa_valuation(
    algebra: *const WlpaAlgebra,
    expr: *const c_char,
    out: *mut i64,
) -> WlpaStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let rs = &handle(algebra, "algebra")?.system;
        *out = match local_valuation(rs, &element(rs, expr, "expression")?) {
            ValuationValue::NegInf => -1,
            ValuationValue::Finite(n) => i64::try_from(n)
                .map_err(|_| Failure(WlpaStatus::Internal, "valuation overflows i64".into()))?,
        };
        Ok(())
    })
}

/// Classification report of `graph` over `ring` as JSON.
///
/// # Safety
/// Pointers must be valid; `ring` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn wlpa_classify_json(
    graph: *const WlpaGraph,
    ring: *const c_char,
    out: *mut *mut c_char,
) -> WlpaStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let g = handle(graph, "graph")?;
        let ring = parse_ring(c_str(ring, "ring")?)?;
        *out = to_c(wlpa_classify(&g.graph, ring).to_json());
        Ok(())
    })
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn wlpa_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be a string returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn wlpa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
