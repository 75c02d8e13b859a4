//! C ABI over the stepgraphon library.
//!
//! Objects cross the boundary as opaque handles that the caller releases
//! with the matching `*_free` function. Every fallible call returns an
//! [`SgStatus`]; on failure a message is available from
//! [`sg_last_error_message`] until the next call on the same thread.
//! Exact values are returned as `p/q` strings (or `inf`) owned by the caller
//! and released with [`sg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use stepgraphon::convergence::{cut_norm, sample};
use stepgraphon::densities::{density, induced_density};
use stepgraphon::fractional::{fractional_chromatic, fractional_clique};
use stepgraphon::graph::FiniteGraph;
use stepgraphon::integral::{chromatic_number, clique_number, independence_number};
use stepgraphon::perfection::{inheritance_perfect, subgraph_perfect_up_to};
use stepgraphon::polyton::{membership, BlockPoint};
use stepgraphon::rational::{fmt_extended, fmt_fraction, parse_rational};
use stepgraphon::{io, Error, StepGraphon};

/// Opaque step graphon.
pub struct SgGraphon(StepGraphon);

/// Opaque finite simple graph.
pub struct SgGraph(FiniteGraph);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidGraphon = 4,
    InvalidArgument = 5,
    TooLarge = 6,
    /// The simplex pivot limit or the b-fold colour ceiling was reached.
    Budget = 7,
    /// An internal consistency check failed. Always a bug.
    Invariant = 8,
    Panic = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn status_of(error: &Error) -> SgStatus {
    match error {
        Error::Parse { .. } | Error::Io { .. } => SgStatus::Parse,
        Error::NonSymmetric { .. }
        | Error::OutOfRange { .. }
        | Error::BadMeasure { .. }
        | Error::Shape { .. }
        | Error::InvalidGraph(_) => SgStatus::InvalidGraphon,
        Error::TooLarge { .. } | Error::TooManyBlocks { .. } => SgStatus::TooLarge,
        Error::PivotLimit(_) | Error::SearchCeiling { .. } => SgStatus::Budget,
        Error::Invariant(_) => SgStatus::Invariant,
        _ => SgStatus::InvalidArgument,
    }
}

struct Failure(SgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs `body`, records any failure, and converts panics into `Panic`.
fn guard(body: impl FnOnce() -> Outcome) -> SgStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    let failure = match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => return SgStatus::Ok,
        Ok(Err(f)) => f,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            Failure(SgStatus::Panic, format!("panic: {message}"))
        }
    };
    set_error(failure.1);
    failure.0
}

fn null(what: &str) -> Failure {
    Failure(SgStatus::NullPointer, format!("{what} is null"))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> std::result::Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> std::result::Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SgStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, value: String) -> Outcome {
    let c = CString::new(value).expect("formatted values contain no nul");
    put(out, c.into_raw())
}

/// Message for the last failed call on this thread, or null. Borrowed; valid
/// until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graphon in the `blocks`/`measures` text format.
///
/// # Safety
/// `source` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_graphon_parse(source: *const c_char, out: *mut *mut SgGraphon) -> SgStatus {
    guard(|| {
        let w = io::parse_graphon(text(source, "source")?)?;
        put(out, Box::into_raw(Box::new(SgGraphon(w))))
    })
}

/// # Safety
/// `w` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn sg_graphon_free(w: *mut SgGraphon) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Parses a finite graph in the `vertices` text format.
///
/// # Safety
/// `source` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_parse(source: *const c_char, out: *mut *mut SgGraph) -> SgStatus {
    guard(|| {
        let g = io::parse_graph(text(source, "source")?)?;
        put(out, Box::into_raw(Box::new(SgGraph(g))))
    })
}

/// # Safety
/// `g` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_free(g: *mut SgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_graphon_blocks(w: *const SgGraphon, out: *mut usize) -> SgStatus {
    guard(|| put(out, borrow(w, "graphon")?.0.blocks()))
}

/// Serializes the graphon back to its text format.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_graphon_to_string(w: *const SgGraphon, out: *mut *mut c_char) -> SgStatus {
    guard(|| put_string(out, io::write_graphon(&borrow(w, "graphon")?.0)))
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_to_string(g: *const SgGraph, out: *mut *mut c_char) -> SgStatus {
    guard(|| put_string(out, io::write_graph(&borrow(g, "graph")?.0)))
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgParameter {
    /// Independence ratio.
    Alpha = 0,
    Chromatic = 1,
    Clique = 2,
    FractionalChromatic = 3,
    FractionalClique = 4,
}

/// Exact value of a graphon parameter as `p/q`, or `inf`.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_parameter(w: *const SgGraphon, parameter: SgParameter, out: *mut *mut c_char) -> SgStatus {
    guard(|| {
        let w = &borrow(w, "graphon")?.0;
        let value = match parameter {
            SgParameter::Alpha => fmt_fraction(&independence_number(w)?.value),
            SgParameter::Chromatic => fmt_extended(&chromatic_number(w)?.value),
            SgParameter::Clique => fmt_extended(&clique_number(w)?.value),
            SgParameter::FractionalChromatic => fmt_extended(&fractional_chromatic(w)?.value),
            SgParameter::FractionalClique => fmt_extended(&fractional_clique(w)?.value),
        };
        put_string(out, value)
    })
}

/// Homomorphism density of `h` in `w`, or the induced density when
/// `induced` is set.
///
/// # Safety
/// `h` and `w` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_density(
    h: *const SgGraph,
    w: *const SgGraphon,
    induced: bool,
    out: *mut *mut c_char,
) -> SgStatus {
    guard(|| {
        let (h, w) = (&borrow(h, "pattern")?.0, &borrow(w, "graphon")?.0);
        let value = if induced { induced_density(h, w)? } else { density(h, w)? };
        put_string(out, fmt_fraction(&value))
    })
}

/// Exact cut distance between `a` and `b` over their common refinement,
/// without relabeling.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_cut_norm(a: *const SgGraphon, b: *const SgGraphon, out: *mut *mut c_char) -> SgStatus {
    guard(|| {
        let value = cut_norm(&borrow(a, "graphon a")?.0, &borrow(b, "graphon b")?.0)?.value;
        put_string(out, fmt_fraction(&value))
    })
}

/// Whether no odd hole or antihole of length at most `upto` has positive
/// induced density. `upto` must be odd and at least 5.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_subgraph_perfect(w: *const SgGraphon, upto: usize, out: *mut bool) -> SgStatus {
    guard(|| put(out, subgraph_perfect_up_to(&borrow(w, "graphon")?.0, upto)?.perfect))
}

/// Whether every restriction has equal chromatic and clique numbers.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_inheritance_perfect(w: *const SgGraphon, out: *mut bool) -> SgStatus {
    guard(|| put(out, inheritance_perfect(&borrow(w, "graphon")?.0)?.perfect))
}

/// Polyton membership of the block-constant point whose coordinates are the
/// `len` rational strings in `coordinates`.
///
/// # Safety
/// `w` must be a live handle; `coordinates` must point to `len` valid
/// strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_polyton_contains(
    w: *const SgGraphon,
    coordinates: *const *const c_char,
    len: usize,
    out: *mut bool,
) -> SgStatus {
    guard(|| {
        let w = &borrow(w, "graphon")?.0;
        if coordinates.is_null() && len > 0 {
            return Err(null("coordinates"));
        }
        let mut point = Vec::with_capacity(len);
        for i in 0..len {
            let s = text(*coordinates.add(i), "coordinate")?;
            let value = parse_rational(s).ok_or_else(|| {
                Failure(SgStatus::InvalidArgument, format!("coordinate {i} is not a rational: {s:?}"))
            })?;
            point.push(value);
        }
        put(out, membership(&BlockPoint(point), w)?.is_member())
    })
}

/// Samples an `n`-vertex graph from `w` with a seeded generator.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_sample(w: *const SgGraphon, n: usize, seed: u64, out: *mut *mut SgGraph) -> SgStatus {
    guard(|| {
        let s = sample(&borrow(w, "graphon")?.0, n, seed)?;
        put(out, Box::into_raw(Box::new(SgGraph(s.graph))))
    })
}
