//! C interface to the homex library.
//!
//! Complexes cross the boundary as opaque `HomexComplex` handles owned by the
//! caller and released with `homex_complex_free`. Every fallible function
//! returns a `HomexStatus`; on failure a description is available from
//! `homex_last_error_message` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use homex::complex::{ComplexError, SimplicialComplex, Vertex};
use homex::connectivity::{is_strongly_connected, ConnectivityError};
use homex::constructions::{
    bound_pure, bound_rel, bound_strong, build_mh, build_ms, build_rel, build_suspension_example,
    connectivity_threshold, Construction, ConstructionError,
};
use homex::homology::{homology_group, is_homology_nontrivial};
use homex::io::{parse_auto, LabeledComplex, ParseError};
use homex::search::{find_minimal_witness, SearchError, SearchMode, SearchOptions};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomexStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    DomainError = 4,
    CapacityError = 5,
    VerificationFailed = 6,
    BufferTooSmall = 7,
    Internal = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomexSearchMode {
    Pure = 0,
    /// Strongly connected with respect to the `m` argument.
    Strong = 1,
}

/// A simplicial complex with vertex labels.
pub struct HomexComplex {
    inner: LabeledComplex,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(HomexStatus, String);

type FfiResult<T> = Result<T, Failure>;

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure(HomexStatus::ParseError, e.to_string())
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        Failure(HomexStatus::InvalidArgument, e.to_string())
    }
}

impl From<ConnectivityError> for Failure {
    fn from(e: ConnectivityError) -> Self {
        Failure(HomexStatus::DomainError, e.to_string())
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        let status = match e {
            ConstructionError::Postcondition { .. } => HomexStatus::Internal,
            _ => HomexStatus::DomainError,
        };
        Failure(status, e.to_string())
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        let status = match e {
            SearchError::Capacity { .. } | SearchError::TooManyCandidates { .. } | SearchError::NoWitness { .. } => {
                HomexStatus::CapacityError
            }
            SearchError::TooFewVertices { .. } => HomexStatus::InvalidArgument,
            SearchError::Domain(ref inner) => return Failure::from(inner.clone()),
            SearchError::BoundMismatch { .. } => HomexStatus::VerificationFailed,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(HomexStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, records any failure and turns panics into `Internal`.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> HomexStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HomexStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal error: {message}"));
            HomexStatus::Internal
        }
    }
}

unsafe fn complex_ref<'a>(x: *const HomexComplex) -> FfiResult<&'a HomexComplex> {
    x.as_ref().ok_or_else(|| null("complex"))
}

unsafe fn write<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn emit(out: *mut *mut HomexComplex, inner: LabeledComplex) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(HomexComplex { inner })));
    Ok(())
}

/// Message for the most recent failed call on this thread, or null. The
/// pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn homex_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a complex from `num_facets` faces stored back to back in
/// `vertices`; face `i` has `sizes[i]` vertices. Faces contained in others are
/// absorbed.
///
/// # Safety
/// `vertices` must point to `sum(sizes)` readable values and `sizes` to
/// `num_facets`; either may be null when `num_facets` is zero.
#[no_mangle]
pub unsafe extern "C" fn homex_complex_from_facets(
    vertices: *const u32,
    sizes: *const usize,
    num_facets: usize,
    out: *mut *mut HomexComplex,
) -> HomexStatus {
    guard(|| {
        if num_facets == 0 {
            return emit(out, LabeledComplex::plain(SimplicialComplex::empty()));
        }
        if sizes.is_null() {
            return Err(null("sizes"));
        }
        let sizes = std::slice::from_raw_parts(sizes, num_facets);
        let total: usize = sizes.iter().sum();
        if vertices.is_null() && total > 0 {
            return Err(null("vertices"));
        }
        let flat: &[Vertex] = if total == 0 { &[] } else { std::slice::from_raw_parts(vertices, total) };
        let mut lists = Vec::with_capacity(num_facets);
        let mut at = 0;
        for &s in sizes {
            lists.push(flat[at..at + s].to_vec());
            at += s;
        }
        let x = SimplicialComplex::try_from_lists(lists)?;
        emit(out, LabeledComplex::plain(x))
    })
}

/// Parses facet-list text (".sc" lines or the JSON form).
///
/// # Safety
/// `text` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn homex_complex_parse(text: *const c_char, out: *mut *mut HomexComplex) -> HomexStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Failure(HomexStatus::InvalidArgument, format!("text is not UTF-8: {e}")))?;
        emit(out, parse_auto(text)?)
    })
}

/// Releases a complex. Null is ignored.
///
/// # Safety
/// `x` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn homex_complex_free(x: *mut HomexComplex) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn homex_complex_num_vertices(x: *const HomexComplex, out: *mut usize) -> HomexStatus {
    guard(|| write(out, complex_ref(x)?.inner.complex.num_vertices()))
}

/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn homex_complex_num_facets(x: *const HomexComplex, out: *mut usize) -> HomexStatus {
    guard(|| write(out, complex_ref(x)?.inner.complex.facets().len()))
}

/// Dimension, or -1 for the empty complex.
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn homex_complex_dim(x: *const HomexComplex, out: *mut i64) -> HomexStatus {
    guard(|| write(out, complex_ref(x)?.inner.complex.dim().map_or(-1, |d| d as i64)))
}

/// The facet list in ".sc" form with the complex's labels. Free the result
/// with `homex_string_free`.
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn homex_complex_to_sc(x: *const HomexComplex, out: *mut *mut c_char) -> HomexStatus {
    guard(|| {
        let text = complex_ref(x)?.inner.to_sc();
        let c = CString::new(text).map_err(|e| Failure(HomexStatus::Internal, e.to_string()))?;
        write(out, c.into_raw())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn homex_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn emit_construction(
    out: *mut *mut HomexComplex,
    build: impl FnOnce() -> Result<Construction, ConstructionError>,
) -> HomexStatus {
    guard(|| emit(out, build()?.labeled()))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn homex_build_mh(d: usize, k: usize, out: *mut *mut HomexComplex) -> HomexStatus {
    emit_construction(out, || build_mh(d, k))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn homex_build_ms(d: usize, k: usize, out: *mut *mut HomexComplex) -> HomexStatus {
    emit_construction(out, || build_ms(d, k))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn homex_build_rel(d: usize, k: usize, m: usize, out: *mut *mut HomexComplex) -> HomexStatus {
    emit_construction(out, || build_rel(d, k, m))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn homex_build_suspension(d: usize, k: usize, out: *mut *mut HomexComplex) -> HomexStatus {
    emit_construction(out, || build_suspension_example(d, k))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn homex_bound_pure(d: usize, k: usize, out: *mut usize) -> HomexStatus {
    guard(|| write(out, bound_pure(d, k)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn homex_bound_strong(d: usize, k: usize, out: *mut usize) -> HomexStatus {
    guard(|| write(out, bound_strong(d, k)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn homex_bound_rel(d: usize, k: usize, m: usize, out: *mut usize) -> HomexStatus {
    guard(|| write(out, bound_rel(d, k, m)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn homex_connectivity_threshold(d: usize, k: usize, out: *mut usize) -> HomexStatus {
    guard(|| write(out, connectivity_threshold(d, k)?))
}

/// Betti number and torsion coefficients of `H_degree`. The torsion list is
/// written to `torsion` when `torsion_cap` suffices; `torsion_len` always
/// receives its length, and a short buffer gives `BufferTooSmall`.
///
/// # Safety
/// `x` must be a live handle, `betti` and `torsion_len` writable, and
/// `torsion` valid for `torsion_cap` writes (or null when the cap is zero).
#[no_mangle]
pub unsafe extern "C" fn homex_homology_group(
    x: *const HomexComplex,
    degree: usize,
    reduced: bool,
    betti: *mut usize,
    torsion: *mut u64,
    torsion_cap: usize,
    torsion_len: *mut usize,
) -> HomexStatus {
    guard(|| {
        let g = homology_group(&complex_ref(x)?.inner.complex, degree, reduced);
        write(betti, g.betti)?;
        write(torsion_len, g.torsion.len())?;
        if g.torsion.len() > torsion_cap {
            return Err(Failure(
                HomexStatus::BufferTooSmall,
                format!("{} torsion coefficients, buffer holds {torsion_cap}", g.torsion.len()),
            ));
        }
        if !g.torsion.is_empty() {
            if torsion.is_null() {
                return Err(null("torsion"));
            }
            std::slice::from_raw_parts_mut(torsion, g.torsion.len()).copy_from_slice(&g.torsion);
        }
        Ok(())
    })
}

/// Whether reduced `H_k` is nonzero.
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn homex_is_homology_nontrivial(x: *const HomexComplex, k: usize, out: *mut bool) -> HomexStatus {
    guard(|| write(out, is_homology_nontrivial(&complex_ref(x)?.inner.complex, k)))
}

/// Whether the facets are connected through shared faces of dimension
/// `m-1`. Fails when some facet has dimension below `m`.
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn homex_is_strongly_connected(x: *const HomexComplex, m: usize, out: *mut bool) -> HomexStatus {
    guard(|| write(out, is_strongly_connected(&complex_ref(x)?.inner.complex, m)?))
}

/// Exhaustively finds the fewest vertices of a complex in the class with
/// nonzero `H_k` and checks it against the closed-form bound. `m` is read only
/// in strong mode; `max_n = 0` uses the default cap and `jobs = 0` all cores.
/// A mismatch gives `VerificationFailed` with `n_min` still written. The
/// witness is written when `witness` is not null.
///
/// # Safety
/// `n_min` must be writable; `witness` may be null.
#[no_mangle]
pub unsafe extern "C" fn homex_find_minimal_witness(
    d: usize,
    k: usize,
    mode: HomexSearchMode,
    m: usize,
    max_n: usize,
    jobs: usize,
    n_min: *mut usize,
    witness: *mut *mut HomexComplex,
) -> HomexStatus {
    guard(|| {
        if n_min.is_null() {
            return Err(null("n_min"));
        }
        let mode = match mode {
            HomexSearchMode::Pure => SearchMode::Pure,
            HomexSearchMode::Strong => SearchMode::Strong(m),
        };
        let mut opts = SearchOptions { jobs, ..SearchOptions::default() };
        if max_n > 0 {
            opts.max_n = max_n;
        }
        match find_minimal_witness(d, k, mode, &opts) {
            Ok(w) => {
                n_min.write(w.n_min);
                if !witness.is_null() {
                    emit(witness, LabeledComplex::plain(w.witness))?;
                }
                Ok(())
            }
            Err(e) => {
                if let SearchError::BoundMismatch { found, .. } = e {
                    n_min.write(found);
                }
                Err(e.into())
            }
        }
    })
}
