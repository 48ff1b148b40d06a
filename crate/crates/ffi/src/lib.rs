//! C ABI over the isozeta library.
//!
//! Every function returns an [`IsozetaStatus`] code; results come back
//! through out-pointers. Objects are opaque handles released with their
//! `_free` function, and strings returned to the caller are released with
//! [`isozeta_string_free`]. After a failure, [`isozeta_last_error`] describes
//! it on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use isozeta::field::FieldTower;
use isozeta::graph::{export_graph, ExportFormat, LevelGraph, Manifest};
use isozeta::modsym::ManinSpace;
use isozeta::verify::{check_parameters, VerificationJob, VerificationReport};
use isozeta::Error;

/// Status codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsozetaStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Parameters violate a documented constraint.
    InvalidArgument = 2,
    /// An internal consistency check failed.
    Internal = 3,
    /// The request is outside what is implemented.
    Unsupported = 4,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 5,
    /// A Rust panic was caught at the boundary.
    Panic = 6,
    /// Any other failure.
    Other = 7,
}

/// A supersingular isogeny graph with its Brandt matrix.
pub struct IsozetaGraph {
    graph: LevelGraph,
    manifest: Manifest,
}

/// A verification report.
pub struct IsozetaReport {
    report: VerificationReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> IsozetaStatus {
    match err {
        Error::Precondition(_) | Error::UnknownFormat(_) | Error::UnsupportedJ(_) => {
            IsozetaStatus::InvalidArgument
        }
        Error::Unsupported(_) => IsozetaStatus::Unsupported,
        e if e.is_internal() => IsozetaStatus::Internal,
        _ => IsozetaStatus::Other,
    }
}

fn guard<F: FnOnce() -> Result<(), IsozetaStatus>>(f: F) -> IsozetaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => IsozetaStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("panic inside isozeta".into());
            IsozetaStatus::Panic
        }
    }
}

fn fail(err: Error) -> IsozetaStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

fn null() -> IsozetaStatus {
    set_error("null pointer argument".into());
    IsozetaStatus::NullPointer
}

fn give_string(s: String, out: *mut *mut c_char) -> Result<(), IsozetaStatus> {
    let c = CString::new(s).map_err(|_| fail(Error::Internal("string contains nul".into())))?;
    // SAFETY: caller checked `out` is non-null
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn isozeta_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn isozeta_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds `X_p^q(N)` and its Brandt matrix `B_p`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn isozeta_graph_build(
    p: u64,
    q: u64,
    n: u64,
    seed: u64,
    out: *mut *mut IsozetaGraph,
) -> IsozetaStatus {
    if out.is_null() {
        return null();
    }
    guard(|| {
        check_parameters(p, q, n).map_err(fail)?;
        let tower = FieldTower::new(q, seed).map_err(fail)?;
        let graph = LevelGraph::build(&tower, p, n).map_err(fail)?;
        let manifest = graph.manifest(&tower);
        *out = Box::into_raw(Box::new(IsozetaGraph { graph, manifest }));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from [`isozeta_graph_build`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn isozeta_graph_free(g: *mut IsozetaGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isozeta_graph_vertex_count(g: *const IsozetaGraph, out: *mut usize) -> IsozetaStatus {
    if g.is_null() || out.is_null() {
        return null();
    }
    *out = (*g).graph.vertices.len();
    IsozetaStatus::Ok
}

/// Entry `(i, j)` of the Brandt matrix.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isozeta_graph_brandt_entry(
    g: *const IsozetaGraph,
    i: usize,
    j: usize,
    out: *mut i64,
) -> IsozetaStatus {
    if g.is_null() || out.is_null() {
        return null();
    }
    let b = &(*g).graph.brandt;
    if i >= b.rows() || j >= b.cols() {
        return fail(Error::Precondition(format!("index ({i}, {j}) outside {}x{}", b.rows(), b.cols())));
    }
    match i64::try_from(b.get(i, j)) {
        Ok(v) => {
            *out = v;
            IsozetaStatus::Ok
        }
        Err(_) => fail(Error::Internal("entry does not fit in 64 bits".into())),
    }
}

/// `2χ` of the graph.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isozeta_graph_euler_char_times_2(g: *const IsozetaGraph, out: *mut i64) -> IsozetaStatus {
    if g.is_null() || out.is_null() {
        return null();
    }
    *out = (*g).graph.euler_char_times_2();
    IsozetaStatus::Ok
}

/// Serializes the graph as `"json"`, `"dot"` or `"csv"`.
///
/// # Safety
/// `g` must be a live handle, `format` a NUL-terminated string and `out`
/// writable. The result must be released with [`isozeta_string_free`].
#[no_mangle]
pub unsafe extern "C" fn isozeta_graph_export(
    g: *const IsozetaGraph,
    format: *const c_char,
    out: *mut *mut c_char,
) -> IsozetaStatus {
    if g.is_null() || format.is_null() || out.is_null() {
        return null();
    }
    guard(|| {
        let fmt = CStr::from_ptr(format).to_str().map_err(|_| {
            set_error("format is not UTF-8".into());
            IsozetaStatus::InvalidUtf8
        })?;
        let fmt: ExportFormat = fmt.parse().map_err(fail)?;
        let g = &*g;
        let bytes = export_graph(&g.graph, &g.manifest, fmt).map_err(fail)?;
        give_string(String::from_utf8(bytes).expect("exports are UTF-8"), out)
    })
}

/// Runs every identity check for `(p, q, N)`. A report is produced even when
/// checks fail; query it with [`isozeta_report_passed`].
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn isozeta_verify(
    p: u64,
    q: u64,
    n: u64,
    seed: u64,
    out: *mut *mut IsozetaReport,
) -> IsozetaStatus {
    if out.is_null() {
        return null();
    }
    guard(|| {
        let job = VerificationJob::new(p, q, n, seed).map_err(fail)?;
        let report = job.run();
        *out = Box::into_raw(Box::new(IsozetaReport { report }));
        Ok(())
    })
}

/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isozeta_report_passed(r: *const IsozetaReport, out: *mut bool) -> IsozetaStatus {
    if r.is_null() || out.is_null() {
        return null();
    }
    *out = (*r).report.passed;
    IsozetaStatus::Ok
}

/// The report as JSON.
///
/// # Safety
/// `r` must be a live handle and `out` writable. Release the result with
/// [`isozeta_string_free`].
#[no_mangle]
pub unsafe extern "C" fn isozeta_report_json(r: *const IsozetaReport, out: *mut *mut c_char) -> IsozetaStatus {
    if r.is_null() || out.is_null() {
        return null();
    }
    guard(|| give_string((*r).report.to_json(), out))
}

/// # Safety
/// `r` must be null or a handle from [`isozeta_verify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn isozeta_report_free(r: *mut IsozetaReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Characteristic polynomial of `T_ℓ` on the plus part of `S₂(Γ₀(M))` as JSON
/// `{"level": M, "ell": ℓ, "charpoly": [...]}`, coefficients ascending.
///
/// # Safety
/// `out` must be writable. Release the result with [`isozeta_string_free`].
#[no_mangle]
pub unsafe extern "C" fn isozeta_hecke_charpoly_json(level: u64, ell: u64, out: *mut *mut c_char) -> IsozetaStatus {
    if out.is_null() {
        return null();
    }
    guard(|| {
        if level == 0 {
            return Err(fail(Error::Precondition("level must be positive".into())));
        }
        let space = ManinSpace::new(level).map_err(fail)?;
        let chi = space.hecke_charpoly(ell).map_err(fail)?;
        let coeffs: Vec<String> = chi.coeffs().iter().map(ToString::to_string).collect();
        let json = serde_json::json!({ "level": level, "ell": ell, "charpoly": coeffs });
        give_string(json.to_string(), out)
    })
}
