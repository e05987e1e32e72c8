//! C interface: opaque algebra handles, integer status codes and a per-thread error message.
//!
//! Strings returned by the library are owned by the caller and released with
//! `vlalg_string_free`. Handles are released with `vlalg_algebra_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use vlalg::cli::{self, AlgebraFile, Axiom, BuiltinName, BuiltinParams, CheckOptions};
use vlalg::conecalc::h_dim;
use vlalg::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VlalgStatus {
    Ok = 0,
    /// A check ran and found a violated axiom.
    Violation = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    Argument = 4,
    Parse = 5,
    Domain = 6,
    Construction = 7,
    Precondition = 8,
    Truncation = 9,
    Workspace = 10,
    Panic = 11,
}

/// A parsed or built algebra.
pub struct VlalgAlgebra(AlgebraFile);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> VlalgStatus {
    match e {
        Error::Workspace(_) => VlalgStatus::Workspace,
        Error::Argument(_) => VlalgStatus::Argument,
        Error::Domain(_) => VlalgStatus::Domain,
        Error::Truncation(_) => VlalgStatus::Truncation,
        Error::Construction(_) => VlalgStatus::Construction,
        Error::Precondition(_) => VlalgStatus::Precondition,
        Error::Parse(_) => VlalgStatus::Parse,
    }
}

/// Runs `f`, recording errors and panics in the thread's error slot.
fn guard(f: impl FnOnce() -> Result<VlalgStatus, (VlalgStatus, String)>) -> VlalgStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            VlalgStatus::Panic
        }
    }
}

fn lift(e: Error) -> (VlalgStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (VlalgStatus, String)> {
    if p.is_null() {
        return Err((VlalgStatus::NullPointer, format!("{what} is null")));
    }
    // SAFETY: the caller passes a NUL-terminated string that outlives the call.
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|_| {
        (
            VlalgStatus::InvalidUtf8,
            format!("{what} is not valid UTF-8"),
        )
    })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn vlalg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds `Cur` (over sl2), `W`, `S` (χ = 0) or `H` in `dim` variables.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vlalg_builtin(
    name: *const c_char,
    dim: usize,
    out: *mut *mut VlalgAlgebra,
) -> VlalgStatus {
    guard(|| {
        if out.is_null() {
            return Err((VlalgStatus::NullPointer, "out is null".into()));
        }
        let name: BuiltinName = unsafe { read_str(name, "name") }?.parse().map_err(lift)?;
        let params = BuiltinParams {
            dim: Some(dim),
            lie: "sl2".into(),
            ..BuiltinParams::default()
        };
        let obj = cli::build_builtin(name, &params).map_err(lift)?;
        // SAFETY: checked non-null above.
        unsafe { *out = Box::into_raw(Box::new(VlalgAlgebra(obj))) };
        Ok(VlalgStatus::Ok)
    })
}

/// Loads a definition file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vlalg_load_file(
    path: *const c_char,
    out: *mut *mut VlalgAlgebra,
) -> VlalgStatus {
    guard(|| {
        if out.is_null() {
            return Err((VlalgStatus::NullPointer, "out is null".into()));
        }
        let path = unsafe { read_str(path, "path") }?;
        let obj = cli::parse_algebra(Path::new(path)).map_err(lift)?;
        unsafe { *out = Box::into_raw(Box::new(VlalgAlgebra(obj))) };
        Ok(VlalgStatus::Ok)
    })
}

/// Parses definition-file contents held in memory.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vlalg_parse(
    text: *const c_char,
    out: *mut *mut VlalgAlgebra,
) -> VlalgStatus {
    guard(|| {
        if out.is_null() {
            return Err((VlalgStatus::NullPointer, "out is null".into()));
        }
        let text = unsafe { read_str(text, "text") }?;
        let obj = cli::parse_algebra_str(text).map_err(lift)?;
        unsafe { *out = Box::into_raw(Box::new(VlalgAlgebra(obj))) };
        Ok(VlalgStatus::Ok)
    })
}

/// # Safety
/// `algebra` must come from this library and not have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn vlalg_algebra_free(algebra: *mut VlalgAlgebra) {
    if !algebra.is_null() {
        // SAFETY: produced by Box::into_raw in this crate.
        drop(unsafe { Box::from_raw(algebra) });
    }
}

/// Canonical definition-file text of `algebra`, or null on a null handle.
///
/// # Safety
/// `algebra` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn vlalg_emit(algebra: *const VlalgAlgebra) -> *mut c_char {
    // SAFETY: the caller passes a live handle or null.
    match unsafe { algebra.as_ref() } {
        Some(a) => into_c_string(cli::emit_algebra(&a.0)),
        None => ptr::null_mut(),
    }
}

/// Runs the comma-separated `axioms` (e.g. `"skew,jacobi"`). `window` is the harmonic-degree
/// window of the light-cone checks and `l < 0` selects the default Borcherds integer.
/// Returns `VLALG_STATUS_OK` when everything holds and `VLALG_STATUS_VIOLATION` otherwise.
/// When `report_json` is non-null it receives the reports as JSON.
///
/// # Safety
/// `algebra` must be a live handle, `axioms` a NUL-terminated string, and `report_json`
/// null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vlalg_check(
    algebra: *const VlalgAlgebra,
    axioms: *const c_char,
    window: u32,
    l: i64,
    report_json: *mut *mut c_char,
) -> VlalgStatus {
    guard(|| {
        let a = unsafe { algebra.as_ref() }
            .ok_or((VlalgStatus::NullPointer, "algebra is null".into()))?;
        let list = unsafe { read_str(axioms, "axioms") }?
            .split(',')
            .map(|s| s.trim().parse::<Axiom>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(lift)?;
        let dim = match &a.0 {
            AlgebraFile::Pseudoalgebra(t, _) => t.dim(),
            AlgebraFile::Vla(s) => s.dim(),
            AlgebraFile::Lie(_) => 1,
        };
        let opts = CheckOptions {
            window,
            l: u32::try_from(l).ok(),
            ..CheckOptions::new(dim)
        };
        let reports = cli::run_checks(&a.0, &list, &opts).map_err(lift)?;
        if !report_json.is_null() {
            let text = serde_json::to_string(&reports).expect("reports serialize");
            unsafe { *report_json = into_c_string(text) };
        }
        Ok(if reports.iter().all(|r| r.passed()) {
            VlalgStatus::Ok
        } else {
            VlalgStatus::Violation
        })
    })
}

/// Dimension of the degree-`m` harmonic polynomials in `dim` variables.
#[no_mangle]
pub extern "C" fn vlalg_h_dim(dim: usize, m: u32) -> usize {
    h_dim(dim, m)
}

/// # Safety
/// `s` must come from this library and not have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn vlalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by CString::into_raw in this crate.
        drop(unsafe { CString::from_raw(s) });
    }
}
