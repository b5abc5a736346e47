//! C interface to the surface-bracket library.
//!
//! Diagrams are opaque `SbDiagram` handles. Every fallible function returns an
//! `SbStatus`; on failure `sb_last_error` describes the cause. Strings handed
//! out by this library must be released with `sb_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use surface_bracket::analysis::{structure, AnalysisError, Structure};
use surface_bracket::bracket::bracket;
use surface_bracket::{analyze, parse_diagram, BracketOptions, SurfaceDiagram};

/// Result codes. The first four match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SbStatus {
    Ok = 0,
    CheckFailed = 1,
    InvalidInput = 2,
    GuardExceeded = 3,
    NullPointer = 4,
    Internal = 5,
}

/// A parsed diagram together with its surface and homology data.
pub struct SbDiagram {
    diagram: SurfaceDiagram,
    structure: Structure,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &AnalysisError) -> SbStatus {
    match e.exit_code() {
        1 => SbStatus::CheckFailed,
        3 => SbStatus::GuardExceeded,
        _ => SbStatus::InvalidInput,
    }
}

fn guarded(f: impl FnOnce() -> SbStatus) -> SbStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            SbStatus::Internal
        }
    }
}

fn options(workers: usize, max_crossings: usize) -> BracketOptions {
    let mut o = BracketOptions {
        workers,
        ..BracketOptions::default()
    };
    if max_crossings != 0 {
        o.max_crossings = max_crossings;
    }
    o
}

unsafe fn hand_out(text: String, out: *mut *mut c_char) -> SbStatus {
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            SbStatus::Ok
        }
        Err(_) => {
            set_error("output contains a nul byte");
            SbStatus::Internal
        }
    }
}

/// Parses a diagram from nul-terminated UTF-8 JSON.
///
/// # Safety
/// `json` must be a valid nul-terminated string and `out` a valid pointer.
/// On success `*out` owns a handle to release with `sb_diagram_free`.
#[no_mangle]
pub unsafe extern "C" fn sb_diagram_from_json(
    json: *const c_char,
    out: *mut *mut SbDiagram,
) -> SbStatus {
    if json.is_null() || out.is_null() {
        set_error("null pointer argument");
        return SbStatus::NullPointer;
    }
    *out = ptr::null_mut();
    guarded(|| {
        let text = match CStr::from_ptr(json).to_str() {
            Ok(t) => t,
            Err(e) => {
                set_error(format!("input is not UTF-8: {e}"));
                return SbStatus::InvalidInput;
            }
        };
        match parse_diagram(text) {
            Ok(diagram) => {
                let structure = structure(&diagram);
                *out = Box::into_raw(Box::new(SbDiagram { diagram, structure }));
                SbStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                SbStatus::InvalidInput
            }
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `d` must be null or a handle from `sb_diagram_from_json` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sb_diagram_free(d: *mut SbDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Writes the genus of the surface to `*out`.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sb_diagram_genus(d: *const SbDiagram, out: *mut usize) -> SbStatus {
    if d.is_null() || out.is_null() {
        set_error("null pointer argument");
        return SbStatus::NullPointer;
    }
    *out = (*d).structure.summary.genus;
    SbStatus::Ok
}

/// Writes the crossing count to `*out`.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sb_diagram_crossings(d: *const SbDiagram, out: *mut usize) -> SbStatus {
    if d.is_null() || out.is_null() {
        set_error("null pointer argument");
        return SbStatus::NullPointer;
    }
    *out = (*d).diagram.crossing_count();
    SbStatus::Ok
}

/// Computes the bracket polynomial in its text form.
/// `workers == 0` uses every core; `max_crossings == 0` keeps the default guard.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer. On success `*out`
/// must be released with `sb_string_free`.
#[no_mangle]
pub unsafe extern "C" fn sb_bracket(
    d: *const SbDiagram,
    workers: usize,
    max_crossings: usize,
    out: *mut *mut c_char,
) -> SbStatus {
    if d.is_null() || out.is_null() {
        set_error("null pointer argument");
        return SbStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let h = &*d;
    guarded(|| {
        match bracket(
            &h.diagram,
            &h.structure.model,
            options(workers, max_crossings),
        ) {
            Ok(r) => hand_out(r.polynomial.to_string(), out),
            Err(e) => {
                let e = AnalysisError::from(e);
                set_error(format!("{}: {e}", h.diagram.name()));
                status_of(&e)
            }
        }
    })
}

/// Runs the full analysis and returns the JSON report. Returns
/// `CheckFailed` with the report still written when an applicable check fails.
///
/// # Safety
/// Same contract as `sb_bracket`.
#[no_mangle]
pub unsafe extern "C" fn sb_report_json(
    d: *const SbDiagram,
    workers: usize,
    max_crossings: usize,
    out: *mut *mut c_char,
) -> SbStatus {
    if d.is_null() || out.is_null() {
        set_error("null pointer argument");
        return SbStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let h = &*d;
    guarded(
        || match analyze(&h.diagram, options(workers, max_crossings)) {
            Ok(r) => {
                let failed = r.verification.any_failed();
                match hand_out(r.to_json(), out) {
                    SbStatus::Ok if failed => {
                        set_error(format!("{}: a check failed", h.diagram.name()));
                        SbStatus::CheckFailed
                    }
                    s => s,
                }
            }
            Err(e) => {
                set_error(format!("{}: {e}", h.diagram.name()));
                status_of(&e)
            }
        },
    )
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
