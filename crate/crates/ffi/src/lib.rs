// Copyright 2026 The orbit-isom Authors
// SPDX-License-Identifier: Apache-2.0

//! C ABI over `orbit-isom`.
//!
//! Objects are opaque handles created by `*_new`/`*_from_*` functions and
//! released by the matching `*_free`. Every call returns an
//! [`OrbitIsomStatus`]; on failure [`orbit_isom_last_error`] describes the
//! error for the calling thread. Strings returned by the library are freed
//! with [`orbit_isom_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use nalgebra::Matrix3;
use orbit_isom::catalog::CatalogAction;
use orbit_isom::linalg::Vector;
use orbit_isom::quotient::{self, AnalyzeOptions};
use orbit_isom::repr::{self, Kind};
use orbit_isom::{lift, orbit, Error, GroupContext, QuotientIsometryReport, RepresentationSpec};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitIsomStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Invalid input: malformed document, non-orthogonal generator,
    /// dimension mismatch, unknown catalog id, ...
    InvalidInput = 3,
    /// A numerical decision landed inside a guard band.
    Ambiguous = 4,
    /// A Rust panic was caught at the boundary.
    Panic = 5,
}

/// Validated representation.
pub struct OrbitIsomSpec {
    spec: RepresentationSpec,
}

/// Completed analysis report.
pub struct OrbitIsomReport {
    report: QuotientIsometryReport,
}

/// Group action prepared for quotient-distance queries.
pub struct OrbitIsomContext {
    context: GroupContext,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: OrbitIsomStatus, message: &str) -> OrbitIsomStatus {
    set_last_error(message);
    status
}

fn from_error(e: &Error) -> OrbitIsomStatus {
    let status = if e.is_ambiguity() {
        OrbitIsomStatus::Ambiguous
    } else {
        OrbitIsomStatus::InvalidInput
    };
    fail(status, &e.to_string())
}

fn guard(f: impl FnOnce() -> OrbitIsomStatus) -> OrbitIsomStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => {
            if status == OrbitIsomStatus::Ok {
                set_last_error("");
            }
            status
        }
        Err(_) => fail(OrbitIsomStatus::Panic, "panic inside orbit-isom"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, OrbitIsomStatus> {
    if s.is_null() {
        return Err(fail(OrbitIsomStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(OrbitIsomStatus::InvalidUtf8, "string argument is not UTF-8"))
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(OrbitIsomStatus::NullArgument, concat!("null argument: ", stringify!($p)));
        })+
    };
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn orbit_isom_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn orbit_isom_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parse a representation document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbit_isom_spec_from_json(
    json: *const c_char,
    out: *mut *mut OrbitIsomSpec,
) -> OrbitIsomStatus {
    guard(|| {
        non_null!(out);
        let text = tri!(read_str(json));
        match repr::parse_spec(text) {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(OrbitIsomSpec { spec }));
                OrbitIsomStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Representation of a catalog action, e.g. `"hopf-u1-r4"`.
///
/// # Safety
/// `id` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbit_isom_spec_from_catalog(
    id: *const c_char,
    out: *mut *mut OrbitIsomSpec,
) -> OrbitIsomStatus {
    guard(|| {
        non_null!(out);
        let id = tri!(read_str(id));
        match CatalogAction::by_id(id) {
            Ok(action) => {
                let spec = RepresentationSpec::catalog(id, action.dimension);
                *out = Box::into_raw(Box::new(OrbitIsomSpec { spec }));
                OrbitIsomStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `spec` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn orbit_isom_spec_free(spec: *mut OrbitIsomSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// # Safety
/// `spec` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn orbit_isom_spec_set_seed(
    spec: *mut OrbitIsomSpec,
    seed: u64,
) -> OrbitIsomStatus {
    guard(|| {
        non_null!(spec);
        (*spec).spec.seed = seed;
        OrbitIsomStatus::Ok
    })
}

/// # Safety
/// `spec` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbit_isom_spec_dimension(
    spec: *const OrbitIsomSpec,
    out: *mut usize,
) -> OrbitIsomStatus {
    guard(|| {
        non_null!(spec, out);
        *out = (*spec).spec.dimension;
        OrbitIsomStatus::Ok
    })
}

/// Run the full pipeline.
///
/// # Safety
/// `spec` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbit_isom_analyze(
    spec: *const OrbitIsomSpec,
    out: *mut *mut OrbitIsomReport,
) -> OrbitIsomStatus {
    guard(|| {
        non_null!(spec, out);
        match quotient::analyze(&(*spec).spec, AnalyzeOptions::default()) {
            Ok(a) => {
                *out = Box::into_raw(Box::new(OrbitIsomReport { report: a.report }));
                OrbitIsomStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn orbit_isom_report_free(report: *mut OrbitIsomReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Report as a JSON string; release with [`orbit_isom_string_free`].
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbit_isom_report_json(
    report: *const OrbitIsomReport,
    out: *mut *mut c_char,
) -> OrbitIsomStatus {
    guard(|| {
        non_null!(report, out);
        let json = match serde_json::to_string(&(*report).report) {
            Ok(j) => j,
            Err(e) => return fail(OrbitIsomStatus::InvalidInput, &e.to_string()),
        };
        *out = CString::new(json).unwrap_or_default().into_raw();
        OrbitIsomStatus::Ok
    })
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbit_isom_report_rank(
    report: *const OrbitIsomReport,
    out: *mut usize,
) -> OrbitIsomStatus {
    guard(|| {
        non_null!(report, out);
        *out = (*report).report.rank;
        OrbitIsomStatus::Ok
    })
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbit_isom_report_boundary(
    report: *const OrbitIsomReport,
    out: *mut bool,
) -> OrbitIsomStatus {
    guard(|| {
        non_null!(report, out);
        *out = (*report).report.boundary;
        OrbitIsomStatus::Ok
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn orbit_isom_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Prepare quotient-distance queries (enumerates a finite group once).
///
/// # Safety
/// `spec` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbit_isom_context_new(
    spec: *const OrbitIsomSpec,
    out: *mut *mut OrbitIsomContext,
) -> OrbitIsomStatus {
    guard(|| {
        non_null!(spec, out);
        let spec = &(*spec).spec;
        let context = match &spec.kind {
            Kind::Finite => GroupContext::finite("ffi", spec),
            Kind::Catalog(id) => CatalogAction::by_id(id).map(GroupContext::Catalog),
        };
        match context {
            Ok(context) => {
                *out = Box::into_raw(Box::new(OrbitIsomContext { context }));
                OrbitIsomStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `context` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn orbit_isom_context_free(context: *mut OrbitIsomContext) {
    if !context.is_null() {
        drop(Box::from_raw(context));
    }
}

/// Distance in `V/G` between the orbits of `a` and `b`, each of length `len`.
///
/// # Safety
/// `a` and `b` must point to `len` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn orbit_isom_quotient_distance(
    context: *const OrbitIsomContext,
    a: *const f64,
    b: *const f64,
    len: usize,
    out: *mut f64,
) -> OrbitIsomStatus {
    guard(|| {
        non_null!(context, a, b, out);
        let ctx = &(*context).context;
        let pa = ctx.point(Vector::from_column_slice(std::slice::from_raw_parts(
            a, len,
        )));
        let pb = ctx.point(Vector::from_column_slice(std::slice::from_raw_parts(
            b, len,
        )));
        match orbit::quotient_distance(ctx, &pa, &pb) {
            Ok(d) => {
                *out = d;
                OrbitIsomStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Lift a rotation (row-major `3 x 3`) of the Hopf quotient sphere to a
/// `U(1)`-equivariant isometry of `R^4` (row-major `4 x 4` into `lift_out`).
/// `residual_out` may be null.
///
/// # Safety
/// `rotation` must point to 9 doubles and `lift_out` to 16 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn orbit_isom_hopf_lift(
    rotation: *const f64,
    lift_out: *mut f64,
    residual_out: *mut f64,
) -> OrbitIsomStatus {
    guard(|| {
        non_null!(rotation, lift_out);
        let r = Matrix3::from_row_slice(std::slice::from_raw_parts(rotation, 9));
        match lift::lift_rotation(&r) {
            Ok(w) => {
                let dst = std::slice::from_raw_parts_mut(lift_out, 16);
                for i in 0..4 {
                    for j in 0..4 {
                        dst[4 * i + j] = w.lift[(i, j)];
                    }
                }
                if !residual_out.is_null() {
                    *residual_out = w.residual;
                }
                OrbitIsomStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn null_arguments() {
        unsafe {
            let mut spec = ptr::null_mut();
            assert_eq!(
                orbit_isom_spec_from_json(ptr::null(), &mut spec),
                OrbitIsomStatus::NullArgument
            );
            assert_eq!(
                orbit_isom_analyze(ptr::null(), ptr::null_mut()),
                OrbitIsomStatus::NullArgument
            );
            let msg = CStr::from_ptr(orbit_isom_last_error()).to_str().unwrap();
            assert!(msg.contains("null"), "{msg}");
        }
    }
}
