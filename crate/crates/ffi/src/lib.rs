//! C ABI over `tanaka-core`.
//!
//! Models and prolongations are opaque heap handles released with their
//! `_free` function. Strings returned through `char **` are owned by the caller
//! and released with [`tanaka_string_free`]. Every function returns a
//! [`TanakaStatus`]; on failure [`tanaka_last_error`] describes the error.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tanaka_core::catalog;
use tanaka_core::model::{validate, QuadricModel};
use tanaka_core::poly::{FieldJson, PolyVectorField};
use tanaka_core::prolong::{prolong_full, ProlongationJson, ProlongationResult};
use tanaka_core::realize::realize_basis;
use tanaka_core::verify::verify_hol;
use tanaka_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TanakaStatus {
    Ok = 0,
    DomainFailure = 1,
    ParseError = 2,
    InternalError = 3,
    NullArgument = 4,
    InvalidUtf8 = 5,
}

/// Opaque quadric model.
pub struct TanakaModel {
    model: QuadricModel,
}

/// Opaque prolongation result.
pub struct TanakaProlongation {
    result: ProlongationResult,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: TanakaStatus, msg: &str) -> TanakaStatus {
    set_error(msg);
    status
}

fn from_error(e: &Error) -> TanakaStatus {
    let status = match e.exit_code() {
        2 => TanakaStatus::ParseError,
        3 => TanakaStatus::InternalError,
        _ => TanakaStatus::DomainFailure,
    };
    fail(status, &e.to_string())
}

/// Runs `f`, turning panics into `InternalError`.
fn guard(f: impl FnOnce() -> TanakaStatus) -> TanakaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == TanakaStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(TanakaStatus::InternalError, "panic inside tanaka-core"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, TanakaStatus> {
    if s.is_null() {
        return Err(fail(TanakaStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(TanakaStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> TanakaStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            TanakaStatus::Ok
        }
        Err(_) => fail(TanakaStatus::InternalError, "output contains a NUL byte"),
    }
}

/// Parses Model JSON into a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tanaka_model_from_json(json: *const c_char, out: *mut *mut TanakaModel) -> TanakaStatus {
    guard(|| {
        if out.is_null() {
            return fail(TanakaStatus::NullArgument, "null output pointer");
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match QuadricModel::from_json_str(text) {
            Ok(model) => {
                *out = Box::into_raw(Box::new(TanakaModel { model }));
                TanakaStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Catalog model by name; `param <= 0` selects the family default and `extra`
/// appends sphere directions.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tanaka_model_from_catalog(
    name: *const c_char,
    param: i64,
    extra: usize,
    out: *mut *mut TanakaModel,
) -> TanakaStatus {
    guard(|| {
        if out.is_null() {
            return fail(TanakaStatus::NullArgument, "null output pointer");
        }
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let param = (param > 0).then_some(param as usize);
        match catalog::lookup(name, param, extra) {
            Ok(e) => {
                *out = Box::into_raw(Box::new(TanakaModel { model: e.model }));
                TanakaStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `model` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tanaka_model_free(model: *mut TanakaModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Validation report as JSON; `passed` receives the overall outcome.
///
/// # Safety
/// All pointers must be valid; `report_json` may be null to skip the report.
#[no_mangle]
pub unsafe extern "C" fn tanaka_model_validate(
    model: *const TanakaModel,
    passed: *mut bool,
    report_json: *mut *mut c_char,
) -> TanakaStatus {
    guard(|| {
        let (Some(m), false) = (model.as_ref(), passed.is_null()) else {
            return fail(TanakaStatus::NullArgument, "null argument");
        };
        let report = validate(&m.model);
        *passed = report.passed;
        if report_json.is_null() {
            return TanakaStatus::Ok;
        }
        match serde_json::to_string(&report) {
            Ok(s) => write_string(report_json, s),
            Err(e) => fail(TanakaStatus::InternalError, &e.to_string()),
        }
    })
}

/// Full prolongation up to `max_degree`.
///
/// # Safety
/// `model` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn tanaka_prolong(
    model: *const TanakaModel,
    max_degree: usize,
    out: *mut *mut TanakaProlongation,
) -> TanakaStatus {
    guard(|| {
        let (Some(m), false) = (model.as_ref(), out.is_null()) else {
            return fail(TanakaStatus::NullArgument, "null argument");
        };
        match prolong_full(&m.model, max_degree).and_then(|r| r.algebra.check_jacobi().map(|_| r)) {
            Ok(result) => {
                *out = Box::into_raw(Box::new(TanakaProlongation { result }));
                TanakaStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `p` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tanaka_prolongation_free(p: *mut TanakaProlongation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Top degree, or −1 for a null handle.
///
/// # Safety
/// `p` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn tanaka_prolongation_top_degree(p: *const TanakaProlongation) -> i32 {
    p.as_ref().map_or(-1, |p| p.result.top_degree as i32)
}

/// Jet determination order, or −1 for a null handle.
///
/// # Safety
/// `p` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn tanaka_prolongation_jet_order(p: *const TanakaProlongation) -> i32 {
    p.as_ref().map_or(-1, |p| p.result.jet_order as i32)
}

/// Dimension of the given degree (0 outside the computed range), or −1 for a
/// null handle.
///
/// # Safety
/// `p` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn tanaka_prolongation_dim(p: *const TanakaProlongation, degree: i32) -> i64 {
    p.as_ref().map_or(-1, |p| p.result.dim(degree) as i64)
}

/// Prolongation result JSON (dimensions, structure constants, grading element).
///
/// # Safety
/// `p` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn tanaka_prolongation_to_json(p: *const TanakaProlongation, out: *mut *mut c_char) -> TanakaStatus {
    guard(|| {
        let (Some(p), false) = (p.as_ref(), out.is_null()) else {
            return fail(TanakaStatus::NullArgument, "null argument");
        };
        match serde_json::to_string(&ProlongationJson(&p.result)) {
            Ok(s) => write_string(out, s),
            Err(e) => fail(TanakaStatus::InternalError, &e.to_string()),
        }
    })
}

/// JSON array of Field JSON objects realizing each basis element of `degree`.
///
/// # Safety
/// `p` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn tanaka_realize_json(p: *const TanakaProlongation, degree: i32, out: *mut *mut c_char) -> TanakaStatus {
    guard(|| {
        let (Some(p), false) = (p.as_ref(), out.is_null()) else {
            return fail(TanakaStatus::NullArgument, "null argument");
        };
        match realize_basis(&p.result, degree) {
            Ok(fields) => {
                let json: Vec<FieldJson> = fields.iter().map(PolyVectorField::to_json).collect();
                match serde_json::to_string(&json) {
                    Ok(s) => write_string(out, s),
                    Err(e) => fail(TanakaStatus::InternalError, &e.to_string()),
                }
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Tangency check of a Field JSON against the model. `verdict` receives the
/// outcome; `cert_json` (optional) the certificate.
///
/// # Safety
/// `model`, `field_json` and `verdict` must be valid; `cert_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn tanaka_verify_field(
    model: *const TanakaModel,
    field_json: *const c_char,
    verdict: *mut bool,
    cert_json: *mut *mut c_char,
) -> TanakaStatus {
    guard(|| {
        let (Some(m), false) = (model.as_ref(), verdict.is_null()) else {
            return fail(TanakaStatus::NullArgument, "null argument");
        };
        let text = match read_str(field_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let parsed: Result<FieldJson, Error> = serde_json::from_str(text).map_err(Error::from);
        let cert = match parsed.and_then(|j| PolyVectorField::from_json(&j)).and_then(|f| verify_hol(&f, &m.model)) {
            Ok(c) => c,
            Err(e) => return from_error(&e),
        };
        *verdict = cert.verdict;
        if cert_json.is_null() {
            return TanakaStatus::Ok;
        }
        match serde_json::to_string(&cert.to_json()) {
            Ok(s) => write_string(cert_json, s),
            Err(e) => fail(TanakaStatus::InternalError, &e.to_string()),
        }
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn tanaka_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread (empty after a success). The
/// pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn tanaka_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
