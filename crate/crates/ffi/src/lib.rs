//! C ABI over the gorfro engine.
//!
//! Every entry point returns a [`GorfroStatus`]; outputs go through pointer
//! arguments. Reports are opaque handles released with
//! [`gorfro_report_free`], strings returned by the library are released
//! with [`gorfro_string_free`]. After a non-OK status,
//! [`gorfro_last_error`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gorfro::catalog;
use gorfro::diagnostics::{self, Input, Report, RunOptions};
use gorfro::exactalg::FieldMode;
use gorfro::groebner::parse_ideal;
use gorfro::rootsys::{build_root_system, RootType};
use gorfro::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GorfroStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Resource = 4,
    InvalidInput = 5,
    Internal = 6,
    Panic = 7,
}

/// Analysis report for one ring. Opaque to C.
pub struct GorfroReport {
    report: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> GorfroStatus {
    match err {
        Error::Parse(_) => GorfroStatus::Parse,
        Error::Resource(_) => GorfroStatus::Resource,
        Error::InvalidInput(_)
        | Error::IllPosed(_)
        | Error::Inhomogeneous(_)
        | Error::NotApplicable(_)
        | Error::QMaxTooSmall(_)
        | Error::VariableMismatch(..)
        | Error::MixedFieldModes(..) => GorfroStatus::InvalidInput,
        _ => GorfroStatus::Internal,
    }
}

struct Failure(GorfroStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> GorfroStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            GorfroStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("panic: {msg}"));
            GorfroStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(GorfroStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Failure(
            GorfroStatus::InvalidUtf8,
            "argument is not valid UTF-8".into(),
        )
    })
}

unsafe fn options(field: *const c_char, max_seconds: u64) -> Result<RunOptions, Failure> {
    let field = if field.is_null() {
        None
    } else {
        Some(read_str(field)?.parse::<FieldMode>()?)
    };
    Ok(RunOptions {
        field,
        max_seconds: (max_seconds > 0).then_some(max_seconds),
        ..RunOptions::default()
    })
}

unsafe fn report_ref<'a>(r: *const GorfroReport) -> Result<&'a Report, Failure> {
    r.as_ref().map(|h| &h.report).ok_or_else(null)
}

unsafe fn emit_report(out: *mut *mut GorfroReport, report: Report) {
    *out = Box::into_raw(Box::new(GorfroReport { report }));
}

/// Message for the last non-OK status on this thread, or an empty string.
/// The pointer stays valid until the next gorfro call on the same thread.
#[no_mangle]
pub extern "C" fn gorfro_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Analyzes a built-in catalog entry. `field` may be null (entry default),
/// `"q"`, `"p"` or `"p:<prime>"`; `max_seconds` of 0 means no limit.
///
/// # Safety
/// `id` and a non-null `field` must be NUL-terminated strings; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn gorfro_check_example(
    id: *const c_char,
    field: *const c_char,
    max_seconds: u64,
    out: *mut *mut GorfroReport,
) -> GorfroStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let entry = catalog::lookup(read_str(id)?)?;
        let report = diagnostics::analyze(&Input::Entry(entry), &options(field, max_seconds)?)?;
        emit_report(out, report);
        Ok(())
    })
}

/// Analyzes an ideal given in the text format accepted by `gorfro check
/// --ideal` (a `ring n=<count>` line, then one generator per line).
///
/// # Safety
/// As for [`gorfro_check_example`].
#[no_mangle]
pub unsafe extern "C" fn gorfro_check_ideal_text(
    text: *const c_char,
    field: *const c_char,
    max_seconds: u64,
    out: *mut *mut GorfroReport,
) -> GorfroStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let ideal = parse_ideal(read_str(text)?)?;
        let input = Input::Ideal {
            label: "ffi".into(),
            ideal,
        };
        let report = diagnostics::analyze(&input, &options(field, max_seconds)?)?;
        emit_report(out, report);
        Ok(())
    })
}

/// # Safety
/// `report` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gorfro_report_free(report: *mut GorfroReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` must be a string returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn gorfro_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Full report as pretty-printed JSON; free with [`gorfro_string_free`].
///
/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gorfro_report_json(
    report: *const GorfroReport,
    out: *mut *mut c_char,
) -> GorfroStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let json = serde_json::to_string_pretty(report_ref(report)?)
            .map_err(|e| Failure(GorfroStatus::Internal, e.to_string()))?;
        *out = CString::new(json)
            .map_err(|e| Failure(GorfroStatus::Internal, e.to_string()))?
            .into_raw();
        Ok(())
    })
}

/// Scalar invariants of a report. Booleans are written as 0 or 1.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct GorfroSummary {
    pub nvars: usize,
    pub dim: usize,
    pub codim: usize,
    pub pd: usize,
    pub cm_type: usize,
    pub regularity: usize,
    pub socle_degree: usize,
    pub cohen_macaulay: u8,
    pub gorenstein: u8,
    pub frobenius: u8,
    pub subcanonical: u8,
    /// Twist `N` with `K_X = O_X(-N)`, 0 when not subcanonical.
    pub subcanonical_n: u64,
    /// 1 when some theorem assertion failed on this ring.
    pub failed: u8,
    /// Number of nonzero Betti entries.
    pub betti_len: usize,
}

/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gorfro_report_summary(
    report: *const GorfroReport,
    out: *mut GorfroSummary,
) -> GorfroStatus {
    guard(|| {
        let r = report_ref(report)?;
        let out = out.as_mut().ok_or_else(null)?;
        *out = GorfroSummary {
            nvars: r.n,
            dim: r.dim,
            codim: r.codim,
            pd: r.pd,
            cm_type: r.cm_type,
            regularity: r.regularity,
            socle_degree: r.socle_degree,
            cohen_macaulay: r.cohen_macaulay as u8,
            gorenstein: r.gorenstein as u8,
            frobenius: r.frobenius as u8,
            subcanonical: r.subcanonical.holds as u8,
            subcanonical_n: r.subcanonical.n.unwrap_or(0),
            failed: r.failed() as u8,
            betti_len: r.betti.len(),
        };
        Ok(())
    })
}

/// The `k`-th nonzero Betti entry `β_{p,q}`, sorted by `(p, q)`.
///
/// # Safety
/// `report` must be a live handle; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn gorfro_report_betti(
    report: *const GorfroReport,
    k: usize,
    p: *mut usize,
    q: *mut usize,
    beta: *mut usize,
) -> GorfroStatus {
    guard(|| {
        let r = report_ref(report)?;
        if p.is_null() || q.is_null() || beta.is_null() {
            return Err(null());
        }
        let [ep, eq, eb] = *r.betti.get(k).ok_or_else(|| {
            Failure(
                GorfroStatus::InvalidInput,
                format!("Betti index {k} out of range ({} entries)", r.betti.len()),
            )
        })?;
        *p = ep;
        *q = eq;
        *beta = eb;
        Ok(())
    })
}

/// Root-theoretic subcanonicity of the orbit of `λ = Σ weight[i] ω_i` in
/// type `root_type` (e.g. `"A3"`, `"A1xA2"`). Writes 1 to `holds` and the
/// twist to `n` when subcanonical, otherwise 0 and 0.
///
/// # Safety
/// `root_type` must be NUL-terminated; `weight` must point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn gorfro_subcanonical(
    root_type: *const c_char,
    weight: *const i64,
    len: usize,
    holds: *mut u8,
    n: *mut u64,
) -> GorfroStatus {
    guard(|| {
        if weight.is_null() || holds.is_null() || n.is_null() {
            return Err(null());
        }
        let t: RootType = read_str(root_type)?.parse()?;
        let lambda = std::slice::from_raw_parts(weight, len);
        let verdict = build_root_system(&t)?.subcanonicity_test(lambda)?;
        *holds = verdict.holds() as u8;
        *n = verdict.n.unwrap_or(0);
        Ok(())
    })
}
