//! C ABI over the qkernel library.
//!
//! Every function returns a [`QkStatus`]; results are written through out
//! pointers. On failure the message is kept per thread and can be read with
//! [`qk_last_error`]. Strings handed out by the library are freed with
//! [`qk_string_free`]; handles with their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::OnceLock;

use qkernel::hyperseries::{eval_phi, SeriesSpec};
use qkernel::identities::{self, Config, Params, Status, SuiteOptions, SuiteReport};
use qkernel::qcore::{poch_finite, poch_infinite};
use qkernel::report::{write_suite, Format, Header};
use qkernel::{Base, ComplexScalar, QError};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Pole = 4,
    Truncation = 5,
    Quadrature = 6,
    NonFinite = 7,
    UnknownIdentity = 8,
    Utf8 = 9,
    Panic = 10,
}

/// Outcome of one identity check.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QkCheckStatus {
    Pass = 0,
    Fail = 1,
    Skipped = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QkComplex {
    pub re: f64,
    pub im: f64,
}

/// One row of a suite report. Errors are NaN when the check was skipped.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QkEntry {
    pub status: QkCheckStatus,
    pub draw: usize,
    pub pinned: bool,
    pub rel_err: f64,
    pub abs_err: f64,
    pub threshold: f64,
    pub lhs: QkComplex,
    pub rhs: QkComplex,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct QkSummary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

/// Opaque numerical settings.
pub struct QkConfig {
    inner: Config,
}

/// Opaque suite result.
pub struct QkSuite {
    report: SuiteReport,
    ids: Vec<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &QError) -> QkStatus {
    match e {
        QError::TruncationExceeded { .. } => QkStatus::Truncation,
        QError::PoleInDenominator { .. } => QkStatus::Pole,
        QError::Domain(_) => QkStatus::Domain,
        QError::QuadratureNotConverged { .. } => QkStatus::Quadrature,
        QError::UnknownIdentity(_) => QkStatus::UnknownIdentity,
        QError::InvalidArgument(_) => QkStatus::InvalidArgument,
        QError::NonFinite(_) => QkStatus::NonFinite,
    }
}

struct Fail(QkStatus, String);

impl From<QError> for Fail {
    fn from(e: QError) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(QkStatus::NullPointer, format!("null pointer: {what}"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QkStatus::Ok,
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            QkStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(QkStatus::Utf8, format!("{what} is not valid UTF-8")))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn cx(z: QkComplex) -> ComplexScalar {
    ComplexScalar::new(z.re, z.im)
}

fn qk(z: ComplexScalar) -> QkComplex {
    QkComplex { re: z.re, im: z.im }
}

fn config_or_default(cfg: *const QkConfig, fallback: &Config) -> &Config {
    if cfg.is_null() {
        fallback
    } else {
        // SAFETY: non-null handles come from qk_config_new.
        unsafe { &(*cfg).inner }
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qk_version() -> *const c_char {
    static V: OnceLock<CString> = OnceLock::new();
    V.get_or_init(|| CString::new(env!("CARGO_PKG_VERSION")).unwrap()).as_ptr()
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` is NULL or a string returned by this library that hasn't been freed.
#[no_mangle]
pub unsafe extern "C" fn qk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// (a; q)_n for n >= 0, or (a; q)_inf when n is negative.
///
/// # Safety
/// `out` is NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qk_poch(a: QkComplex, q: QkComplex, n: i64, out: *mut QkComplex) -> QkStatus {
    guard(|| {
        let base = Base::new(cx(q))?;
        let v = if n < 0 {
            poch_infinite(cx(a), &base, &Config::default().truncation)?
        } else {
            poch_finite(cx(a), &base, n as usize)
        };
        write_out(out, qk(v), "out")
    })
}

/// Basic hypergeometric series r phi s. A non-negative `terminate` sums
/// exactly terminate + 1 terms.
///
/// # Safety
/// `num` and `den` point to `n_num` and `n_den` values (or are NULL when the count is 0); `out` is NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qk_phi(
    num: *const QkComplex,
    n_num: usize,
    den: *const QkComplex,
    n_den: usize,
    q: QkComplex,
    z: QkComplex,
    terminate: i64,
    out: *mut QkComplex,
) -> QkStatus {
    guard(|| {
        let num = slice(num, n_num, "num")?.iter().copied().map(cx).collect();
        let den = slice(den, n_den, "den")?.iter().copied().map(cx).collect();
        let mut spec = SeriesSpec::new(num, den, Base::new(cx(q))?, cx(z));
        if terminate >= 0 {
            spec = spec.terminating(terminate as usize);
        }
        let r = eval_phi(&spec, &Config::default().truncation)?;
        write_out(out, qk(r.value), "out")
    })
}

#[no_mangle]
pub extern "C" fn qk_config_new() -> *mut QkConfig {
    Box::into_raw(Box::new(QkConfig { inner: Config::default() }))
}

/// # Safety
/// `cfg` is NULL or a handle from qk_config_new that hasn't been freed.
#[no_mangle]
pub unsafe extern "C" fn qk_config_free(cfg: *mut QkConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Replaces every registry threshold. A negative value clears the override.
///
/// # Safety
/// `cfg` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qk_config_set_tolerance(cfg: *mut QkConfig, tol: f64) -> QkStatus {
    guard(|| {
        let cfg = cfg.as_mut().ok_or_else(|| null("cfg"))?;
        cfg.inner.tolerance = if tol < 0.0 { None } else { Some(tol) };
        Ok(())
    })
}

/// Threshold for a single identity.
///
/// # Safety
/// `cfg` is NULL or a live handle; `id` is NULL or a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn qk_config_set_threshold(cfg: *mut QkConfig, id: *const c_char, tol: f64) -> QkStatus {
    guard(|| {
        let cfg = cfg.as_mut().ok_or_else(|| null("cfg"))?;
        let id = text(id, "id")?;
        if identities::lookup(id).is_none() {
            return Err(QError::UnknownIdentity(id.into()).into());
        }
        if !(tol.is_finite() && tol > 0.0) {
            return Err(QError::InvalidArgument(format!("threshold must be positive, got {tol}")).into());
        }
        cfg.inner.overrides.insert(id.into(), tol);
        Ok(())
    })
}

/// Number of registered identities.
#[no_mangle]
pub extern "C" fn qk_identity_count() -> usize {
    identities::registry().len()
}

/// Id of the i-th registered identity as a static string, or NULL past the end.
#[no_mangle]
pub extern "C" fn qk_identity_id(i: usize) -> *const c_char {
    static IDS: OnceLock<Vec<CString>> = OnceLock::new();
    let ids = IDS.get_or_init(|| identities::registry().iter().map(|d| CString::new(d.id).unwrap()).collect());
    ids.get(i).map_or(ptr::null(), |c| c.as_ptr())
}

fn entry(r: &identities::IdentityReport) -> QkEntry {
    QkEntry {
        status: match r.status {
            Status::Pass => QkCheckStatus::Pass,
            Status::Fail => QkCheckStatus::Fail,
            Status::Skipped => QkCheckStatus::Skipped,
        },
        draw: r.draw,
        pinned: r.pinned,
        rel_err: r.rel_err.unwrap_or(f64::NAN),
        abs_err: r.abs_err.unwrap_or(f64::NAN),
        threshold: r.threshold,
        lhs: r.lhs.map_or(QkComplex { re: f64::NAN, im: f64::NAN }, |c| QkComplex { re: c.re, im: c.im }),
        rhs: r.rhs.map_or(QkComplex { re: f64::NAN, im: f64::NAN }, |c| QkComplex { re: c.re, im: c.im }),
    }
}

/// Checks one identity. `names`/`values` give `len` parameters; the rest
/// take their registry defaults. `cfg` may be NULL.
///
/// # Safety
/// `cfg` is NULL or a live handle; `id` is a NUL-terminated string; `names` and `values` hold `len` entries; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qk_check(
    cfg: *const QkConfig,
    id: *const c_char,
    names: *const *const c_char,
    values: *const QkComplex,
    len: usize,
    out: *mut QkEntry,
) -> QkStatus {
    guard(|| {
        let id = text(id, "id")?;
        let names = slice(names, len, "names")?;
        let values = slice(values, len, "values")?;
        let mut params = Params::new();
        for (&n, &v) in names.iter().zip(values) {
            params.set(text(n, "parameter name")?, cx(v));
        }
        let fallback = Config::default();
        let report = identities::check_identity(id, &params, config_or_default(cfg, &fallback))?;
        write_out(out, entry(&report), "out")
    })
}

/// Runs the suite over `n_ids` identities (all when `n_ids` is 0) and stores
/// a new handle in `out`. `cfg` may be NULL.
///
/// # Safety
/// `cfg` is NULL or a live handle; `ids` holds `n_ids` NUL-terminated strings; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qk_suite_run(
    cfg: *const QkConfig,
    ids: *const *const c_char,
    n_ids: usize,
    draws: usize,
    seed: u64,
    jobs: usize,
    out: *mut *mut QkSuite,
) -> QkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let ids = slice(ids, n_ids, "ids")?
            .iter()
            .map(|&p| text(p, "id").map(str::to_string))
            .collect::<Result<Vec<_>, _>>()?;
        let fallback = Config::default();
        let opts = SuiteOptions { ids, draws, seed, jobs };
        let report = identities::run_suite(&opts, config_or_default(cfg, &fallback))?;
        let ids = report.reports.iter().map(|r| CString::new(r.id.as_str()).unwrap_or_default()).collect();
        out.write(Box::into_raw(Box::new(QkSuite { report, ids })));
        Ok(())
    })
}

/// # Safety
/// `suite` is NULL or a handle from qk_suite_run that hasn't been freed.
#[no_mangle]
pub unsafe extern "C" fn qk_suite_free(suite: *mut QkSuite) {
    if !suite.is_null() {
        drop(Box::from_raw(suite));
    }
}

/// Number of rows in the report, or 0 for NULL.
///
/// # Safety
/// `suite` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qk_suite_len(suite: *const QkSuite) -> usize {
    suite.as_ref().map_or(0, |s| s.report.reports.len())
}

/// # Safety
/// `suite` is NULL or a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qk_suite_summary(suite: *const QkSuite, out: *mut QkSummary) -> QkStatus {
    guard(|| {
        let s = suite.as_ref().ok_or_else(|| null("suite"))?.report.summary;
        write_out(out, QkSummary { total: s.total, pass: s.pass, fail: s.fail, skipped: s.skipped }, "out")
    })
}

fn row(suite: &QkSuite, i: usize) -> Result<&identities::IdentityReport, Fail> {
    suite.report.reports.get(i).ok_or_else(|| {
        Fail(QkStatus::InvalidArgument, format!("row {i} out of range ({} rows)", suite.report.reports.len()))
    })
}

/// # Safety
/// `suite` is NULL or a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qk_suite_entry(suite: *const QkSuite, i: usize, out: *mut QkEntry) -> QkStatus {
    guard(|| {
        let s = suite.as_ref().ok_or_else(|| null("suite"))?;
        write_out(out, entry(row(s, i)?), "out")
    })
}

/// Identity id of row `i`, owned by the handle. NULL when out of range.
///
/// # Safety
/// `suite` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qk_suite_id(suite: *const QkSuite, i: usize) -> *const c_char {
    suite.as_ref().and_then(|s| s.ids.get(i)).map_or(ptr::null(), |c| c.as_ptr())
}

/// Serializes the report as JSON. Free the result with qk_string_free.
/// `deterministic` leaves out the timestamp.
///
/// # Safety
/// `suite` and `cfg` are NULL or live handles; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qk_suite_to_json(
    suite: *const QkSuite,
    cfg: *const QkConfig,
    deterministic: bool,
    out: *mut *mut c_char,
) -> QkStatus {
    guard(|| {
        let s = suite.as_ref().ok_or_else(|| null("suite"))?;
        let fallback = Config::default();
        let header = Header::new(s.report.seed, s.report.draws, config_or_default(cfg, &fallback), deterministic);
        let mut buf = Vec::new();
        write_suite(&mut buf, Format::Json, &header, &s.report)?;
        let c = CString::new(buf).map_err(|_| Fail(QkStatus::Utf8, "NUL byte in report".into()))?;
        write_out(out, c.into_raw(), "out")
    })
}
