//! C ABI over the tpsgeo toolkit.
//!
//! Models and reports are opaque handles. Every fallible call returns a
//! [`TpsgeoStatus`]; the message of the last failure on the calling thread is
//! available from [`tpsgeo_last_error`]. Strings handed out by the library
//! are owned by the caller and released with [`tpsgeo_string_free`].
//! Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Instant;

use tpsgeo::legendre::{self, ModelFile, PotentialModel};
use tpsgeo::report::{ClaimResult, ReportEnvelope, Status};
use tpsgeo::suites::{self, Space};
use tpsgeo::GeoError;

/// Result code of every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TpsgeoStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed JSON or an unknown catalog id.
    Parse = 3,
    /// An argument outside the supported range (n, degree, point length, ...).
    Domain = 4,
    /// A numerical evaluation left the domain of the potential.
    Numeric = 5,
    /// The output buffer is too small; the required length has been written.
    BufferTooSmall = 6,
    /// An internal panic was caught.
    Internal = 7,
}

/// Which phase space a curvature or Killing suite runs on.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TpsgeoSpace {
    Tps = 0,
    Sympl = 1,
}

/// Per-claim status inside a report.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TpsgeoClaimStatus {
    ExactPass = 0,
    NumericPass = 1,
    Fail = 2,
    NotApplicable = 3,
}

/// A potential together with its partition and sign convention.
pub struct TpsgeoModel {
    inner: PotentialModel,
}

/// A finished verification report.
pub struct TpsgeoReport {
    inner: ReportEnvelope,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn status_of(e: &GeoError) -> TpsgeoStatus {
    match e {
        GeoError::Parse(_) => TpsgeoStatus::Parse,
        GeoError::NumericDomain(_) | GeoError::Numeric(_) | GeoError::DegenerateSurface => TpsgeoStatus::Numeric,
        _ => TpsgeoStatus::Domain,
    }
}

struct Fail(TpsgeoStatus, String);

impl From<GeoError> for Fail {
    fn from(e: GeoError) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> TpsgeoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            TpsgeoStatus::Ok
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            TpsgeoStatus::Internal
        }
    }
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(TpsgeoStatus::NullArgument, format!("{name} is null")))
    } else {
        Ok(())
    }
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    non_null(p, name)?;
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(TpsgeoStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

fn space_of(s: TpsgeoSpace) -> Space {
    match s {
        TpsgeoSpace::Tps => Space::Tps,
        TpsgeoSpace::Sympl => Space::Sympl,
    }
}

fn check_n(space: Space, n: usize) -> Result<(), Fail> {
    if n == 0 || n > space.max_n() {
        return Err(Fail(TpsgeoStatus::Domain, format!("n must be in 1..={}", space.max_n())));
    }
    Ok(())
}

fn envelope(command: &str, inputs: serde_json::Value, results: Vec<ClaimResult>, start: Instant) -> Box<TpsgeoReport> {
    let secs = start.elapsed().as_secs_f64();
    Box::new(TpsgeoReport { inner: ReportEnvelope::new(command, inputs, results, secs) })
}

/// Library version as a static NUL-terminated string. Do not free.
#[no_mangle]
pub extern "C" fn tpsgeo_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, empty after a success.
/// Valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn tpsgeo_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tpsgeo_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a model from a potential definition in JSON:
/// `{name, convention, partition: {I, J}, parameters, model}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tpsgeo_model_from_json(json: *const c_char, out: *mut *mut TpsgeoModel) -> TpsgeoStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let text = read_str(json, "json")?;
        let m = ModelFile::parse(text)?.build()?;
        *out = Box::into_raw(Box::new(TpsgeoModel { inner: m }));
        Ok(())
    })
}

/// Releases a model. Null is ignored.
///
/// # Safety
/// `m` must come from [`tpsgeo_model_from_json`] and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tpsgeo_model_free(m: *mut TpsgeoModel) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of potential variables, 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live model.
#[no_mangle]
pub unsafe extern "C" fn tpsgeo_model_nvars(m: *const TpsgeoModel) -> usize {
    m.as_ref().map_or(0, |m| m.inner.nvars)
}

unsafe fn read_point<'a>(m: *const TpsgeoModel, point: *const f64, len: usize) -> Result<(&'a PotentialModel, &'a [f64]), Fail> {
    non_null(m, "model")?;
    non_null(point, "point")?;
    let model = &(*m).inner;
    if len != model.nvars {
        return Err(Fail(
            TpsgeoStatus::Domain,
            format!("point has {len} coordinates, model needs {}", model.nvars),
        ));
    }
    Ok((model, std::slice::from_raw_parts(point, len)))
}

/// Writes the Hessian of the potential at `point` into `out` row-major.
/// `out_len` must be at least nvars²; otherwise the call fails with
/// `BufferTooSmall` and stores the required length in `*out_len`.
///
/// # Safety
/// `point` must hold `len` doubles, `out` must hold `*out_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn tpsgeo_model_hessian(
    m: *const TpsgeoModel,
    point: *const f64,
    len: usize,
    out: *mut f64,
    out_len: *mut usize,
) -> TpsgeoStatus {
    guard(|| {
        let (model, p) = read_point(m, point, len)?;
        non_null(out_len, "out_len")?;
        let need = model.nvars * model.nvars;
        if *out_len < need || out.is_null() {
            *out_len = need;
            return Err(Fail(TpsgeoStatus::BufferTooSmall, format!("need {need} doubles")));
        }
        let h = model.jet(p)?.hess_matrix();
        let dst = std::slice::from_raw_parts_mut(out, need);
        for (d, s) in dst.iter_mut().zip(h.iter().flatten()) {
            *d = *s;
        }
        *out_len = need;
        Ok(())
    })
}

/// Full analysis of the Legendre surface at one base point, as a JSON record
/// `{point, ambient, metric, eigenvalues, classification, II_norm, ...}`.
///
/// # Safety
/// `point` must hold `len` doubles; `out_json` must be a valid pointer.
/// Free the result with [`tpsgeo_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tpsgeo_model_analyze(
    m: *const TpsgeoModel,
    point: *const f64,
    len: usize,
    out_json: *mut *mut c_char,
) -> TpsgeoStatus {
    guard(|| {
        non_null(out_json, "out_json")?;
        *out_json = ptr::null_mut();
        let (model, p) = read_point(m, point, len)?;
        let a = legendre::analyze_point(model, p)?;
        let text = serde_json::to_string(&a).map_err(|e| Fail(TpsgeoStatus::Internal, e.to_string()))?;
        *out_json = to_c_string(text);
        Ok(())
    })
}

/// Runs the curvature suite (`curvature --space S --n N`).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tpsgeo_curvature(space: TpsgeoSpace, n: usize, out: *mut *mut TpsgeoReport) -> TpsgeoStatus {
    let start = Instant::now();
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let sp = space_of(space);
        check_n(sp, n)?;
        let results = suites::curvature_suite(sp, n)?;
        let inputs = serde_json::json!({"space": format!("{sp:?}").to_lowercase(), "n": n});
        *out = Box::into_raw(envelope("curvature", inputs, results, start));
        Ok(())
    })
}

/// Solves for polynomial Killing fields up to `degree` and stores the kernel
/// dimension in `*dimension` when that pointer is non-null.
///
/// # Safety
/// `out` must be a valid pointer; `dimension` may be null.
#[no_mangle]
pub unsafe extern "C" fn tpsgeo_killing(
    space: TpsgeoSpace,
    n: usize,
    degree: u32,
    dimension: *mut usize,
    out: *mut *mut TpsgeoReport,
) -> TpsgeoStatus {
    let start = Instant::now();
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let sp = space_of(space);
        check_n(sp, n)?;
        let r = suites::killing_report(sp, n, degree)?;
        if let Some(d) = dimension.as_mut() {
            *d = r.dimension;
        }
        let inputs = serde_json::json!({"space": format!("{sp:?}").to_lowercase(), "n": n, "degree": degree});
        *out = Box::into_raw(envelope("killing", inputs, r.results, start));
        Ok(())
    })
}

/// Runs `verify-all`. `only` is null for every group or a comma separated
/// list of group names.
///
/// # Safety
/// `only` must be null or NUL-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tpsgeo_verify_all(n_max: usize, only: *const c_char, out: *mut *mut TpsgeoReport) -> TpsgeoStatus {
    let start = Instant::now();
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        if n_max == 0 {
            return Err(Fail(TpsgeoStatus::Domain, "n_max must be positive".into()));
        }
        let groups: Vec<String> = if only.is_null() {
            Vec::new()
        } else {
            read_str(only, "only")?
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect()
        };
        if let Some(bad) = groups.iter().find(|g| !suites::GROUPS.contains(&g.as_str())) {
            return Err(Fail(TpsgeoStatus::Domain, format!("unknown suite '{bad}'")));
        }
        let results = suites::verify_all(n_max, &groups);
        let inputs = serde_json::json!({"n_max": n_max, "only": groups, "tamper": false});
        *out = Box::into_raw(envelope("verify-all", inputs, results, start));
        Ok(())
    })
}

/// Releases a report. Null is ignored.
///
/// # Safety
/// `r` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tpsgeo_report_free(r: *mut TpsgeoReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// 1 if no claim failed, 0 otherwise (also for null).
///
/// # Safety
/// `r` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn tpsgeo_report_all_pass(r: *const TpsgeoReport) -> c_int {
    r.as_ref().map_or(0, |r| r.inner.all_pass() as c_int)
}

/// Number of claims, 0 for null.
///
/// # Safety
/// `r` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn tpsgeo_report_len(r: *const TpsgeoReport) -> usize {
    r.as_ref().map_or(0, |r| r.inner.results.len())
}

/// Status of claim `i`.
///
/// # Safety
/// `r` must be a live report and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tpsgeo_report_status(r: *const TpsgeoReport, i: usize, out: *mut TpsgeoClaimStatus) -> TpsgeoStatus {
    guard(|| {
        non_null(r, "report")?;
        non_null(out, "out")?;
        let res = &(*r).inner.results;
        let c = res
            .get(i)
            .ok_or_else(|| Fail(TpsgeoStatus::Domain, format!("claim {i} out of range 0..{}", res.len())))?;
        *out = match c.status {
            Status::ExactPass => TpsgeoClaimStatus::ExactPass,
            Status::NumericPass => TpsgeoClaimStatus::NumericPass,
            Status::Fail => TpsgeoClaimStatus::Fail,
            Status::NotApplicable => TpsgeoClaimStatus::NotApplicable,
        };
        Ok(())
    })
}

/// Renders the report as JSON, or as a markdown table when `markdown` is
/// nonzero. Free the result with [`tpsgeo_string_free`].
///
/// # Safety
/// `r` must be a live report and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tpsgeo_report_render(r: *const TpsgeoReport, markdown: c_int, out: *mut *mut c_char) -> TpsgeoStatus {
    guard(|| {
        non_null(r, "report")?;
        non_null(out, "out")?;
        let env = &(*r).inner;
        *out = to_c_string(if markdown != 0 { env.to_markdown() } else { env.to_json_pretty() });
        Ok(())
    })
}
