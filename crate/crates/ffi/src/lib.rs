//! C interface to `partition_saddle`.
//!
//! Every fallible call returns a [`PsStatus`] and writes its result through an
//! out pointer. On failure the message is kept per thread and can be read with
//! [`ps_last_error`]. Handles are opaque and must be released with the matching
//! `_free` function; strings returned by the library are released with
//! [`ps_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use partition_saddle::asymptotic::{self, AsymConstants};
use partition_saddle::saddle::{self, default_quad_points};
use partition_saddle::{exact_counts, parse_spec, pentagonal_counts, BigCountTable, Error, LambdaSpec, Precision};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Argument = 3,
    Parse = 4,
    Admissibility = 5,
    Capability = 6,
    Domain = 7,
    Pole = 8,
    Numeric = 9,
    Quadrature = 10,
    Fit = 11,
    OutOfRange = 12,
    Panic = 13,
}

impl From<&Error> for PsStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Argument(_) => PsStatus::Argument,
            Error::Parse { .. } => PsStatus::Parse,
            Error::Admissibility(_) => PsStatus::Admissibility,
            Error::Capability(_) => PsStatus::Capability,
            Error::Domain(_) => PsStatus::Domain,
            Error::Pole(_) => PsStatus::Pole,
            Error::Numeric(_) => PsStatus::Numeric,
            Error::Quadrature(_) => PsStatus::Quadrature,
            Error::Fit(_) => PsStatus::Fit,
        }
    }
}

/// A parsed part set.
pub struct PsSpec(LambdaSpec);

/// Exact counts `p(0), …, p(n_max)`.
pub struct PsCounts(BigCountTable);

/// Main-term constants at a fixed working precision.
pub struct PsAsymptotics(AsymConstants);

/// Constants of `p(n) ∼ b e^{c n^{α/(α+1)}} n^{−h}`, rounded to `double`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct PsConstantValues {
    pub alpha: f64,
    pub frak_a: f64,
    pub frak_b: f64,
    pub frak_c: f64,
    pub frak_h: f64,
    pub gamma10: f64,
    /// Meaningful only when `has_gamma01` is set.
    pub gamma01: f64,
    pub has_gamma01: bool,
}

/// Saddle point of `−Φ′(ϱ) = n`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct PsSaddle {
    pub rho: f64,
    /// `Φ″(ϱ)`.
    pub phi2: f64,
    /// `Φ(ϱ) = log F(ϱ)`.
    pub log_f: f64,
    /// `|Φ′(ϱ) + n|`.
    pub residual: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn fail(status: PsStatus, message: impl Into<String>) -> PsStatus {
    set_error(message.into());
    status
}

fn from_error(e: Error) -> PsStatus {
    let status = PsStatus::from(&e);
    fail(status, e.to_string())
}

/// Runs `body`, converting panics into [`PsStatus::Panic`].
fn guard(body: impl FnOnce() -> PsStatus) -> PsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => {
            if status == PsStatus::Ok {
                LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            }
            status
        }
        Err(payload) => {
            let text = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(PsStatus::Panic, format!("internal panic: {text}"))
        }
    }
}

macro_rules! deref {
    ($p:expr) => {
        match unsafe { $p.as_ref() } {
            Some(v) => v,
            None => return fail(PsStatus::NullPointer, concat!("null pointer: ", stringify!($p))),
        }
    };
}

macro_rules! try_ps {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return from_error(e),
        }
    };
}

fn write<T>(out: *mut T, value: T) -> PsStatus {
    if out.is_null() {
        return fail(PsStatus::NullPointer, "null output pointer");
    }
    unsafe { out.write(value) };
    PsStatus::Ok
}

fn write_string(out: *mut *mut c_char, s: String) -> PsStatus {
    match CString::new(s) {
        Ok(c) => write(out, c.into_raw()),
        Err(_) => fail(PsStatus::InvalidUtf8, "string contains an interior nul"),
    }
}

fn precision(digits: u32) -> Precision {
    if digits == 0 {
        Precision::default()
    } else {
        Precision::new(digits)
    }
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn ps_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ps_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ps_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses a part-set description such as `classical`, `powers(2)` or `ap(3,4,1)`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_spec_parse(text: *const c_char, out: *mut *mut PsSpec) -> PsStatus {
    guard(|| {
        if text.is_null() {
            return fail(PsStatus::NullPointer, "null spec text");
        }
        let Ok(s) = unsafe { CStr::from_ptr(text) }.to_str() else {
            return fail(PsStatus::InvalidUtf8, "spec text is not UTF-8");
        };
        let spec = try_ps!(parse_spec(s));
        write(out, Box::into_raw(Box::new(PsSpec(spec))))
    })
}

/// # Safety
/// `spec` must come from [`ps_spec_parse`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ps_spec_free(spec: *mut PsSpec) {
    if !spec.is_null() {
        drop(unsafe { Box::from_raw(spec) });
    }
}

/// Canonical text of a part set; release with [`ps_string_free`].
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_spec_canonical(spec: *const PsSpec, out: *mut *mut c_char) -> PsStatus {
    guard(|| {
        let spec = deref!(spec);
        write_string(out, spec.0.to_string())
    })
}

/// Exact counts up to `n_max`, by the pentagonal recurrence for the classical set.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_exact_counts(spec: *const PsSpec, n_max: i64, out: *mut *mut PsCounts) -> PsStatus {
    guard(|| {
        let spec = deref!(spec);
        let table = match &spec.0 {
            LambdaSpec::Classical => try_ps!(pentagonal_counts(n_max)),
            other => try_ps!(exact_counts(&other.parts_up_to(n_max.max(0) as u64), n_max)),
        };
        write(out, Box::into_raw(Box::new(PsCounts(table))))
    })
}

/// # Safety
/// `counts` must come from [`ps_exact_counts`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ps_counts_free(counts: *mut PsCounts) {
    if !counts.is_null() {
        drop(unsafe { Box::from_raw(counts) });
    }
}

/// Largest `n` held by the table.
///
/// # Safety
/// `counts` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_counts_n_max(counts: *const PsCounts, out: *mut usize) -> PsStatus {
    guard(|| {
        let counts = deref!(counts);
        write(out, counts.0.n_max())
    })
}

/// `p(n)` in decimal; release with [`ps_string_free`].
///
/// # Safety
/// `counts` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_counts_get(counts: *const PsCounts, n: usize, out: *mut *mut c_char) -> PsStatus {
    guard(|| {
        let counts = deref!(counts);
        match counts.0.get(n) {
            Some(v) => write_string(out, v.to_string()),
            None => fail(PsStatus::OutOfRange, format!("n = {n} beyond n_max = {}", counts.0.n_max())),
        }
    })
}

/// `log p(n)`, `-inf` when the count is zero.
///
/// # Safety
/// `counts` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_counts_log(counts: *const PsCounts, n: usize, out: *mut f64) -> PsStatus {
    guard(|| {
        let counts = deref!(counts);
        match counts.0.ln(n, 64) {
            Some(v) => write(out, v.to_f64()),
            None => fail(PsStatus::OutOfRange, format!("n = {n} beyond n_max = {}", counts.0.n_max())),
        }
    })
}

/// Main-term constants at `digits` decimal digits; `0` selects the default precision.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_asymptotics_new(spec: *const PsSpec, digits: u32, out: *mut *mut PsAsymptotics) -> PsStatus {
    guard(|| {
        let spec = deref!(spec);
        let ld = try_ps!(partition_saddle::l_data(&spec.0, precision(digits)));
        let ac = try_ps!(asymptotic::constants(&ld));
        write(out, Box::into_raw(Box::new(PsAsymptotics(ac))))
    })
}

/// # Safety
/// `handle` must come from [`ps_asymptotics_new`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ps_asymptotics_free(handle: *mut PsAsymptotics) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// # Safety
/// `handle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_asymptotics_values(handle: *const PsAsymptotics, out: *mut PsConstantValues) -> PsStatus {
    guard(|| {
        let ac = &deref!(handle).0;
        let values = PsConstantValues {
            alpha: ac.alpha.to_f64(),
            frak_a: ac.frak_a.to_f64(),
            frak_b: ac.frak_b.to_f64(),
            frak_c: ac.frak_c.to_f64(),
            frak_h: ac.frak_h.to_f64(),
            gamma10: ac.gamma10.to_f64(),
            gamma01: ac.gamma01.as_ref().map_or(f64::NAN, |g| g.to_f64()),
            has_gamma01: ac.gamma01.is_some(),
        };
        write(out, values)
    })
}

/// `log` of the asymptotic estimate of `p(n)` with correction order 0 or 1.
///
/// `degraded` may be null; otherwise it is set when order 1 lacked `γ₀₁`.
///
/// # Safety
/// `handle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_estimate_log(
    handle: *const PsAsymptotics,
    n: u64,
    order: u8,
    out: *mut f64,
    degraded: *mut bool,
) -> PsStatus {
    guard(|| {
        let ac = &deref!(handle).0;
        let e = try_ps!(asymptotic::estimate(ac, n, order));
        if !degraded.is_null() {
            unsafe { degraded.write(e.degraded) };
        }
        write(out, e.log_value.to_f64())
    })
}

/// Solves `−Φ′(ϱ) = n`.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_solve_saddle(spec: *const PsSpec, n: u64, out: *mut PsSaddle) -> PsStatus {
    guard(|| {
        let spec = deref!(spec);
        let ctx = try_ps!(saddle::solve_saddle(&spec.0, n));
        write(out, PsSaddle { rho: ctx.rho, phi2: ctx.phi2, log_f: ctx.f_log, residual: ctx.residual })
    })
}

/// `log p(n)` from the saddle-point series with `k ≤ 2` correction orders.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_saddle_estimate_log(spec: *const PsSpec, n: u64, k: u32, out: *mut f64) -> PsStatus {
    guard(|| {
        let spec = deref!(spec);
        write(out, try_ps!(saddle::saddle_estimate(&spec.0, n, k)))
    })
}

/// `log p(n)` by Cauchy's integral; `quad_points = 0` selects the default grid.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_cauchy_log_count(spec: *const PsSpec, n: u64, quad_points: usize, out: *mut f64) -> PsStatus {
    guard(|| {
        let spec = deref!(spec);
        let points = if quad_points == 0 { default_quad_points(&spec.0, n) } else { quad_points };
        write(out, try_ps!(saddle::cauchy_log_count(&spec.0, n, points)))
    })
}
