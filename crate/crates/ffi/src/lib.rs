//! C ABI over `ffcurves`.
//!
//! Every fallible function returns an [`FfcStatus`]; on failure the message is
//! available from [`ffc_last_error`] on the same thread until the next call.
//! Strings returned through out-pointers are owned by the caller and must be
//! released with [`ffc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ffcurves::cli::{analyze_curve, parse_curve_spec, parse_places, run_args, ParsedCurve, RunError};
use ffcurves::finitecurve::frobenius_data;
use ffcurves::localred::global_data;
use ffcurves::modgroups::gamma_spec;
use ffcurves::tatecurve::j_series;
use ffcurves::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FfcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Singular = 4,
    Precondition = 5,
    InsufficientPrecision = 6,
    ResourceCap = 7,
    Panic = 8,
}

impl From<&Error> for FfcStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse { .. } => FfcStatus::Parse,
            Error::Singular => FfcStatus::Singular,
            Error::Precondition(_) => FfcStatus::Precondition,
            Error::InsufficientPrecision(_) => FfcStatus::InsufficientPrecision,
            Error::ResourceCap(_) => FfcStatus::ResourceCap,
        }
    }
}

/// Opaque handle to a parsed, nonsingular curve.
pub struct FfcCurve {
    inner: ParsedCurve,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(FfcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(FfcStatus::from(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> FfcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FfcStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FfcStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(FfcStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(FfcStatus::InvalidUtf8, "argument is not valid UTF-8".into()))
}

unsafe fn curve_ref<'a>(c: *const FfcCurve) -> Result<&'a ParsedCurve, Failure> {
    c.as_ref().map(|c| &c.inner).ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(FfcStatus::Panic, "string contains NUL".into()))?;
    write(out, c.into_raw())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ffc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Last error message on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn ffc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parse a curve spec such as `p=5 s=1; a=(1); b=(T)`.
///
/// # Safety
/// `spec` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ffc_curve_new(spec: *const c_char, out: *mut *mut FfcCurve) -> FfcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let inner = parse_curve_spec(read_str(spec)?)?;
        write(out, Box::into_raw(Box::new(FfcCurve { inner })))
    })
}

/// # Safety
/// `curve` must come from [`ffc_curve_new`] and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ffc_curve_free(curve: *mut FfcCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// The `analyze` report of one curve as JSON.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ffc_curve_analyze_json(curve: *const FfcCurve, out: *mut *mut c_char) -> FfcStatus {
    guard(|| {
        let v = analyze_curve(curve_ref(curve)?)?;
        write_string(out, serde_json::to_string(&v).expect("serializable"))
    })
}

/// `h_F(E)` and `h_{F,g}(E)` as reduced fractions.
///
/// # Safety
/// `curve` must be a live handle; all out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ffc_curve_heights(
    curve: *const FfcCurve,
    hf_num: *mut i64,
    hf_den: *mut i64,
    hfg_num: *mut i64,
    hfg_den: *mut i64,
) -> FfcStatus {
    guard(|| {
        if [hf_num, hf_den, hfg_num, hfg_den].iter().any(|p| p.is_null()) {
            return Err(null());
        }
        let g = global_data(&curve_ref(curve)?.curve)?;
        write(hf_num, *g.h_f.numer())?;
        write(hf_den, *g.h_f.denom())?;
        write(hfg_num, *g.h_fg.numer())?;
        write(hfg_den, *g.h_fg.denom())
    })
}

/// `deg 𝔫_E`.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ffc_curve_conductor_degree(curve: *const FfcCurve, out: *mut i64) -> FfcStatus {
    guard(|| {
        let g = global_data(&curve_ref(curve)?.curve)?;
        write(out, g.conductor.degree())
    })
}

/// `a_𝔭` and `#k_𝔭` at a good place given as `inf` or a monic irreducible polynomial.
///
/// # Safety
/// `curve` must be a live handle; `place` NUL-terminated; out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn ffc_curve_frobenius_trace(
    curve: *const FfcCurve,
    place: *const c_char,
    trace: *mut i64,
    norm: *mut u64,
) -> FfcStatus {
    guard(|| {
        if trace.is_null() || norm.is_null() {
            return Err(null());
        }
        let c = curve_ref(curve)?;
        let places = parse_places(c.curve.ctx(), read_str(place)?)?;
        let [p] = places.as_slice() else {
            return Err(Error::precondition("expected exactly one place").into());
        };
        let d = frobenius_data(&c.curve, p)?;
        write(trace, d.trace)?;
        write(norm, d.norm)
    })
}

/// The first `n` coefficients of `j(q)` (from `q⁻¹`) as a JSON array of decimal strings.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ffc_tate_j_coefficients(n: usize, out: *mut *mut c_char) -> FfcStatus {
    guard(|| {
        if n == 0 || n > 4096 {
            return Err(Error::precondition("n must lie in 1..=4096").into());
        }
        let coeffs = j_series(n).to_decimal_strings();
        write_string(out, serde_json::to_string(&coeffs).expect("serializable"))
    })
}

/// `|Γ_n|` for `H_n = ⟨r⟩ ⊆ (Z/n)^×`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ffc_gamma_order(r: u64, n: u64, out: *mut u64) -> FfcStatus {
    guard(|| write(out, gamma_spec(r, n)?.gamma_order))
}

/// Run a command line given as a JSON array of arguments (without program
/// name) and return the JSON report.
///
/// # Safety
/// `args_json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ffc_run_json(args_json: *const c_char, out: *mut *mut c_char) -> FfcStatus {
    guard(|| {
        let args: Vec<String> = serde_json::from_str(read_str(args_json)?)
            .map_err(|e| Failure(FfcStatus::Parse, format!("arguments must be a JSON string array: {e}")))?;
        let report = run_args(args).map_err(|e| match e {
            RunError::Usage(m) => Failure(FfcStatus::Parse, m),
            RunError::Run(e) => Failure::from(e),
        })?;
        write_string(out, report.to_json())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ffc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
