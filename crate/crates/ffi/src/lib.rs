//! C ABI for `hocs`.
//!
//! Every entry point returns a [`HocsStatus`]. On failure a message is kept in
//! thread-local storage and can be read with [`hocs_last_error_message`].
//! Strings handed out by this library must be released with [`hocs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hocs::quadrature::QuadSpec;
use hocs::suites::{run_suite, Suite, SuiteConfig};
use hocs::wavefunctions::{psi, EvalOptions, PositionPoint, Representation, SpectralPoint};
use hocs::{Complex64, Error};

/// Status codes. The numeric values of `DOMAIN` and `NUMERICAL` match the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HocsStatus {
    Ok = 0,
    /// A null pointer, invalid UTF-8 or an unknown name was passed.
    InvalidArgument = 1,
    /// Input outside the domain of the requested quantity (poles, bad chamber, ...).
    Domain = 2,
    /// A numerical routine failed to reach its tolerance.
    Numerical = 3,
    /// A Rust panic was caught at the boundary.
    Internal = 4,
}

impl From<&Error> for HocsStatus {
    fn from(e: &Error) -> Self {
        match e.exit_code() {
            2 => HocsStatus::Domain,
            _ => HocsStatus::Numerical,
        }
    }
}

/// A complex value with its error estimate.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HocsValue {
    pub re: f64,
    pub im: f64,
    pub abs_err: f64,
    pub n_evals: u64,
}

/// Opaque evaluation context: coupling g, relative tolerance and series cap.
pub struct HocsContext {
    g: f64,
    tol: f64,
    kmax: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: HocsStatus, msg: impl Into<String>) -> HocsStatus {
    set_error(msg);
    status
}

fn from_core(e: Error) -> HocsStatus {
    let st = HocsStatus::from(&e);
    fail(st, e.to_string())
}

fn guard(f: impl FnOnce() -> HocsStatus) -> HocsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(HocsStatus::Internal, "internal panic"),
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, HocsStatus> {
    if p.is_null() {
        return Err(fail(HocsStatus::InvalidArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(HocsStatus::InvalidArgument, format!("{what} is not valid UTF-8")))
}

/// Creates a context. Returns null if `g` is not positive and finite or `tol` is not positive.
#[no_mangle]
pub extern "C" fn hocs_context_new(g: f64, tol: f64, kmax: usize) -> *mut HocsContext {
    clear_error();
    if !(g.is_finite() && g > 0.0) {
        set_error(format!("coupling g must be positive and finite, got {g}"));
        return ptr::null_mut();
    }
    if !(tol.is_finite() && tol > 0.0) {
        set_error(format!("tolerance must be positive, got {tol}"));
        return ptr::null_mut();
    }
    Box::into_raw(Box::new(HocsContext { g, tol, kmax }))
}

/// Releases a context. Passing null is a no-op.
///
/// # Safety
/// `ctx` must come from [`hocs_context_new`] and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn hocs_context_free(ctx: *mut HocsContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Evaluates Ψ_λ(x) for `n` particles.
///
/// `rep` is one of `euler`, `mb`, `series`, `asymptotic`, `zero`.
/// `lambda_im` may be null for real spectral parameters.
///
/// # Safety
/// `lambda_re`, `x` (and `lambda_im` if non-null) must point to `n` doubles;
/// `rep` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hocs_psi(
    ctx: *const HocsContext,
    rep: *const c_char,
    n: usize,
    lambda_re: *const f64,
    lambda_im: *const f64,
    x: *const f64,
    out: *mut HocsValue,
) -> HocsStatus {
    guard(|| {
        if ctx.is_null() || lambda_re.is_null() || x.is_null() || out.is_null() {
            return fail(HocsStatus::InvalidArgument, "null pointer argument");
        }
        let ctx = &*ctx;
        let rep: Representation = match str_arg(rep, "rep") {
            Ok(s) => match s.parse() {
                Ok(r) => r,
                Err(e) => return fail(HocsStatus::InvalidArgument, e.to_string()),
            },
            Err(st) => return st,
        };
        let re = std::slice::from_raw_parts(lambda_re, n);
        let im: Vec<f64> = if lambda_im.is_null() { vec![0.0; n] } else { std::slice::from_raw_parts(lambda_im, n).to_vec() };
        let lam: Vec<Complex64> = re.iter().zip(&im).map(|(&a, &b)| Complex64::new(a, b)).collect();
        let xs = std::slice::from_raw_parts(x, n).to_vec();
        let r = SpectralPoint::new(lam).and_then(|l| {
            let p = PositionPoint::new(xs)?;
            psi(&l, &p, ctx.g, rep, &EvalOptions::new(QuadSpec::rel(ctx.tol), ctx.kmax))
        });
        match r {
            Ok(v) => {
                *out = HocsValue { re: v.value.re, im: v.value.im, abs_err: v.abs_err, n_evals: v.n_evals };
                HocsStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// Runs a verification suite at the context's coupling.
///
/// On `HOCS_STATUS_OK`, `*out_json` receives the JSON report (free it with
/// [`hocs_string_free`]) and `*out_pass` is 1 if every check passed, else 0.
///
/// # Safety
/// `suite` must be a NUL-terminated string; `out_json` and `out_pass` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hocs_verify_suite(
    ctx: *const HocsContext,
    suite: *const c_char,
    include_slow: bool,
    out_json: *mut *mut c_char,
    out_pass: *mut i32,
) -> HocsStatus {
    guard(|| {
        if ctx.is_null() || out_json.is_null() || out_pass.is_null() {
            return fail(HocsStatus::InvalidArgument, "null pointer argument");
        }
        let ctx = &*ctx;
        let suite: Suite = match str_arg(suite, "suite") {
            Ok(s) => match s.parse() {
                Ok(v) => v,
                Err(e) => return fail(HocsStatus::InvalidArgument, e.to_string()),
            },
            Err(st) => return st,
        };
        match run_suite(suite, &SuiteConfig { g: ctx.g, include_slow }) {
            Ok(rep) => {
                let s = serde_json::to_string(&rep).expect("serializable report");
                *out_pass = rep.pass as i32;
                *out_json = CString::new(s).expect("JSON has no NUL").into_raw();
                HocsStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// Message for the most recent failure on this thread, or null.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn hocs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by this library. Passing null is a no-op.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn hocs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hocs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
