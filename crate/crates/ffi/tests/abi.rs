use std::ffi::{CStr, CString};
use std::ptr;

use hocs_ffi::*;

fn last_error() -> Option<String> {
    let p = hocs_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

struct Ctx(*mut HocsContext);

impl Ctx {
    fn new(g: f64, tol: f64) -> Self {
        let p = hocs_context_new(g, tol, 200);
        assert!(!p.is_null());
        Ctx(p)
    }
}

impl Drop for Ctx {
    fn drop(&mut self) {
        unsafe { hocs_context_free(self.0) }
    }
}

fn eval(ctx: &Ctx, rep: &str, re: &[f64], im: Option<&[f64]>, x: &[f64]) -> (HocsStatus, HocsValue) {
    let rep = CString::new(rep).unwrap();
    let mut out = HocsValue::default();
    let st = unsafe {
        hocs_psi(ctx.0, rep.as_ptr(), re.len(), re.as_ptr(), im.map_or(ptr::null(), |v| v.as_ptr()), x.as_ptr(), &mut out)
    };
    (st, out)
}

#[test]
fn zero_point_value() {
    let ctx = Ctx::new(2.0, 1e-8);
    let (st, v) = eval(&ctx, "zero", &[0.0, 0.0], None, &[0.0, 0.0]);
    assert_eq!(st, HocsStatus::Ok);
    assert!((v.re - 1.0 / 6.0).abs() < 1e-15);
    assert_eq!(v.im, 0.0);
}

#[test]
fn euler_single_particle_is_plane_wave() {
    let ctx = Ctx::new(2.0, 1e-10);
    let (st, v) = eval(&ctx, "euler", &[0.3], Some(&[0.0]), &[1.2]);
    assert_eq!(st, HocsStatus::Ok);
    let phase = 2.0 * std::f64::consts::PI * 0.36;
    assert!((v.re - phase.cos()).abs() < 1e-9 && (v.im - phase.sin()).abs() < 1e-9);
    assert!(v.abs_err >= 0.0);
}

#[test]
fn matches_core_library() {
    let ctx = Ctx::new(1.5, 1e-9);
    let (st, v) = eval(&ctx, "mb", &[0.3, -0.2], None, &[0.5, 0.0]);
    assert_eq!(st, HocsStatus::Ok);
    let lam = hocs::wavefunctions::SpectralPoint::real(&[0.3, -0.2]).unwrap();
    let x = hocs::wavefunctions::PositionPoint::new(vec![0.5, 0.0]).unwrap();
    let r = hocs::wavefunctions::mb_psi(&lam, &x, 1.5, &hocs::quadrature::QuadSpec::rel(1e-9)).unwrap();
    assert_eq!((v.re, v.im), (r.value.re, r.value.im));
}

#[test]
fn domain_error_sets_status_and_message() {
    let ctx = Ctx::new(2.0, 1e-8);
    // The series representation needs x in the descending chamber.
    let (st, _) = eval(&ctx, "series", &[0.3, -0.2], None, &[0.0, 1.0]);
    assert_eq!(st, HocsStatus::Domain);
    assert_eq!(st as i32, 2);
    assert!(last_error().is_some());
    let (st, _) = eval(&ctx, "zero", &[0.0, 0.0], None, &[0.0, 0.0]);
    assert_eq!(st, HocsStatus::Ok);
    assert!(last_error().is_none());
}

#[test]
fn invalid_arguments() {
    assert!(hocs_context_new(-1.0, 1e-8, 10).is_null());
    assert!(last_error().unwrap().contains("coupling"));
    assert!(hocs_context_new(1.0, 0.0, 10).is_null());
    let ctx = Ctx::new(2.0, 1e-8);
    let (st, _) = eval(&ctx, "bogus", &[0.1], None, &[0.0]);
    assert_eq!(st, HocsStatus::InvalidArgument);
    let mut out = HocsValue::default();
    let st = unsafe { hocs_psi(ctx.0, ptr::null(), 0, ptr::null(), ptr::null(), ptr::null(), &mut out) };
    assert_eq!(st, HocsStatus::InvalidArgument);
    unsafe {
        hocs_context_free(ptr::null_mut());
        hocs_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_suite_returns_json() {
    let ctx = Ctx::new(2.0, 1e-8);
    let name = CString::new("kernel-identity").unwrap();
    let mut json = ptr::null_mut();
    let mut pass = -1;
    let st = unsafe { hocs_verify_suite(ctx.0, name.as_ptr(), false, &mut json, &mut pass) };
    assert_eq!(st, HocsStatus::Ok);
    assert_eq!(pass, 1);
    let v: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(json) }.to_str().unwrap()).unwrap();
    assert_eq!(v["suite"], "kernel-identity");
    assert_eq!(v["pass"], true);
    unsafe { hocs_string_free(json) };
}

#[test]
fn verify_suite_rejects_bad_coupling() {
    let ctx = Ctx::new(0.5, 1e-8);
    let name = CString::new("bounds").unwrap();
    let mut json = ptr::null_mut();
    let mut pass = -1;
    let st = unsafe { hocs_verify_suite(ctx.0, name.as_ptr(), false, &mut json, &mut pass) };
    assert_eq!(st, HocsStatus::Domain);
    assert!(json.is_null());
    let unknown = CString::new("nope").unwrap();
    let st = unsafe { hocs_verify_suite(ctx.0, unknown.as_ptr(), false, &mut json, &mut pass) };
    assert_eq!(st, HocsStatus::InvalidArgument);
}

#[test]
fn header_is_generated() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/hocs.h")).unwrap();
    for sym in ["hocs_context_new", "hocs_psi", "hocs_verify_suite", "hocs_last_error_message", "hocs_string_free", "HOCS_STATUS_DOMAIN = 2"] {
        assert!(h.contains(sym), "{sym} missing from header");
    }
    assert_eq!(unsafe { CStr::from_ptr(hocs_version()) }.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
