//! Exercises the C ABI from Rust: handles, status codes, error messages.

use std::ffi::{CStr, CString};
use std::ptr;

use serde_json::Value;
use tpsgeo_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(tpsgeo_last_error()) }.to_string_lossy().into_owned()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    tpsgeo_string_free(s);
    out
}

unsafe fn model(json: &str) -> (TpsgeoStatus, *mut TpsgeoModel) {
    let c = CString::new(json).unwrap();
    let mut m = ptr::null_mut();
    let st = tpsgeo_model_from_json(c.as_ptr(), &mut m);
    (st, m)
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(tpsgeo_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn quadratic_hessian_and_analysis() {
    unsafe {
        let (st, m) = model(r#"{"model": "quadratic", "parameters": {"Q": [[2.0, 0.5], [0.5, -1.0]]}}"#);
        assert_eq!(st, TpsgeoStatus::Ok);
        assert_eq!(tpsgeo_model_nvars(m), 2);
        let p = [0.3, -0.7];
        let mut h = [0.0f64; 4];
        let mut len = 4usize;
        assert_eq!(tpsgeo_model_hessian(m, p.as_ptr(), 2, h.as_mut_ptr(), &mut len), TpsgeoStatus::Ok);
        // phi = 1/2 u^T Q u has Hessian Q
        assert_eq!(h, [2.0, 0.5, 0.5, -1.0]);

        let mut small = [0.0f64; 1];
        let mut len = 1usize;
        assert_eq!(
            tpsgeo_model_hessian(m, p.as_ptr(), 2, small.as_mut_ptr(), &mut len),
            TpsgeoStatus::BufferTooSmall
        );
        assert_eq!(len, 4);

        let mut js = ptr::null_mut();
        assert_eq!(tpsgeo_model_analyze(m, p.as_ptr(), 2, &mut js), TpsgeoStatus::Ok);
        let v: Value = serde_json::from_str(&take(js)).unwrap();
        assert_eq!(v["II_norm"], 0.0);
        assert_eq!(v["classification"], "indefinite");

        assert_eq!(tpsgeo_model_analyze(m, p.as_ptr(), 1, &mut js), TpsgeoStatus::Domain);
        assert!(js.is_null());
        assert!(last_error().contains("coordinates"));
        tpsgeo_model_free(m);
    }
}

#[test]
fn domain_violation_is_numeric_status() {
    unsafe {
        let (st, m) = model(r#"{"model": "van_der_waals"}"#);
        assert_eq!(st, TpsgeoStatus::Ok);
        let p = [1.0, 0.5];
        let mut js = ptr::null_mut();
        assert_eq!(tpsgeo_model_analyze(m, p.as_ptr(), 2, &mut js), TpsgeoStatus::Numeric);
        assert!(last_error().contains("b"));
        tpsgeo_model_free(m);
    }
}

#[test]
fn bad_inputs_map_to_codes() {
    unsafe {
        let (st, m) = model("{\"model\": ");
        assert_eq!(st, TpsgeoStatus::Parse);
        assert!(m.is_null());
        assert!(last_error().contains("line"));
        let (st, _) = model(r#"{"model": "nope"}"#);
        assert_eq!(st, TpsgeoStatus::Parse);

        let mut m = ptr::null_mut();
        assert_eq!(tpsgeo_model_from_json(ptr::null(), &mut m), TpsgeoStatus::NullArgument);
        let bad = [0xffu8, 0];
        assert_eq!(tpsgeo_model_from_json(bad.as_ptr().cast(), &mut m), TpsgeoStatus::InvalidUtf8);

        let mut r = ptr::null_mut();
        assert_eq!(tpsgeo_curvature(TpsgeoSpace::Tps, 0, &mut r), TpsgeoStatus::Domain);
        assert_eq!(tpsgeo_curvature(TpsgeoSpace::Sympl, 4, &mut r), TpsgeoStatus::Domain);
        assert!(r.is_null());
        let only = CString::new("heisenberg,bogus").unwrap();
        assert_eq!(tpsgeo_verify_all(2, only.as_ptr(), &mut r), TpsgeoStatus::Domain);
        assert!(last_error().contains("bogus"));

        // null handles are tolerated by the free and query functions
        tpsgeo_model_free(ptr::null_mut());
        tpsgeo_report_free(ptr::null_mut());
        tpsgeo_string_free(ptr::null_mut());
        assert_eq!(tpsgeo_report_len(ptr::null()), 0);
        assert_eq!(tpsgeo_report_all_pass(ptr::null()), 0);
    }
}

#[test]
fn curvature_report_round_trip() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(tpsgeo_curvature(TpsgeoSpace::Sympl, 1, &mut r), TpsgeoStatus::Ok);
        assert_eq!(last_error(), "");
        assert_eq!(tpsgeo_report_all_pass(r), 1);
        let n = tpsgeo_report_len(r);
        assert!(n > 0);
        let mut st = TpsgeoClaimStatus::Fail;
        for i in 0..n {
            assert_eq!(tpsgeo_report_status(r, i, &mut st), TpsgeoStatus::Ok);
            assert_ne!(st, TpsgeoClaimStatus::Fail);
        }
        assert_eq!(tpsgeo_report_status(r, n, &mut st), TpsgeoStatus::Domain);

        let mut s = ptr::null_mut();
        assert_eq!(tpsgeo_report_render(r, 0, &mut s), TpsgeoStatus::Ok);
        let v: Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["command"], "curvature");
        let factor = v["results"]
            .as_array()
            .unwrap()
            .iter()
            .find_map(|c| c["witness"].get("einstein_factor").cloned())
            .unwrap();
        assert_eq!(factor, "3/2");

        assert_eq!(tpsgeo_report_render(r, 1, &mut s), TpsgeoStatus::Ok);
        assert!(take(s).contains("| claim |"));
        tpsgeo_report_free(r);
    }
}

#[test]
fn killing_dimension_out_param() {
    unsafe {
        let mut r = ptr::null_mut();
        let mut dim = 0usize;
        assert_eq!(tpsgeo_killing(TpsgeoSpace::Tps, 2, 2, &mut dim, &mut r), TpsgeoStatus::Ok);
        assert_eq!(dim, 9);
        assert_eq!(tpsgeo_report_all_pass(r), 1);
        tpsgeo_report_free(r);
        assert_eq!(tpsgeo_killing(TpsgeoSpace::Tps, 1, 0, &mut dim, &mut r), TpsgeoStatus::Domain);
    }
}

#[test]
fn verify_all_subset() {
    unsafe {
        let mut r = ptr::null_mut();
        let only = CString::new("heisenberg").unwrap();
        assert_eq!(tpsgeo_verify_all(2, only.as_ptr(), &mut r), TpsgeoStatus::Ok);
        assert_eq!(tpsgeo_report_all_pass(r), 1);
        assert!(tpsgeo_report_len(r) > 0);
        tpsgeo_report_free(r);
    }
}
