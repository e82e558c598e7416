use std::ffi::{CStr, CString};
use std::ptr;

use tanaka_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { tanaka_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(tanaka_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn heisenberg_round_trip() {
    let json = CString::new(r#"{"n":1,"k":1,"hermitian":[[["1"]]]}"#).unwrap();
    let mut model = ptr::null_mut();
    assert_eq!(unsafe { tanaka_model_from_json(json.as_ptr(), &mut model) }, TanakaStatus::Ok);

    let mut passed = false;
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { tanaka_model_validate(model, &mut passed, &mut report) }, TanakaStatus::Ok);
    assert!(passed);
    assert!(take(report).contains("\"passed\":true"));

    let mut p = ptr::null_mut();
    assert_eq!(unsafe { tanaka_prolong(model, 12, &mut p) }, TanakaStatus::Ok);
    unsafe {
        assert_eq!(tanaka_prolongation_top_degree(p), 2);
        assert_eq!(tanaka_prolongation_jet_order(p), 2);
        let dims: Vec<i64> = (-2..=2).map(|d| tanaka_prolongation_dim(p, d)).collect();
        assert_eq!(dims, vec![1, 2, 2, 2, 1]);
        assert_eq!(tanaka_prolongation_dim(p, 3), 0);
    }
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { tanaka_prolongation_to_json(p, &mut s) }, TanakaStatus::Ok);
    assert!(take(s).starts_with(r#"{"dims":{"-2":1,"-1":2,"0":2,"1":2,"2":1}"#));

    let mut fields = ptr::null_mut();
    assert_eq!(unsafe { tanaka_realize_json(p, -2, &mut fields) }, TanakaStatus::Ok);
    let fields: serde_json::Value = serde_json::from_str(&take(fields)).unwrap();
    let field = CString::new(fields[0].to_string()).unwrap();
    let mut verdict = false;
    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { tanaka_verify_field(model, field.as_ptr(), &mut verdict, &mut cert) }, TanakaStatus::Ok);
    assert!(verdict);
    assert!(take(cert).contains("\"verdict\":true"));

    let mut none = ptr::null_mut();
    assert_eq!(unsafe { tanaka_realize_json(p, 5, &mut none) }, TanakaStatus::DomainFailure);
    assert!(!last_error().is_empty());
    unsafe {
        tanaka_prolongation_free(p);
        tanaka_model_free(model);
    }
}

#[test]
fn catalog_and_errors() {
    let name = CString::new("codim5").unwrap();
    let mut model = ptr::null_mut();
    assert_eq!(unsafe { tanaka_model_from_catalog(name.as_ptr(), 0, 0, &mut model) }, TanakaStatus::Ok);
    let mut passed = false;
    assert_eq!(unsafe { tanaka_model_validate(model, &mut passed, ptr::null_mut()) }, TanakaStatus::Ok);
    assert!(passed);
    unsafe { tanaka_model_free(model) };

    let bad = CString::new("{not json").unwrap();
    let mut m2 = ptr::null_mut();
    assert_eq!(unsafe { tanaka_model_from_json(bad.as_ptr(), &mut m2) }, TanakaStatus::ParseError);
    assert!(last_error().contains("parse"));
    assert_eq!(unsafe { tanaka_model_from_json(ptr::null(), &mut m2) }, TanakaStatus::NullArgument);

    let so = CString::new("so_family").unwrap();
    assert_eq!(unsafe { tanaka_model_from_catalog(so.as_ptr(), 2, 0, &mut m2) }, TanakaStatus::DomainFailure);
    let unknown = CString::new("nope").unwrap();
    assert_eq!(unsafe { tanaka_model_from_catalog(unknown.as_ptr(), 0, 0, &mut m2) }, TanakaStatus::DomainFailure);

    let invalid = [0xffu8, 0xfe, 0];
    assert_eq!(
        unsafe { tanaka_model_from_json(invalid.as_ptr() as *const std::ffi::c_char, &mut m2) },
        TanakaStatus::InvalidUtf8
    );
    unsafe {
        assert_eq!(tanaka_prolongation_top_degree(ptr::null()), -1);
        tanaka_model_free(ptr::null_mut());
        tanaka_string_free(ptr::null_mut());
    }
}

#[test]
fn degenerate_model_fails_prolongation() {
    let json = CString::new(r#"{"n":2,"k":1,"hermitian":[[["1","0"],["0","0"]]]}"#).unwrap();
    let mut model = ptr::null_mut();
    assert_eq!(unsafe { tanaka_model_from_json(json.as_ptr(), &mut model) }, TanakaStatus::Ok);
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { tanaka_prolong(model, 12, &mut p) }, TanakaStatus::DomainFailure);
    assert!(p.is_null());
    unsafe { tanaka_model_free(model) };
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/tanaka.h")).unwrap();
    for sym in ["TanakaModel", "TanakaProlongation", "tanaka_prolong", "tanaka_verify_field", "tanaka_last_error", "TanakaStatus_Ok"] {
        assert!(header.contains(sym), "{sym} missing from header");
    }
}
