use std::ffi::{CStr, CString};
use std::ptr;

use tamequot_ffi::*;

fn message() -> String {
    let m = tq_last_error_message();
    assert!(!m.is_null());
    unsafe { CStr::from_ptr(m) }.to_str().unwrap().to_string()
}

#[test]
fn primitive_roots() {
    let mut z = 0;
    assert_eq!(unsafe { tq_primitive_root(7, 3, &mut z) }, TqStatus::Ok);
    assert_eq!(z, 2);
    assert_eq!(unsafe { tq_primitive_root(13, 4, &mut z) }, TqStatus::Ok);
    assert_eq!(z, 5);
    assert_eq!(unsafe { tq_primitive_root(7, 4, &mut z) }, TqStatus::NoSuchRoot);
    assert_eq!(unsafe { tq_primitive_root(2, 2, &mut z) }, TqStatus::TameViolation);
    assert_eq!(unsafe { tq_primitive_root(9, 2, &mut z) }, TqStatus::NotPrime);
    assert!(message().contains('9'));
    let name = unsafe { CStr::from_ptr(tq_status_name(TqStatus::NotPrime)) };
    assert_eq!(name.to_str().unwrap(), "NotPrime");
}

#[test]
fn presentation_handle() {
    let weights = [1u64, 1];
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { tq_presentation_new(2, weights.as_ptr(), 2, &mut p) }, TqStatus::Ok);
    unsafe {
        assert_eq!(tq_presentation_generator_count(p), 3);
        assert_eq!(tq_presentation_relation_count(p), 1);
        assert_eq!(tq_presentation_arity(p), 2);
        assert_eq!(tq_presentation_uniformizer(p), 0);

        let mut exps = [0u32; 2];
        assert_eq!(tq_presentation_generator(p, 0, exps.as_mut_ptr(), 2), TqStatus::Ok);
        assert_eq!(exps, [2, 0]);
        assert_eq!(tq_presentation_generator(p, 3, exps.as_mut_ptr(), 2), TqStatus::OutOfRange);
        assert_eq!(tq_presentation_generator(p, 0, exps.as_mut_ptr(), 1), TqStatus::BufferTooSmall);

        let (mut lhs, mut rhs) = ([0u32; 3], [0u32; 3]);
        assert_eq!(tq_presentation_relation(p, 0, lhs.as_mut_ptr(), rhs.as_mut_ptr(), 3), TqStatus::Ok);
        assert_eq!((lhs, rhs), ([1, 0, 1], [0, 2, 0]));

        let json = tq_presentation_json(p);
        let text = CStr::from_ptr(json).to_str().unwrap().to_string();
        tq_string_free(json);
        assert!(text.contains("s*c = b^2"), "{text}");
        tq_presentation_free(p);
    }
}

#[test]
fn presentation_rejects_bad_input() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { tq_presentation_new(0, [1u64].as_ptr(), 1, &mut p) }, TqStatus::InvalidWeights);
    assert!(p.is_null());
    assert_eq!(unsafe { tq_presentation_new(2, ptr::null(), 2, &mut p) }, TqStatus::NullPointer);
    assert_eq!(unsafe { tq_presentation_new(2, [1u64].as_ptr(), 1, ptr::null_mut()) }, TqStatus::NullPointer);
    unsafe {
        assert_eq!(tq_presentation_generator_count(ptr::null()), 0);
        assert_eq!(tq_presentation_uniformizer(ptr::null()), -1);
        assert!(tq_presentation_json(ptr::null()).is_null());
        tq_presentation_free(ptr::null_mut());
        tq_string_free(ptr::null_mut());
    }
}

fn model(desc: &str, r: u64, weights: &[u64]) -> *mut TqModel {
    let desc = CString::new(desc).unwrap();
    let mut m = ptr::null_mut();
    let status = unsafe { tq_model_new(desc.as_ptr(), r, weights.as_ptr(), weights.len(), &mut m) };
    assert_eq!(status, TqStatus::Ok, "{}", message());
    m
}

#[test]
fn model_checks() {
    let m = model("projective:3", 2, &[1, 0, 1, 1, 0]);
    let (mut lhs, mut rhs, mut pass) = (0, 0, false);
    unsafe {
        assert_eq!(tq_model_serre(m, &mut lhs, &mut rhs, &mut pass), TqStatus::Ok);
        assert_eq!((lhs, rhs, pass), (4, 4, true));

        let (mut s_xl, mut s_x) = (0, 0);
        assert_eq!(tq_model_volume(m, 2, &mut s_xl, &mut s_x, &mut pass), TqStatus::Ok);
        assert_eq!((s_xl, s_x, pass), (4, 4, true));
        assert_eq!(tq_model_volume(m, 3, &mut s_xl, &mut s_x, &mut pass), TqStatus::NotQGroup);
        assert_eq!(tq_model_volume(m, 4, &mut s_xl, &mut s_x, &mut pass), TqStatus::NotPrime);

        let (mut counted, mut predicted) = (0, 0);
        assert_eq!(tq_model_count(m, 3, &mut counted, &mut predicted), TqStatus::Ok);
        assert_eq!(counted as i64, predicted);
        assert_eq!(tq_model_count(m, 4, &mut counted, &mut predicted), TqStatus::NotPrime);
        tq_model_free(m);

        assert_eq!(tq_model_serre(ptr::null(), &mut lhs, &mut rhs, &mut pass), TqStatus::NullPointer);
    }
}

#[test]
fn model_rejects_bad_descriptions() {
    let mut m = ptr::null_mut();
    let desc = CString::new("sphere:2").unwrap();
    let status = unsafe { tq_model_new(desc.as_ptr(), 2, [1u64, 1, 1].as_ptr(), 3, &mut m) };
    assert_eq!(status, TqStatus::InvalidInput);
    assert!(m.is_null());
    let desc = CString::new("affine:1").unwrap();
    let status = unsafe { tq_model_new(desc.as_ptr(), 4, [2u64, 1].as_ptr(), 2, &mut m) };
    assert_eq!(status, TqStatus::NotGaloisWeights);
    let status = unsafe { tq_model_new(ptr::null(), 2, [1u64, 1].as_ptr(), 2, &mut m) };
    assert_eq!(status, TqStatus::NullPointer);
}

fn cli(args: &[&str]) -> (i32, String) {
    let owned: Vec<CString> = args.iter().map(|a| CString::new(*a).unwrap()).collect();
    let ptrs: Vec<_> = owned.iter().map(|a| a.as_ptr()).collect();
    let mut out = ptr::null_mut();
    let code = unsafe { tq_run_cli(ptrs.len() as i32, ptrs.as_ptr(), &mut out) };
    assert!(!out.is_null());
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    unsafe { tq_string_free(out) };
    (code, text)
}

#[test]
fn cli_bridge() {
    let (code, text) = cli(&["serre", "--model", "affine:1", "--r", "2", "--weights", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(text.trim_end(), r#"{"serre_lhs":1,"serre_rhs":1,"pass":true}"#);

    let (code, text) = cli(&["diagonalize", "--p", "2", "--r", "2", "--vars", "x,y", "--images", "x; x+y"]);
    assert_eq!(code, 2);
    assert!(text.contains("TameViolation"));

    let (code, _) = cli(&[]);
    assert_eq!(code, 2);
}
