use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use legendre_susy_ffi::*;

unsafe fn take_string(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    ls_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(ls_last_error_message())
        .to_string_lossy()
        .into_owned()
}

#[test]
fn legendre_handle_round_trip() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(ls_legendre(2, &mut p), LsStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(ls_element_to_text(p, &mut text), LsStatus::Ok);
        assert_eq!(take_string(text), "(3x^2 - 1)/2");
        let mut v = 0.0;
        assert_eq!(ls_element_eval(p, 0.0, &mut v), LsStatus::Ok);
        assert_eq!(v, -0.5);
        assert_eq!(ls_element_eval(p, 1.5, &mut v), LsStatus::Domain);
        assert!(!last_error().is_empty());
        ls_element_free(p);
    }
}

#[test]
fn assoc_json_and_range() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(ls_assoc_legendre(2, 1, false, &mut p), LsStatus::Ok);
        let mut k = 0;
        assert_eq!(ls_element_half_power(p, &mut k), LsStatus::Ok);
        assert_eq!(k, 1);
        let mut json = ptr::null_mut();
        assert_eq!(ls_element_to_json(p, &mut json), LsStatus::Ok);
        assert_eq!(
            take_string(json),
            r#"{"k":1,"coeffs":[["0","1"],["3","1"]]}"#
        );
        ls_element_free(p);

        let mut q = ptr::null_mut();
        assert_eq!(ls_assoc_legendre(2, 5, false, &mut q), LsStatus::OutOfRange);
        assert!(q.is_null());
        assert!(last_error().contains('5'));
    }
}

#[test]
fn verify_identity_by_name() {
    unsafe {
        let id = CString::new("EQ22").unwrap();
        let params = CString::new("3").unwrap();
        let mut holds = false;
        let mut report = ptr::null_mut();
        assert_eq!(
            ls_verify_identity(id.as_ptr(), params.as_ptr(), &mut holds, &mut report),
            LsStatus::Ok
        );
        assert!(holds);
        assert_eq!(
            take_string(report),
            r#"{"identity":"EQ22","params":[3],"holds":true,"residual":{"terms":[]}}"#
        );

        let bogus = CString::new("EQ99").unwrap();
        assert_eq!(
            ls_verify_identity(bogus.as_ptr(), ptr::null(), &mut holds, ptr::null_mut()),
            LsStatus::InvalidArgument
        );
        assert_eq!(
            ls_verify_identity(ptr::null(), ptr::null(), &mut holds, ptr::null_mut()),
            LsStatus::NullPointer
        );
    }
}

#[test]
fn spectra_as_json() {
    unsafe {
        let chain = CString::new("legendre").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(
            ls_spectrum_json(chain.as_ptr(), 3, ptr::null(), &mut out),
            LsStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v["levels"], serde_json::json!(["0", "2", "6", "12"]));

        let osc = CString::new("oscillator").unwrap();
        let omega = CString::new("3/2").unwrap();
        assert_eq!(
            ls_spectrum_json(osc.as_ptr(), 2, omega.as_ptr(), &mut out),
            LsStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v["levels"], serde_json::json!(["0", "3/2", "3"]));

        let zero = CString::new("0").unwrap();
        assert_eq!(
            ls_spectrum_json(osc.as_ptr(), 2, zero.as_ptr(), &mut out),
            LsStatus::OutOfRange
        );
        assert_eq!(
            ls_spectrum_json(osc.as_ptr(), 2, ptr::null(), &mut out),
            LsStatus::NullPointer
        );
    }
}

#[test]
fn null_handles_are_rejected() {
    unsafe {
        let mut v = 0.0;
        assert_eq!(
            ls_element_eval(ptr::null(), 0.0, &mut v),
            LsStatus::NullPointer
        );
        assert_eq!(ls_legendre(1, ptr::null_mut()), LsStatus::NullPointer);
        ls_element_free(ptr::null_mut());
        ls_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/legendre_susy.h");
    let text = std::fs::read_to_string(&header).expect("header generated by build.rs");
    for decl in [
        "typedef struct LsElement LsElement;",
        "LS_STATUS_OK = 0",
        "ls_last_error_message(void)",
        "ls_legendre(uint32_t n, struct LsElement **out)",
        "ls_assoc_legendre(",
        "ls_element_eval(const struct LsElement *elem, double x, double *out)",
        "ls_element_to_json(",
        "ls_verify_identity(",
        "ls_spectrum_json(",
        "void ls_element_free(struct LsElement *elem)",
        "void ls_string_free(char *s)",
    ] {
        assert!(text.contains(decl), "missing `{decl}`");
    }

    // the header must also parse as C when a compiler is around
    if let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c"])
        .arg(&header)
        .status()
    {
        assert!(status.success());
    }
}
