use std::ffi::{c_char, CStr, CString};
use std::ptr;

use advreal_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { advr_string_free(s) };
    out
}

fn last_error() -> String {
    let p = advr_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn matrix(text: &str) -> *mut AdvrMatrix {
    let c = CString::new(text).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { advr_matrix_parse(c.as_ptr(), &mut m) }, AdvrStatus::Ok);
    m
}

#[test]
fn matrix_handle_lifecycle() {
    let m = matrix("2 3\n1 2 3\n2 4 6\n");
    unsafe {
        assert_eq!((advr_matrix_rows(m), advr_matrix_cols(m)), (2, 3));
        let mut r = 0usize;
        assert_eq!(advr_rank(m, 1, 100_000, &mut r), AdvrStatus::Ok);
        assert_eq!(r, 1);
        advr_matrix_free(m);
        advr_matrix_free(ptr::null_mut());
        assert_eq!(advr_matrix_rows(ptr::null()), 0);
    }
}

#[test]
fn parse_errors_set_last_error() {
    let bad = CString::new("2 2\n1 2 3").unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { advr_matrix_parse(bad.as_ptr(), &mut m) }, AdvrStatus::InputError);
    assert!(m.is_null());
    assert!(last_error().contains("matrix"));
    assert_eq!(unsafe { advr_matrix_parse(ptr::null(), &mut m) }, AdvrStatus::NullPointer);
}

#[test]
fn spectral_calls() {
    let m = matrix("2 2\n0 1\n1 0\n");
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(advr_eigenvalues(m, 20, &mut out), AdvrStatus::Ok);
        assert_eq!(take(out), "-1\n1\n");
        assert_eq!(advr_diag(m, 2, 16, 1_000_000, &mut out), AdvrStatus::Ok);
        assert_eq!(take(out).lines().count(), 4);
        let status = advr_diag(m, 1, 16, 20_000, &mut out);
        assert!(matches!(status, AdvrStatus::FuelExhausted | AdvrStatus::AdviceSuspect), "{status:?}");
        assert_eq!(advr_evec(m, 0, 16, 1_000_000, &mut out), AdvrStatus::Ok);
        assert_eq!(take(out).lines().count(), 2);
        advr_matrix_free(m);
    }
    let asym = matrix("2 2\n0 1\n2 0\n");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { advr_eigenvalues(asym, 20, &mut out) }, AdvrStatus::InputError);
    unsafe { advr_matrix_free(asym) };
}

#[test]
fn floor_with_parity_advice() {
    let x = CString::new("37/10").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { advr_floor_parity(x.as_ptr(), 1, &mut out) }, AdvrStatus::Ok);
    assert_eq!(take(out), "3");
}

#[test]
fn run_matches_cli() {
    let dir = std::env::temp_dir().join(format!("advreal-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("x.txt");
    std::fs::write(&path, "37/10\n").unwrap();
    let args: Vec<CString> = ["floor", "--advice", "parity:odd", "--input", path.to_str().unwrap()]
        .iter()
        .map(|a| CString::new(*a).unwrap())
        .collect();
    let ptrs: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { advr_run(ptrs.len() as i32, ptrs.as_ptr(), &mut out) }, AdvrStatus::Ok);
    assert_eq!(take(out), "3\n");
    assert!(last_error().contains("outcome=OK"));
    let bad: Vec<CString> = ["floor"].iter().map(|a| CString::new(*a).unwrap()).collect();
    let ptrs: Vec<*const c_char> = bad.iter().map(|a| a.as_ptr()).collect();
    assert_eq!(unsafe { advr_run(1, ptrs.as_ptr(), &mut out) }, AdvrStatus::InputError);
    take(out);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/advreal.h")).unwrap();
    for name in [
        "advr_matrix_parse",
        "advr_matrix_free",
        "advr_matrix_rows",
        "advr_matrix_cols",
        "advr_rank",
        "advr_eigenvalues",
        "advr_diag",
        "advr_evec",
        "advr_floor_parity",
        "advr_run",
        "advr_last_error",
        "advr_string_free",
        "typedef struct AdvrMatrix AdvrMatrix",
        "ADVR_STATUS_FUEL_EXHAUSTED = 3",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
