use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::ptr;

use primebounds_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(pb_last_error_message()) }.to_string_lossy().into_owned()
}

fn zeros_path() -> CString {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_100k.txt");
    CString::new(p.to_str().unwrap()).unwrap()
}

#[test]
fn zero_table_lifecycle() {
    let mut t = ptr::null_mut();
    let path = zeros_path();
    assert_eq!(unsafe { pb_zero_table_load(path.as_ptr(), &mut t) }, PbStatus::Ok);
    assert!(!t.is_null());
    let (mut n, mut h) = (0usize, 0.0);
    assert_eq!(unsafe { pb_zero_table_info(t, &mut n, &mut h) }, PbStatus::Ok);
    assert_eq!(n, 100_000);
    assert!(h > 74_920.0);

    let mut cert = PbCertificate::default();
    assert_eq!(unsafe { pb_chebyshev_delta0(t, 50.0, 30.0, 0.09, 3.061e10, &mut cert) }, PbStatus::Ok);
    assert!(cert.delta0 > 0.0 && cert.delta0 < 2e-9, "{}", cert.delta0);
    let mut none = PbCertificate::default();
    assert_eq!(unsafe { pb_chebyshev_delta0(ptr::null(), 50.0, 30.0, 0.09, 3.061e10, &mut none) }, PbStatus::Ok);
    assert!(cert.delta0 <= none.delta0);

    let mut best = PbCertificate::default();
    assert_eq!(unsafe { pb_optimize(t, 50.0, 3.061e10, &mut best) }, PbStatus::Ok);
    assert!(best.delta0 <= cert.delta0 * (1.0 + 1e-9));
    unsafe { pb_zero_table_free(t) };
}

#[test]
fn missing_file_reports_io() {
    let mut t = ptr::null_mut();
    let path = CString::new("/nonexistent/zeros.txt").unwrap();
    assert_eq!(unsafe { pb_zero_table_load(path.as_ptr(), &mut t) }, PbStatus::Io);
    assert!(t.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn unsorted_ordinates_rejected() {
    let mut t = ptr::null_mut();
    let ords = [21.0, 14.1];
    let st = unsafe { pb_zero_table_from_ordinates(ords.as_ptr(), ords.len(), 30.0, &mut t) };
    assert_eq!(st, PbStatus::InvalidData);
    assert!(t.is_null());
}

#[test]
fn sieve_and_verify() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pb_sieve_new(1_000_000, &mut s) }, PbStatus::Ok);
    let mut v = 0.0;
    assert_eq!(unsafe { pb_sieve_eval(s, PbStepKind::Pi, 100.0, &mut v) }, PbStatus::Ok);
    assert_eq!(v, 25.0);
    assert_eq!(unsafe { pb_sieve_eval(s, PbStepKind::Pi, 97.0, &mut v) }, PbStatus::Ok);
    assert_eq!(v, 24.5);

    let mut count = usize::MAX;
    let all = PbStepKind::Psi as u32 | PbStepKind::Theta as u32 | PbStepKind::Pi as u32;
    assert_eq!(unsafe { pb_verify(s, 2658.0, 1e6, all, &mut count) }, PbStatus::Ok);
    assert_eq!(count, 0);
    assert_eq!(unsafe { pb_verify(s, 2.0, 100.0, PbStepKind::Pi as u32, &mut count) }, PbStatus::Ok);
    assert!(count > 0);
    assert_eq!(unsafe { pb_verify(s, 2.0, 2e6, all, &mut count) }, PbStatus::Range);
    assert_eq!(unsafe { pb_verify(s, 2.0, 100.0, 0, &mut count) }, PbStatus::Domain);
    unsafe { pb_sieve_free(s) };
}

#[test]
fn scalar_functions() {
    let mut x = 0.0;
    assert_eq!(unsafe { pb_schoenfeld_threshold(1e11, &mut x) }, PbStatus::Ok);
    assert!((x / 2.1238221887798606e22 - 1.0).abs() < 1e-12);
    assert_eq!(unsafe { pb_schoenfeld_threshold(10.0, &mut x) }, PbStatus::Domain);
    assert_eq!(unsafe { pb_logan_ell(10.0, 1e-3, 0.0, &mut x) }, PbStatus::Ok);
    assert!(x > 0.0);
    assert_eq!(unsafe { pb_logan_ell(-1.0, 1e-3, 0.0, &mut x) }, PbStatus::Domain);
}

#[test]
fn header_declares_every_entry_point() {
    let h = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/primebounds.h")).unwrap();
    for name in [
        "pb_last_error_message",
        "pb_zero_table_load",
        "pb_zero_table_from_ordinates",
        "pb_zero_table_free",
        "pb_zero_table_info",
        "pb_sieve_new",
        "pb_sieve_free",
        "pb_sieve_eval",
        "pb_verify",
        "pb_schoenfeld_threshold",
        "pb_log_integral",
        "pb_logan_ell",
        "pb_chebyshev_delta0",
        "pb_optimize",
        "typedef struct PbZeroTable PbZeroTable",
        "PB_STATUS_PANIC = 10",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
}
