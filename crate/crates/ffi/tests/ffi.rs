use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use qdeform_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(qd_last_error()) }.to_str().unwrap().to_string()
}

fn open_preset(name: &str) -> (QdStatus, *mut QdSession) {
    let name = CString::new(name).unwrap();
    let mut s = ptr::null_mut();
    let st = unsafe { qd_session_from_preset(name.as_ptr(), &mut s) };
    (st, s)
}

fn run(s: *const QdSession, cmd: &str, format: QdFormat) -> (QdStatus, Option<String>) {
    let cmd = CString::new(cmd).unwrap();
    let mut out: *mut c_char = ptr::null_mut();
    let st = unsafe { qd_session_run(s, cmd.as_ptr(), format, &mut out) };
    if out.is_null() {
        return (st, None);
    }
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    unsafe { qd_string_free(out) };
    (st, Some(text))
}

#[test]
fn preset_session_runs_commands() {
    let (st, s) = open_preset("motivational-q2");
    assert_eq!(st, QdStatus::Ok);
    assert_eq!(unsafe { qd_session_set_options(s, 1, 0) }, QdStatus::Ok);
    let (st, text) = run(s, "deform", QdFormat::Human);
    assert_eq!(st, QdStatus::Ok);
    assert!(text.unwrap().contains("w2 w3 - w3 w2 = 0"));
    let (st, json) = run(s, "certify", QdFormat::Machine);
    assert_eq!(st, QdStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&json.unwrap()).unwrap();
    assert_eq!(v["verdict"], "nontrivial");
    unsafe { qd_session_free(s) };
}

#[test]
fn failing_checks_still_report() {
    let text =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/sigma-w3-to-w2.conf")).unwrap();
    let text = CString::new(text).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qd_session_from_config(text.as_ptr(), &mut s) }, QdStatus::Ok);
    unsafe { qd_session_set_options(s, 1, 0) };
    let (st, report) = run(s, "validate", QdFormat::Human);
    assert_eq!(st, QdStatus::CheckFailed);
    assert!(report.unwrap().contains("EQ1: FAIL"));
    unsafe { qd_session_free(s) };
}

#[test]
fn errors_are_reported() {
    let (st, s) = open_preset("motivational-q0");
    assert_eq!(st, QdStatus::ConfigError);
    assert!(s.is_null());
    assert!(last_error().contains("unknown preset"));

    let bad = CString::new("[field]\nn = 2\nq = -1\nbogus = 1\n").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qd_session_from_config(bad.as_ptr(), &mut s) }, QdStatus::ConfigError);
    assert_eq!(last_error(), "line 4: unknown key 'bogus' in [field]");

    assert_eq!(unsafe { qd_session_from_config(ptr::null(), &mut s) }, QdStatus::InvalidArgument);
    assert_eq!(unsafe { qd_session_set_options(ptr::null_mut(), 1, 1) }, QdStatus::InvalidArgument);

    let (_, s) = open_preset("motivational-q2");
    let (st, report) = run(s, "frobnicate", QdFormat::Human);
    assert_eq!((st, report), (QdStatus::InvalidArgument, None));
    assert_eq!(last_error(), "unknown command 'frobnicate'");
    unsafe {
        qd_session_free(s);
        qd_session_free(ptr::null_mut());
        qd_string_free(ptr::null_mut());
    }
}

#[test]
fn c_program_links_against_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let profile_dir = target.parent().unwrap().join(if cfg!(debug_assertions) { "debug" } else { "release" });
    let lib = profile_dir.join("libqdeform_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let exe = target.join("qdeform_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("status: PASS"));
}
