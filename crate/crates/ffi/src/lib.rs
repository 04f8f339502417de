//! C interface to the `qdeform` command runner.
//!
//! A session holds one parsed example and the run options. Reports come back
//! as heap strings that the caller releases with `qd_string_free`. When a
//! call returns anything other than `QD_STATUS_OK` or
//! `QD_STATUS_CHECK_FAILED`, `qd_last_error` describes the failure on the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qdeform::cli::{run_command, Command, RunOptions, Source};

/// Result codes. `CHECK_FAILED` still produces a report.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QdStatus {
    Ok = 0,
    CheckFailed = 1,
    ConfigError = 2,
    InvalidArgument = 3,
    Internal = 4,
}

/// Report encoding for `qd_session_run`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QdFormat {
    Human = 0,
    Machine = 1,
}

/// Opaque session handle.
pub struct QdSession {
    source: Source,
    options: RunOptions,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn guarded(f: impl FnOnce() -> QdStatus) -> QdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal error (panic)");
            QdStatus::Internal
        }
    }
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, QdStatus> {
    if s.is_null() {
        set_error(format!("{what} is null"));
        return Err(QdStatus::InvalidArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error(format!("{what} is not UTF-8"));
        QdStatus::InvalidArgument
    })
}

fn finish_open(source: Result<Source, qdeform::cli::RunError>, out: *mut *mut QdSession) -> QdStatus {
    match source {
        Ok(source) => {
            let session = QdSession { options: RunOptions::resolve(None, None, Some(&source.config.run)), source };
            // SAFETY: checked non-null by the callers.
            unsafe { *out = Box::into_raw(Box::new(session)) };
            QdStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            QdStatus::ConfigError
        }
    }
}

/// Opens a session on a built-in preset such as `motivational-q2`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qd_session_from_preset(name: *const c_char, out: *mut *mut QdSession) -> QdStatus {
    guarded(|| {
        if out.is_null() {
            set_error("out is null");
            return QdStatus::InvalidArgument;
        }
        let name = match read_str(name, "name") {
            Ok(n) => n,
            Err(s) => return s,
        };
        finish_open(Source::preset(name), out)
    })
}

/// Opens a session on configuration text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qd_session_from_config(text: *const c_char, out: *mut *mut QdSession) -> QdStatus {
    guarded(|| {
        if out.is_null() {
            set_error("out is null");
            return QdStatus::InvalidArgument;
        }
        let text = match read_str(text, "text") {
            Ok(t) => t,
            Err(s) => return s,
        };
        finish_open(Source::from_text("<config>", text), out)
    })
}

/// Overrides the degree bound and `t` cap; zero keeps the current value.
///
/// # Safety
/// `session` must come from `qd_session_from_*` and not be freed.
#[no_mangle]
pub unsafe extern "C" fn qd_session_set_options(session: *mut QdSession, degree_bound: u32, t_cap: u32) -> QdStatus {
    guarded(|| {
        let Some(s) = session.as_mut() else {
            set_error("session is null");
            return QdStatus::InvalidArgument;
        };
        if degree_bound != 0 {
            s.options.degree_bound = degree_bound;
        }
        if t_cap != 0 {
            s.options.t_cap = t_cap;
        }
        QdStatus::Ok
    })
}

/// Runs `validate`, `deform`, `mu1`, `cocycle`, `certify` or `selftest` and
/// stores the report in `*report` (release with `qd_string_free`).
///
/// # Safety
/// `session` must be live, `command` NUL-terminated and `report` valid.
#[no_mangle]
pub unsafe extern "C" fn qd_session_run(
    session: *const QdSession,
    command: *const c_char,
    format: QdFormat,
    report: *mut *mut c_char,
) -> QdStatus {
    guarded(|| {
        let Some(s) = session.as_ref() else {
            set_error("session is null");
            return QdStatus::InvalidArgument;
        };
        if report.is_null() {
            set_error("report is null");
            return QdStatus::InvalidArgument;
        }
        *report = ptr::null_mut();
        let name = match read_str(command, "command") {
            Ok(n) => n,
            Err(st) => return st,
        };
        let Some(cmd) = Command::from_name(name) else {
            set_error(format!("unknown command '{name}'"));
            return QdStatus::InvalidArgument;
        };
        match run_command(cmd, Some(&s.source), s.options) {
            Ok(out) => {
                let text = match format {
                    QdFormat::Human => out.human.clone(),
                    QdFormat::Machine => serde_json::to_string_pretty(&out.machine).expect("json"),
                };
                *report = CString::new(text).expect("reports contain no NUL").into_raw();
                if out.passed {
                    QdStatus::Ok
                } else {
                    QdStatus::CheckFailed
                }
            }
            Err(e) => {
                set_error(e.to_string());
                QdStatus::ConfigError
            }
        }
    })
}

/// # Safety
/// `session` must be null or come from `qd_session_from_*`, freed once.
#[no_mangle]
pub unsafe extern "C" fn qd_session_free(session: *mut QdSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn qd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failing call on this thread; empty if none. Valid
/// until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn qd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
