//! C bindings. Handles are opaque; every fallible call returns a
//! status code and leaves a message retrievable with
//! `cufflink_last_message` on failure. Strings returned to the caller
//! are owned by the caller and released with `cufflink_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use cufflink::bundle;
use cufflink::diagram::{parse_spine, validate_spine, SpineDiagram};
use cufflink::pipeline::{run_dualize, run_theorem_main, CertificateBundle, Mode, PlanChoices};

/// Outcome of a call. Zero is success; everything else names the
/// first thing that went wrong.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CufflinkStatus {
    Ok = 0,
    NullArgument = 1,
    BadUtf8 = 2,
    ParseError = 3,
    InvalidDiagram = 4,
    BadMode = 5,
    Refused = 6,
    PipelineError = 7,
    CertifyFailed = 8,
}

/// A parsed spine diagram.
pub struct CufflinkSpine {
    inner: SpineDiagram,
}

/// A finished certificate bundle.
pub struct CufflinkBundle {
    inner: CertificateBundle,
}

thread_local! {
    static LAST_MESSAGE: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_message(msg: impl Into<Vec<u8>>) {
    let text = CString::new(msg).unwrap_or_else(|_| CString::new("invalid message").unwrap());
    LAST_MESSAGE.with(|slot| *slot.borrow_mut() = Some(text));
}

fn clear_message() {
    LAST_MESSAGE.with(|slot| *slot.borrow_mut() = None);
}

/// The message recorded by the most recent failing call on this
/// thread, or null if it succeeded. Free with `cufflink_string_free`.
#[no_mangle]
pub extern "C" fn cufflink_last_message() -> *mut c_char {
    LAST_MESSAGE.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must have come from this library and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn cufflink_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

unsafe fn text_arg<'a>(text: *const c_char) -> Result<&'a str, CufflinkStatus> {
    if text.is_null() {
        set_message("null text argument");
        return Err(CufflinkStatus::NullArgument);
    }
    unsafe { CStr::from_ptr(text) }.to_str().map_err(|_| {
        set_message("text is not valid UTF-8");
        CufflinkStatus::BadUtf8
    })
}

/// Parses spine text into a handle. On success stores the handle in
/// `out`; the caller releases it with `cufflink_spine_free`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cufflink_spine_parse(
    text: *const c_char,
    out: *mut *mut CufflinkSpine,
) -> CufflinkStatus {
    if out.is_null() {
        set_message("null out argument");
        return CufflinkStatus::NullArgument;
    }
    unsafe { *out = ptr::null_mut() };
    let text = match unsafe { text_arg(text) } {
        Ok(t) => t,
        Err(status) => return status,
    };
    match parse_spine(text) {
        Ok(inner) => {
            clear_message();
            unsafe { *out = Box::into_raw(Box::new(CufflinkSpine { inner })) };
            CufflinkStatus::Ok
        }
        Err(e) => {
            set_message(e.to_string());
            CufflinkStatus::ParseError
        }
    }
}

/// Releases a spine handle. Null is ignored.
///
/// # Safety
/// `spine` must have come from `cufflink_spine_parse` and not been
/// freed before.
#[no_mangle]
pub unsafe extern "C" fn cufflink_spine_free(spine: *mut CufflinkSpine) {
    if !spine.is_null() {
        drop(unsafe { Box::from_raw(spine) });
    }
}

/// Genus of the spine, i.e. its number of loops, or 0 for null.
///
/// # Safety
/// `spine` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn cufflink_spine_genus(spine: *const CufflinkSpine) -> usize {
    match unsafe { spine.as_ref() } {
        Some(sp) => sp.inner.genus(),
        None => 0,
    }
}

/// Number of crossings in the spine, or 0 for null.
///
/// # Safety
/// `spine` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn cufflink_spine_crossings(spine: *const CufflinkSpine) -> usize {
    match unsafe { spine.as_ref() } {
        Some(sp) => sp.inner.crossings.len(),
        None => 0,
    }
}

/// Checks that the spine is a plane diagram of a handcuff spine. On
/// failure the message lists the first problem.
///
/// # Safety
/// `spine` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn cufflink_spine_validate(spine: *const CufflinkSpine) -> CufflinkStatus {
    let Some(sp) = (unsafe { spine.as_ref() }) else {
        set_message("null spine argument");
        return CufflinkStatus::NullArgument;
    };
    let report = validate_spine(&sp.inner);
    if report.ok() {
        clear_message();
        CufflinkStatus::Ok
    } else {
        let msgs: Vec<String> = report.issues.into_iter().map(|i| i.msg).collect();
        set_message(msgs.join("\n"));
        CufflinkStatus::InvalidDiagram
    }
}

fn mode_arg(mode: c_int) -> Result<Mode, CufflinkStatus> {
    match mode {
        1 => Ok(Mode::Part1),
        2 => Ok(Mode::Part2),
        other => {
            set_message(format!("mode must be 1 or 2, got {other}"));
            Err(CufflinkStatus::BadMode)
        }
    }
}

fn bundle_out(
    result: Result<CertificateBundle, cufflink::pipeline::PipelineError>,
    out: *mut *mut CufflinkBundle,
) -> CufflinkStatus {
    use cufflink::pipeline::PipelineError;
    match result {
        Ok(inner) => {
            clear_message();
            unsafe { *out = Box::into_raw(Box::new(CufflinkBundle { inner })) };
            CufflinkStatus::Ok
        }
        Err(e) => {
            set_message(e.to_string());
            match e {
                PipelineError::Refusal(_) => CufflinkStatus::Refused,
                PipelineError::Invalid(_) => CufflinkStatus::InvalidDiagram,
                _ => CufflinkStatus::PipelineError,
            }
        }
    }
}

/// Runs the unknotting pipeline and certificate emission. `mode` is 1
/// for the whole-system reading, 2 for the per-loop reading (which
/// refuses spines whose loops share a surface piece). On success
/// stores a bundle handle in `out`.
///
/// # Safety
/// `spine` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cufflink_unknot(
    spine: *const CufflinkSpine,
    mode: c_int,
    out: *mut *mut CufflinkBundle,
) -> CufflinkStatus {
    if out.is_null() {
        set_message("null out argument");
        return CufflinkStatus::NullArgument;
    }
    unsafe { *out = ptr::null_mut() };
    let Some(sp) = (unsafe { spine.as_ref() }) else {
        set_message("null spine argument");
        return CufflinkStatus::NullArgument;
    };
    let mode = match mode_arg(mode) {
        Ok(m) => m,
        Err(status) => return status,
    };
    let choices = PlanChoices::default_for(sp.inner.genus());
    bundle_out(run_theorem_main(&sp.inner, mode, &choices), out)
}

/// Pushes the loops to dual position and records the meeting pattern
/// alongside the usual certificates. On success stores a bundle
/// handle in `out`.
///
/// # Safety
/// `spine` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cufflink_dualize(
    spine: *const CufflinkSpine,
    out: *mut *mut CufflinkBundle,
) -> CufflinkStatus {
    if out.is_null() {
        set_message("null out argument");
        return CufflinkStatus::NullArgument;
    }
    unsafe { *out = ptr::null_mut() };
    let Some(sp) = (unsafe { spine.as_ref() }) else {
        set_message("null spine argument");
        return CufflinkStatus::NullArgument;
    };
    let choices = PlanChoices::default_for(sp.inner.genus());
    bundle_out(run_dualize(&sp.inner, &choices), out)
}

/// 1 if every certificate in the bundle checks out, else 0.
///
/// # Safety
/// `bundle` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn cufflink_bundle_passes(bundle: *const CufflinkBundle) -> c_int {
    match unsafe { bundle.as_ref() } {
        Some(b) => c_int::from(b.inner.passes()),
        None => 0,
    }
}

/// The bundle in its text form. Free with `cufflink_string_free`.
/// Returns null for a null handle.
///
/// # Safety
/// `bundle` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn cufflink_bundle_text(bundle: *const CufflinkBundle) -> *mut c_char {
    match unsafe { bundle.as_ref() } {
        Some(b) => match CString::new(bundle::emit(&b.inner)) {
            Ok(text) => text.into_raw(),
            Err(_) => ptr::null_mut(),
        },
        None => ptr::null_mut(),
    }
}

/// Releases a bundle handle. Null is ignored.
///
/// # Safety
/// `bundle` must have come from this library and not been freed
/// before.
#[no_mangle]
pub unsafe extern "C" fn cufflink_bundle_free(bundle: *mut CufflinkBundle) {
    if !bundle.is_null() {
        drop(unsafe { Box::from_raw(bundle) });
    }
}

/// Re-derives every certificate in a bundle text. `Ok` means the
/// bundle is sound; `CertifyFailed` lists the problems in the
/// message, one per line.
///
/// # Safety
/// `text` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn cufflink_certify_text(text: *const c_char) -> CufflinkStatus {
    let text = match unsafe { text_arg(text) } {
        Ok(t) => t,
        Err(status) => return status,
    };
    match bundle::certify(text) {
        Ok(report) if report.ok() => {
            clear_message();
            CufflinkStatus::Ok
        }
        Ok(report) => {
            set_message(report.problems.join("\n"));
            CufflinkStatus::CertifyFailed
        }
        Err(e) => {
            set_message(e.to_string());
            CufflinkStatus::ParseError
        }
    }
}
