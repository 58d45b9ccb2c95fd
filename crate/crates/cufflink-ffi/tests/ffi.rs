//! Exercises the C surface the way a foreign caller would.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use cufflink::diagram::SpineDiagram;
use cufflink_ffi::*;

fn parse(text: &str) -> *mut CufflinkSpine {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { cufflink_spine_parse(c.as_ptr(), &mut out) };
    assert_eq!(status, CufflinkStatus::Ok);
    assert!(!out.is_null());
    out
}

fn take_message() -> String {
    let raw = cufflink_last_message();
    assert!(!raw.is_null(), "expected a message");
    let text = unsafe { CStr::from_ptr(raw) }.to_str().unwrap().to_string();
    unsafe { cufflink_string_free(raw) };
    text
}

fn take_text(bundle: *const CufflinkBundle) -> String {
    let raw = unsafe { cufflink_bundle_text(bundle) };
    assert!(!raw.is_null());
    let text = unsafe { CStr::from_ptr(raw) }.to_str().unwrap().to_string();
    unsafe { cufflink_string_free(raw) };
    text
}

#[test]
fn parse_measure_validate_free() {
    let sp = parse(&SpineDiagram::trefoil_spine().to_string());
    unsafe {
        assert_eq!(cufflink_spine_genus(sp), 1);
        assert_eq!(cufflink_spine_crossings(sp), 3);
        assert_eq!(cufflink_spine_validate(sp), CufflinkStatus::Ok);
        cufflink_spine_free(sp);
    }
}

#[test]
fn parse_failure_reports_the_line() {
    let text = CString::new("not a spine\n").unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { cufflink_spine_parse(text.as_ptr(), &mut out) };
    assert_eq!(status, CufflinkStatus::ParseError);
    assert!(out.is_null());
    assert!(!take_message().is_empty());
}

#[test]
fn invalid_spine_lists_issues() {
    let sp = parse("spine g=1\nloop 1: 1 2\narc 1: 3\nwedge: 3\n");
    unsafe {
        assert_eq!(cufflink_spine_validate(sp), CufflinkStatus::InvalidDiagram);
        assert!(!take_message().is_empty());
        cufflink_spine_free(sp);
    }
}

#[test]
fn unknot_bundle_round_trips_through_certify() {
    let sp = parse(&SpineDiagram::trefoil_spine().to_string());
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(cufflink_unknot(sp, 2, &mut out), CufflinkStatus::Ok);
        assert_eq!(cufflink_bundle_passes(out), 1);
    }
    let text = take_text(out);
    assert!(text.starts_with("certificate-bundle v1\n"));
    let c = CString::new(text.clone()).unwrap();
    unsafe {
        assert_eq!(cufflink_certify_text(c.as_ptr()), CufflinkStatus::Ok);
    }

    let forged = CString::new(text.replacen("class=(0)", "class=(1)", 1)).unwrap();
    unsafe {
        assert_eq!(cufflink_certify_text(forged.as_ptr()), CufflinkStatus::CertifyFailed);
    }
    assert!(!take_message().is_empty());

    unsafe {
        cufflink_bundle_free(out);
        cufflink_spine_free(sp);
    }
}

#[test]
fn shared_pieces_refuse_the_per_loop_mode() {
    let sp = parse(&SpineDiagram::hopf_spine().to_string());
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(cufflink_unknot(sp, 2, &mut out), CufflinkStatus::Refused);
        assert!(out.is_null());
        assert!(take_message().contains("shared"));

        assert_eq!(cufflink_unknot(sp, 1, &mut out), CufflinkStatus::Ok);
        assert_eq!(cufflink_bundle_passes(out), 1);
        cufflink_bundle_free(out);
        cufflink_spine_free(sp);
    }
}

#[test]
fn dualize_records_the_meeting_pattern() {
    let sp = parse(&SpineDiagram::standard(2).to_string());
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(cufflink_dualize(sp, &mut out), CufflinkStatus::Ok);
        assert_eq!(cufflink_bundle_passes(out), 1);
    }
    assert!(take_text(out).contains("delta: [[1,0],[0,1]] pass"));
    unsafe {
        cufflink_bundle_free(out);
        cufflink_spine_free(sp);
    }
}

#[test]
fn bad_arguments_are_reported_not_fatal() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(
            cufflink_spine_parse(ptr::null(), &mut out),
            CufflinkStatus::NullArgument
        );
        assert_eq!(
            cufflink_spine_parse(CString::new("x").unwrap().as_ptr(), ptr::null_mut()),
            CufflinkStatus::NullArgument
        );
        assert_eq!(cufflink_spine_genus(ptr::null()), 0);
        assert_eq!(cufflink_spine_crossings(ptr::null()), 0);
        assert_eq!(cufflink_spine_validate(ptr::null()), CufflinkStatus::NullArgument);
        assert_eq!(cufflink_bundle_passes(ptr::null()), 0);
        assert!(cufflink_bundle_text(ptr::null()).is_null());
        cufflink_spine_free(ptr::null_mut());
        cufflink_bundle_free(ptr::null_mut());
        cufflink_string_free(ptr::null_mut());

        let sp = parse(&SpineDiagram::trefoil_spine().to_string());
        let mut bundle = ptr::null_mut();
        assert_eq!(cufflink_unknot(sp, 7, &mut bundle), CufflinkStatus::BadMode);
        assert!(bundle.is_null());
        cufflink_spine_free(sp);

        let bad_utf8: [c_char; 3] = [-1, -2, 0];
        assert_eq!(
            cufflink_certify_text(bad_utf8.as_ptr()),
            CufflinkStatus::BadUtf8
        );
    }
}

#[test]
fn header_declares_the_whole_surface() {
    let header = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/include/cufflink.h"));
    for symbol in [
        "cufflink_spine_parse",
        "cufflink_spine_free",
        "cufflink_spine_genus",
        "cufflink_spine_crossings",
        "cufflink_spine_validate",
        "cufflink_unknot",
        "cufflink_dualize",
        "cufflink_bundle_passes",
        "cufflink_bundle_text",
        "cufflink_bundle_free",
        "cufflink_certify_text",
        "cufflink_last_message",
        "cufflink_string_free",
        "CufflinkStatus_Ok",
    ] {
        assert!(header.contains(symbol), "header is missing {symbol}");
    }
    assert!(header.contains("typedef struct CufflinkSpine CufflinkSpine;"));
    assert!(header.contains("typedef struct CufflinkBundle CufflinkBundle;"));
}
