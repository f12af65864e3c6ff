use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use quartic56_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(q56_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn session_round_trip() {
    unsafe {
        let s = q56_session_new(ptr::null());
        assert!(!s.is_null());

        let mut gram = vec![0i64; 400];
        assert_eq!(q56_gram(s, gram.as_mut_ptr(), gram.len()), Q56Status::Ok);
        assert!((0..20).all(|i| gram[21 * i] == -2));
        assert_eq!(q56_gram(s, gram.as_mut_ptr(), 10), Q56Status::BufferTooSmall);
        assert!(last_error().contains("400"));

        let mut pass = false;
        assert_eq!(q56_criterion_count(), 13);
        assert_eq!(q56_run_criterion(s, 1, &mut pass), Q56Status::Ok);
        assert!(pass);
        assert_eq!(q56_run_criterion(s, 14, &mut pass), Q56Status::InvalidInput);

        let mut out = ptr::null_mut();
        let cmd = CString::new("derive-psi").unwrap();
        assert_eq!(q56_command_json(s, cmd.as_ptr(), &mut out), Q56Status::Ok);
        let json: serde_json::Value = serde_json::from_str(CStr::from_ptr(out).to_str().unwrap()).unwrap();
        assert_eq!(json["kernel_dimension"], 1);
        q56_string_free(out);

        let bad = CString::new("plot").unwrap();
        assert_eq!(q56_command_json(s, bad.as_ptr(), &mut out), Q56Status::InvalidInput);
        assert_eq!(q56_census_json(s, 9, &mut out), Q56Status::InvalidInput);
        assert_eq!(q56_census_json(s, 2, &mut out), Q56Status::Ok);
        let json: serde_json::Value = serde_json::from_str(CStr::from_ptr(out).to_str().unwrap()).unwrap();
        assert_eq!(json["vector_count"], 0);
        q56_string_free(out);

        q56_session_free(s);
    }
}

#[test]
fn null_handles_are_reported() {
    unsafe {
        let mut pass = false;
        assert_eq!(q56_run_criterion(ptr::null(), 1, &mut pass), Q56Status::NullPointer);
        assert!(last_error().contains("session"));
        q56_session_free(ptr::null_mut());
        q56_string_free(ptr::null_mut());
        assert!(!CStr::from_ptr(q56_version()).to_bytes().is_empty());
    }
}

#[test]
fn header_declares_the_api_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/quartic56.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["Q56Session", "Q56_STATUS_BUFFER_TOO_SMALL", "q56_session_new", "q56_reduce_json", "q56_last_error"] {
        assert!(text.contains(name), "{name} missing from the header");
    }
    // A C compiler is optional in the build environment.
    if let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).output() {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
