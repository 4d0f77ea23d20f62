use std::ffi::{CStr, CString};
use std::ptr;

use gpcube_ffi::*;

fn parse(text: &str) -> *mut GpcubeGraph {
    let text = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { gpcube_graph_parse(text.as_ptr(), &mut g) }, GpcubeStatus::Ok);
    g
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { gpcube_string_free(s) };
    out
}

#[test]
fn words_round_trip() {
    let g = parse("s : inf\nt : inf\nedge s t\n");
    let mut n = 0;
    assert_eq!(unsafe { gpcube_graph_vertex_count(g, &mut n) }, GpcubeStatus::Ok);
    assert_eq!(n, 2);

    let word = CString::new("t, s").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { gpcube_normalize(g, word.as_ptr(), &mut out) }, GpcubeStatus::Ok);
    assert_eq!(take(out), "s t");

    let a = CString::new("s, t, s^-1").unwrap();
    let b = CString::new("t").unwrap();
    let mut eq = false;
    assert_eq!(unsafe { gpcube_words_equal(g, a.as_ptr(), b.as_ptr(), &mut eq) }, GpcubeStatus::Ok);
    assert!(eq);

    let bad = CString::new("x").unwrap();
    assert_eq!(unsafe { gpcube_normalize(g, bad.as_ptr(), &mut out) }, GpcubeStatus::Parse);
    let msg = unsafe { CStr::from_ptr(gpcube_last_error()) }.to_str().unwrap();
    assert!(msg.contains("unknown generator"));
    unsafe { gpcube_graph_free(g) };
}

#[test]
fn ball_handle() {
    let g = parse("s : inf");
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { gpcube_ball_build(g, 3, 10_000, &mut b) }, GpcubeStatus::Ok);
    let (mut v, mut e, mut chi, mut interior) = (0, 0, 0i64, 0);
    unsafe {
        gpcube_ball_cube_count(b, 0, &mut v);
        gpcube_ball_cube_count(b, 1, &mut e);
        gpcube_ball_euler_characteristic(b, &mut chi);
        gpcube_ball_interior_count(b, &mut interior);
    }
    assert_eq!((v, e, chi), (13, 12, 1));
    assert!(interior > 0 && interior < v);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { gpcube_ball_json(b, &mut json) }, GpcubeStatus::Ok);
    assert!(take(json).contains("\"euler_characteristic\": 1"));
    unsafe {
        gpcube_ball_free(b);
        gpcube_graph_free(g);
    }
}

#[test]
fn checks_and_errors() {
    let g = parse("a : 2\nb : 2\nedge a b\n");
    let mut pass = false;
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { gpcube_check(g, 2, 100_000, GpcubeCheck::All, &mut pass, &mut json) },
        GpcubeStatus::Ok
    );
    assert!(pass);
    let cert = take(json);
    let mut fp = ptr::null_mut();
    unsafe { gpcube_graph_fingerprint(g, &mut fp) };
    assert!(cert.contains(&take(fp)));

    let mut b = ptr::null_mut();
    assert_eq!(unsafe { gpcube_ball_build(g, 10, 1, &mut b) }, GpcubeStatus::ResourceLimit);
    assert!(b.is_null());
    assert_eq!(
        unsafe { gpcube_check(g, 2, 100, GpcubeCheck::Kernel, ptr::null_mut(), ptr::null_mut()) },
        GpcubeStatus::NullPointer
    );
    unsafe { gpcube_graph_free(g) };

    let text = CString::new("a : 1").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { gpcube_graph_parse(text.as_ptr(), &mut g) }, GpcubeStatus::Parse);
    unsafe { gpcube_graph_free(g) };
}

#[test]
fn header_is_generated() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/gpcube.h")).unwrap();
    for name in ["gpcube_graph_parse", "gpcube_ball_build", "gpcube_check", "GPCUBE_STATUS_OK", "typedef struct GpcubeBall GpcubeBall"] {
        assert!(header.contains(name), "{name}");
    }
}
