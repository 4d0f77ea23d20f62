//! C ABI for gpcube.
//!
//! Every function returns a [`GpcubeStatus`]; results go through out
//! pointers. Handles are opaque and must be released with the matching
//! `_free` function. Strings returned to the caller are NUL-terminated and
//! released with [`gpcube_string_free`]. After a non-OK status,
//! [`gpcube_last_error`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gpcube::cli::{certificate, certificate_json, Which};
use gpcube::complex::CosetComplex;
use gpcube::{parse_graph, CubeBall, Error, GraphProduct, LabeledGraph};

/// Status codes shared by all entry points.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GpcubeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    ResourceLimit = 5,
    InvariantViolation = 6,
    Panic = 7,
}

/// Check suites for [`gpcube_check`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GpcubeCheck {
    Links = 0,
    Morse = 1,
    Special = 2,
    Kernel = 3,
    Dj = 4,
    All = 5,
}

impl From<GpcubeCheck> for Which {
    fn from(c: GpcubeCheck) -> Self {
        match c {
            GpcubeCheck::Links => Which::Links,
            GpcubeCheck::Morse => Which::Morse,
            GpcubeCheck::Special => Which::Special,
            GpcubeCheck::Kernel => Which::Kernel,
            GpcubeCheck::Dj => Which::Dj,
            GpcubeCheck::All => Which::All,
        }
    }
}

/// A parsed presentation graph together with its group.
pub struct GpcubeGraph {
    graph: LabeledGraph,
    group: GraphProduct,
}

/// A ball of the cube complex.
pub struct GpcubeBall {
    ball: CubeBall,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GpcubeStatus {
    match e {
        Error::Parse(_) | Error::UnknownGenerator(_) | Error::MalformedWord(_) => GpcubeStatus::Parse,
        Error::PresentationMismatch | Error::InvalidArgument(_) => GpcubeStatus::InvalidArgument,
        Error::BudgetExceeded { .. } | Error::OracleBudgetExhausted(_) | Error::GraphTooLarge(_) => {
            GpcubeStatus::ResourceLimit
        }
        Error::NotInterior(_) | Error::SublevelTruncated(_) | Error::InvariantViolation(_) => {
            GpcubeStatus::InvariantViolation
        }
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (GpcubeStatus, String)>) -> GpcubeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GpcubeStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside gpcube".into());
            GpcubeStatus::Panic
        }
    }
}

fn lib(e: Error) -> (GpcubeStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (GpcubeStatus, String) {
    (GpcubeStatus::NullPointer, "null pointer argument".into())
}

/// # Safety
/// `p` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (GpcubeStatus, String)> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (GpcubeStatus::InvalidUtf8, "string is not UTF-8".into()))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NULs removed").into_raw()
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn gpcube_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn gpcube_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph in the text format (`name : order|inf`, `edge a b`).
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gpcube_graph_parse(text: *const c_char, out: *mut *mut GpcubeGraph) -> GpcubeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let graph = parse_graph(read_str(text)?).map_err(|e| lib(e.into()))?;
        let group = GraphProduct::new(graph.clone());
        *out = Box::into_raw(Box::new(GpcubeGraph { graph, group }));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from [`gpcube_graph_parse`], freed once.
#[no_mangle]
pub unsafe extern "C" fn gpcube_graph_free(g: *mut GpcubeGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gpcube_graph_vertex_count(g: *const GpcubeGraph, out: *mut usize) -> GpcubeStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(null)?;
        *out.as_mut().ok_or_else(null)? = g.graph.len();
        Ok(())
    })
}

/// SHA-256 of the canonical graph text, hex encoded; free with
/// [`gpcube_string_free`].
///
/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gpcube_graph_fingerprint(g: *const GpcubeGraph, out: *mut *mut c_char) -> GpcubeStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(null)?;
        *out.as_mut().ok_or_else(null)? = to_c(g.graph.fingerprint_hex());
        Ok(())
    })
}

/// Normal form of a word such as `"s, t^-2"`; free with
/// [`gpcube_string_free`].
///
/// # Safety
/// `g` must be a valid handle, `word` a valid C string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gpcube_normalize(
    g: *const GpcubeGraph,
    word: *const c_char,
    out: *mut *mut c_char,
) -> GpcubeStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(null)?;
        let out = out.as_mut().ok_or_else(null)?;
        let w = g.group.parse_word(read_str(word)?).map_err(lib)?;
        let nf = g.group.normalize(&w).map_err(lib)?;
        *out = to_c(g.group.format(&nf));
        Ok(())
    })
}

/// Decides whether two words describe the same element.
///
/// # Safety
/// `g` must be a valid handle, `a` and `b` valid C strings, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gpcube_words_equal(
    g: *const GpcubeGraph,
    a: *const c_char,
    b: *const c_char,
    out: *mut bool,
) -> GpcubeStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(null)?;
        let out = out.as_mut().ok_or_else(null)?;
        let wa = g.group.parse_word(read_str(a)?).map_err(lib)?;
        let wb = g.group.parse_word(read_str(b)?).map_err(lib)?;
        *out = g.group.equal(&wa, &wb).map_err(lib)?;
        Ok(())
    })
}

/// Builds the ball of the given radius; `budget` caps enumerated elements
/// and vertices.
///
/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gpcube_ball_build(
    g: *const GpcubeGraph,
    radius: u64,
    budget: usize,
    out: *mut *mut GpcubeBall,
) -> GpcubeStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(null)?;
        let out = out.as_mut().ok_or_else(null)?;
        let ball = CosetComplex::new(g.graph.clone())
            .and_then(|cx| cx.build_ball(radius, budget))
            .map_err(lib)?;
        *out = Box::into_raw(Box::new(GpcubeBall { ball }));
        Ok(())
    })
}

/// # Safety
/// `b` must be null or a handle from [`gpcube_ball_build`], freed once.
#[no_mangle]
pub unsafe extern "C" fn gpcube_ball_free(b: *mut GpcubeBall) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Number of cubes of dimension `dim` (vertices for `dim == 0`).
///
/// # Safety
/// `b` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gpcube_ball_cube_count(b: *const GpcubeBall, dim: usize, out: *mut usize) -> GpcubeStatus {
    guard(|| {
        let b = b.as_ref().ok_or_else(null)?;
        *out.as_mut().ok_or_else(null)? = b.ball.cubes_of_dim(dim).count();
        Ok(())
    })
}

/// # Safety
/// `b` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gpcube_ball_interior_count(b: *const GpcubeBall, out: *mut usize) -> GpcubeStatus {
    guard(|| {
        let b = b.as_ref().ok_or_else(null)?;
        *out.as_mut().ok_or_else(null)? = b.ball.interior_vertices().count();
        Ok(())
    })
}

/// # Safety
/// `b` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gpcube_ball_euler_characteristic(b: *const GpcubeBall, out: *mut i64) -> GpcubeStatus {
    guard(|| {
        let b = b.as_ref().ok_or_else(null)?;
        *out.as_mut().ok_or_else(null)? = b.ball.euler_characteristic();
        Ok(())
    })
}

/// Ball as JSON; free with [`gpcube_string_free`].
///
/// # Safety
/// `b` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gpcube_ball_json(b: *const GpcubeBall, out: *mut *mut c_char) -> GpcubeStatus {
    guard(|| {
        let b = b.as_ref().ok_or_else(null)?;
        *out.as_mut().ok_or_else(null)? = to_c(b.ball.to_json());
        Ok(())
    })
}

/// Runs a check suite on the ball of radius `radius`. `pass` receives the
/// verdict; if `json_out` is non-null it receives the JSON
/// certificate (free with [`gpcube_string_free`]).
///
/// # Safety
/// `g` must be a valid handle, `pass` a valid pointer, `json_out`
/// null or valid.
#[no_mangle]
pub unsafe extern "C" fn gpcube_check(
    g: *const GpcubeGraph,
    radius: u64,
    budget: usize,
    which: GpcubeCheck,
    pass: *mut bool,
    json_out: *mut *mut c_char,
) -> GpcubeStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(null)?;
        let pass = pass.as_mut().ok_or_else(null)?;
        let cert = certificate(&g.graph, radius, budget, which.into()).map_err(lib)?;
        *pass = cert.pass;
        if let Some(out) = json_out.as_mut() {
            *out = to_c(certificate_json(&cert));
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_arguments_are_reported() {
        let mut g = ptr::null_mut();
        let s = unsafe { gpcube_graph_parse(ptr::null(), &mut g) };
        assert_eq!(s, GpcubeStatus::NullPointer);
        assert!(!gpcube_last_error().is_null());
    }
}
