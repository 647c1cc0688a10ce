//! C ABI over the geosat engine.
//!
//! Theories are opaque `GeosatTheory` handles. Every fallible call returns a
//! [`GeosatStatus`]; on failure a message is available from
//! [`geosat_last_error`] until the next call on the same thread. Strings
//! returned by the library must be released with [`geosat_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use geosat::certificate::{self, Certificate};
use geosat::gallery::{gen_nti, FiniteRing};
use geosat::logic::{find_models, Theory};
use geosat::site::degeneracy;
use geosat::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeosatStatus {
    Ok = 0,
    /// The answer is negative: nondegenerate, invalid certificate.
    Negative = 1,
    ParseError = 2,
    LimitExceeded = 3,
    InvalidArgument = 4,
    HashMismatch = 5,
    MalformedCertificate = 6,
    Internal = 7,
}

/// Opaque theory handle.
pub struct GeosatTheory {
    theory: Theory,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> GeosatStatus {
    match e {
        Error::UniverseTooLarge { .. } => GeosatStatus::LimitExceeded,
        Error::Syntax { .. } | Error::UnknownSymbol(_) | Error::DuplicateSymbol(_) => {
            GeosatStatus::ParseError
        }
        Error::HashMismatch => GeosatStatus::HashMismatch,
        Error::MalformedCertificate(_) => GeosatStatus::MalformedCertificate,
        _ => GeosatStatus::InvalidArgument,
    }
}

/// Clears the last error, runs `f`, and maps errors and panics to statuses.
fn guard(f: impl FnOnce() -> Result<GeosatStatus, (GeosatStatus, String)>) -> GeosatStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            GeosatStatus::Internal
        }
    }
}

fn fail(e: Error) -> (GeosatStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_arg(name: &str) -> (GeosatStatus, String) {
    (GeosatStatus::InvalidArgument, format!("`{name}` is null"))
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, (GeosatStatus, String)> {
    if p.is_null() {
        return Err(null_arg(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (GeosatStatus::InvalidArgument, format!("`{name}` is not UTF-8")))
}

unsafe fn theory<'a>(t: *const GeosatTheory) -> Result<&'a Theory, (GeosatStatus, String)> {
    t.as_ref().map(|h| &h.theory).ok_or_else(|| null_arg("theory"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message for the last failed call on this thread; empty after success.
/// The pointer stays valid until the next call into the library.
#[no_mangle]
pub extern "C" fn geosat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses theory text. `max_universe` of 0 selects the default limit.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn geosat_theory_parse(
    text: *const c_char,
    max_universe: usize,
    out: *mut *mut GeosatTheory,
) -> GeosatStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let text = read_str(text, "text")?;
        let max = if max_universe == 0 {
            geosat::logic::DEFAULT_MAX_UNIVERSE
        } else {
            max_universe
        };
        let t = geosat::dsl::parse_theory_with_max(text, max).map_err(fail)?;
        *out = Box::into_raw(Box::new(GeosatTheory { theory: t }));
        Ok(GeosatStatus::Ok)
    })
}

/// The non-trivial-ideal theory of `Z/n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn geosat_theory_gen_nti(n: usize, out: *mut *mut GeosatTheory) -> GeosatStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let ring = FiniteRing::zmod(n).map_err(fail)?;
        let t = gen_nti(&ring).map_err(fail)?;
        *out = Box::into_raw(Box::new(GeosatTheory { theory: t }));
        Ok(GeosatStatus::Ok)
    })
}

/// # Safety
/// `t` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn geosat_theory_free(t: *mut GeosatTheory) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn geosat_theory_symbol_count(t: *const GeosatTheory) -> usize {
    t.as_ref().map_or(0, |h| h.theory.universe().size())
}

/// # Safety
/// `t` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn geosat_theory_axiom_count(t: *const GeosatTheory) -> usize {
    t.as_ref().map_or(0, |h| h.theory.len())
}

/// Canonical text of the theory, or null for a null handle.
///
/// # Safety
/// `t` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn geosat_theory_to_string(t: *const GeosatTheory) -> *mut c_char {
    match t.as_ref() {
        Some(h) => into_c_string(geosat::dsl::serialize_theory(&h.theory)),
        None => ptr::null_mut(),
    }
}

/// Decides degeneracy: `Ok` when degenerate, `Negative` when not.
///
/// # Safety
/// `t` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn geosat_check(t: *const GeosatTheory) -> GeosatStatus {
    guard(|| {
        let tr = degeneracy(theory(t)?).map_err(fail)?;
        Ok(if tr.verdict.is_degenerate() {
            GeosatStatus::Ok
        } else {
            GeosatStatus::Negative
        })
    })
}

/// Number of set models, by exhaustive search.
///
/// # Safety
/// `t` must be a live handle; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn geosat_model_count(t: *const GeosatTheory, count: *mut usize) -> GeosatStatus {
    guard(|| {
        if count.is_null() {
            return Err(null_arg("count"));
        }
        *count = find_models(theory(t)?, None).len();
        Ok(GeosatStatus::Ok)
    })
}

/// Writes a certificate as JSON to `*json`; returns `Ok` for a refutation
/// and `Negative` for a nondegeneracy witness.
///
/// # Safety
/// `t` must be a live handle; `json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn geosat_prove(t: *const GeosatTheory, json: *mut *mut c_char) -> GeosatStatus {
    guard(|| {
        if json.is_null() {
            return Err(null_arg("json"));
        }
        let cert = certificate::prove(theory(t)?).map_err(fail)?;
        *json = into_c_string(cert.to_json());
        Ok(if cert.kind.is_degenerate() {
            GeosatStatus::Ok
        } else {
            GeosatStatus::Negative
        })
    })
}

/// Verifies a JSON certificate: `Ok` when valid, `Negative` with the locus
/// in [`geosat_last_error`] when not.
///
/// # Safety
/// `t` must be a live handle; `json` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn geosat_verify(t: *const GeosatTheory, json: *const c_char) -> GeosatStatus {
    guard(|| {
        let t = theory(t)?;
        let cert = Certificate::from_json(read_str(json, "json")?).map_err(fail)?;
        match certificate::verify(t, &cert).map_err(fail)? {
            Ok(()) => Ok(GeosatStatus::Ok),
            Err(r) => Err((GeosatStatus::Negative, r.to_string())),
        }
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn geosat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
