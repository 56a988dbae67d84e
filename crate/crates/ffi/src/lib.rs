//! C interface to `sturmian-spectra`.
//!
//! Continued fractions are passed around as opaque [`SsContinuedFraction`]
//! handles. Every fallible function returns an [`SsStatus`] and writes its
//! result through an out pointer; on failure a message is available from
//! [`ss_last_error_message`] on the same thread. Strings returned through
//! `char **` out pointers are owned by the caller and must be released with
//! [`ss_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde::Serialize;
use sturmian_spectra::kabelian::{classify_by_intervals, ClassListing};
use sturmian_spectra::powers::{kab_exponent, max_kab_exponent, theta_k};
use sturmian_spectra::rotation::EndpointConvention;
use sturmian_spectra::{ContinuedFraction, Error};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SsStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    InvalidArgument = 3,
    ResourceCap = 4,
    Internal = 5,
    Panic = 6,
}

/// An eventually periodic continued fraction.
pub struct SsContinuedFraction(ContinuedFraction);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SsStatus {
    match e {
        Error::Parse { .. } | Error::InvalidQuotient { .. } => SsStatus::Parse,
        Error::ResourceCap { .. } => SsStatus::ResourceCap,
        Error::Invariant(_) => SsStatus::Internal,
        _ => SsStatus::InvalidArgument,
    }
}

fn fail(status: SsStatus, msg: &str) -> SsStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), SsStatus>) -> SsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(SsStatus::Panic, "panic inside sturmian-spectra"),
    }
}

fn lift<T>(r: sturmian_spectra::Result<T>) -> Result<T, SsStatus> {
    r.map_err(|e| fail(status_of(&e), &e.to_string()))
}

unsafe fn handle<'a>(cf: *const SsContinuedFraction) -> Result<&'a ContinuedFraction, SsStatus> {
    cf.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| fail(SsStatus::NullPointer, "null continued fraction handle"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), SsStatus> {
    if out.is_null() {
        return Err(fail(SsStatus::NullPointer, "null out pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), SsStatus> {
    let c = CString::new(s).map_err(|_| fail(SsStatus::Internal, "output contains a nul byte"))?;
    write_out(out, c.into_raw())
}

unsafe fn write_json<T: Serialize>(out: *mut *mut c_char, value: &T) -> Result<(), SsStatus> {
    let s = serde_json::to_string(value).map_err(|e| fail(SsStatus::Internal, &e.to_string()))?;
    write_string(out, s)
}

fn convention(right_closed: bool) -> EndpointConvention {
    if right_closed {
        EndpointConvention::RIGHT_CLOSED
    } else {
        EndpointConvention::LEFT_CLOSED
    }
}

fn to_usize(n: u32) -> usize {
    n as usize
}

/// The message of the last failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ss_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ss_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses text such as `"[0; 2, (1)]"` into a new handle.
///
/// # Safety
/// `text` must be NULL or a valid NUL-terminated string; `out` must be NULL
/// or writable.
#[no_mangle]
pub unsafe extern "C" fn ss_cf_parse(text: *const c_char, out: *mut *mut SsContinuedFraction) -> SsStatus {
    guard(|| {
        if text.is_null() {
            return Err(fail(SsStatus::NullPointer, "null text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| fail(SsStatus::Parse, "text is not UTF-8"))?;
        let cf = lift(ContinuedFraction::parse(s))?;
        write_out(out, Box::into_raw(Box::new(SsContinuedFraction(cf))))
    })
}

/// Releases a handle from [`ss_cf_parse`]. NULL is ignored.
///
/// # Safety
/// `cf` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ss_cf_free(cf: *mut SsContinuedFraction) {
    if !cf.is_null() {
        drop(Box::from_raw(cf));
    }
}

/// Canonical text form, e.g. `[0; 2, (1)]`.
///
/// # Safety
/// `cf` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_cf_to_string(cf: *const SsContinuedFraction, out: *mut *mut c_char) -> SsStatus {
    guard(|| write_string(out, handle(cf)?.to_string()))
}

/// The value as `{"p","q","d","r","decimal"}`, meaning `(p + q sqrt d)/r`.
///
/// # Safety
/// `cf` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_cf_value_json(cf: *const SsContinuedFraction, out: *mut *mut c_char) -> SsStatus {
    guard(|| write_json(out, &handle(cf)?.value()))
}

/// The value rounded to a double.
///
/// # Safety
/// `cf` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_cf_value_f64(cf: *const SsContinuedFraction, out: *mut f64) -> SsStatus {
    guard(|| write_out(out, handle(cf)?.value().to_f64()))
}

/// The Lagrange constant as JSON. Rational inputs fail with
/// `INVALID_ARGUMENT`.
///
/// # Safety
/// `cf` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_cf_lagrange_json(cf: *const SsContinuedFraction, out: *mut *mut c_char) -> SsStatus {
    guard(|| {
        let l = lift(handle(cf)?.lagrange_constant())?;
        write_json(out, &l)
    })
}

/// `Theta_k` of the slope as JSON.
///
/// # Safety
/// `cf` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_theta_json(cf: *const SsContinuedFraction, k: u32, out: *mut *mut c_char) -> SsStatus {
    guard(|| {
        let t = lift(theta_k(handle(cf)?, to_usize(k)))?;
        write_json(out, &t)
    })
}

/// `A_{k,alpha}(m)` for the slope `alpha = value(cf)`.
///
/// # Safety
/// `cf` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_kab_exponent(
    cf: *const SsContinuedFraction,
    k: u32,
    m: u32,
    right_closed: bool,
    out: *mut u64,
) -> SsStatus {
    guard(|| {
        let e = lift(kab_exponent(&handle(cf)?.value(), to_usize(k), to_usize(m), convention(right_closed)))?;
        write_out(out, e)
    })
}

/// The exponent record with a witness, as JSON.
///
/// # Safety
/// `cf` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_kab_exponent_json(
    cf: *const SsContinuedFraction,
    k: u32,
    m: u32,
    right_closed: bool,
    out: *mut *mut c_char,
) -> SsStatus {
    guard(|| {
        let r = lift(max_kab_exponent(&handle(cf)?.value(), to_usize(k), to_usize(m), convention(right_closed)))?;
        write_json(out, &r)
    })
}

/// The k-abelian classes of the length-`m` factors as
/// `{"k","m","classes":[{"interval_index","members"}]}`.
///
/// # Safety
/// `cf` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_classes_json(
    cf: *const SsContinuedFraction,
    k: u32,
    m: u32,
    right_closed: bool,
    out: *mut *mut c_char,
) -> SsStatus {
    guard(|| {
        let (k, m) = (to_usize(k), to_usize(m));
        let classes = lift(classify_by_intervals(&handle(cf)?.value(), k, m, convention(right_closed)))?;
        write_json(out, &ClassListing { k, m, classes })
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ss_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
