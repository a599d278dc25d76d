//! C ABI for the `chowla-milnor` library.
//!
//! Every fallible call returns a [`CmStatus`] and writes its result through an
//! out-pointer. On failure the message is available from [`cm_last_error`]
//! until the next call on the same thread. Handles are opaque and owned by
//! the caller: free them with the matching `*_free` function. Strings handed
//! out by this library are freed with [`cm_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use chowla_milnor::cli::{self, ExperimentConfig};
use chowla_milnor::identities::exact_ratio;
use chowla_milnor::numerics::digits_to_bits;
use chowla_milnor::{expand, hurwitz_zeta, CotDerivativeExpansion, CyclotomicElement, Error};
use libc::c_char;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Usage = 3,
    Domain = 4,
    Parse = 5,
    Panic = 6,
}

/// Opaque expansion of `D^{k-1}(π cot πz)`.
pub struct CmExpansion(CotDerivativeExpansion);

/// Opaque element of a cyclotomic field.
pub struct CmElement(CyclotomicElement);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: CmStatus, msg: &str) -> CmStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> CmStatus {
    let status = match e {
        Error::Usage(_) => CmStatus::Usage,
        Error::Domain(_) => CmStatus::Domain,
        Error::Parse(_) => CmStatus::Parse,
    };
    fail(status, &e.to_string())
}

/// Runs `body` with panics turned into [`CmStatus::Panic`].
fn guard(body: impl FnOnce() -> CmStatus) -> CmStatus {
    set_error("");
    catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| fail(CmStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, CmStatus> {
    if p.is_null() {
        return Err(fail(CmStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(CmStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> CmStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            CmStatus::Ok
        }
        Err(_) => fail(CmStatus::Panic, "output contained a nul byte"),
    }
}

unsafe fn write_box<T>(out: *mut *mut T, value: T) -> CmStatus {
    *out = Box::into_raw(Box::new(value));
    CmStatus::Ok
}

macro_rules! non_null {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            return fail(CmStatus::NullPointer, "null pointer argument");
        }
    };
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return from_error(e),
        }
    };
}

/// Message for the most recent failure on this thread, empty after success.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn cm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `ζ(k, a/q)` to `digits` decimal digits, as a decimal string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cm_hurwitz_zeta(k: u32, a: i64, q: i64, digits: u32, out: *mut *mut c_char) -> CmStatus {
    guard(|| {
        non_null!(out);
        let v = try_status!(hurwitz_zeta(k, a, q, digits_to_bits(digits)));
        write_string(out, v.to_decimal(digits as usize))
    })
}

/// Runs one experiment config (the JSON accepted by batch mode). Writes the
/// report text and the process exit code the CLI would use; a usage failure
/// inside the run still returns `Ok` with exit code 2 and the message in
/// [`cm_last_error`].
///
/// # Safety
/// `config_json` must be a nul-terminated string; `out` and `exit_code` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cm_run_json(config_json: *const c_char, out: *mut *mut c_char, exit_code: *mut i32) -> CmStatus {
    guard(|| {
        non_null!(out, exit_code);
        let text = match read_str(config_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let config: ExperimentConfig = match serde_json::from_str(text) {
            Ok(c) => c,
            Err(e) => return fail(CmStatus::Parse, &format!("malformed config: {e}")),
        };
        let outcome = cli::run(&config);
        *exit_code = outcome.exit_code;
        if outcome.exit_code == cli::EXIT_USAGE {
            set_error(outcome.stderr.trim_end());
        }
        write_string(out, outcome.stdout)
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cm_expansion_new(k: u32, out: *mut *mut CmExpansion) -> CmStatus {
    guard(|| {
        non_null!(out);
        write_box(out, CmExpansion(try_status!(expand(k))))
    })
}

/// # Safety
/// `e` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cm_expansion_order(e: *const CmExpansion) -> u32 {
    e.as_ref().map_or(0, |e| e.0.order())
}

/// Coefficient `c_l` as a decimal string.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cm_expansion_coefficient(e: *const CmExpansion, l: u32, out: *mut *mut c_char) -> CmStatus {
    guard(|| {
        non_null!(e, out);
        write_string(out, (*e).0.coefficient(l).to_string())
    })
}

/// JSON form `{"k":…,"coeffs":{…}}`.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cm_expansion_to_json(e: *const CmExpansion, out: *mut *mut c_char) -> CmStatus {
    guard(|| {
        non_null!(e, out);
        write_string(out, serde_json::to_string(&(*e).0.record()).expect("record serializes"))
    })
}

/// # Safety
/// `e` must come from [`cm_expansion_new`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cm_expansion_free(e: *mut CmExpansion) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Parses the text form `q; c0, c1, …`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cm_element_parse(text: *const c_char, out: *mut *mut CmElement) -> CmStatus {
    guard(|| {
        non_null!(out);
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        write_box(out, CmElement(try_status!(text.parse::<CyclotomicElement>())))
    })
}

/// `(ζ(k,a/q) − ζ(k,1−a/q)) / (2πi)^k` as an exact element, odd `k` only.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cm_exact_ratio(k: u32, a: i64, q: i64, out: *mut *mut CmElement) -> CmStatus {
    guard(|| {
        non_null!(out);
        write_box(out, CmElement(try_status!(exact_ratio(k, a, q))))
    })
}

/// # Safety
/// `x` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cm_element_to_string(x: *const CmElement, out: *mut *mut c_char) -> CmStatus {
    guard(|| {
        non_null!(x, out);
        write_string(out, (*x).0.to_string())
    })
}

/// # Safety
/// `x`, `y` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cm_element_mul(x: *const CmElement, y: *const CmElement, out: *mut *mut CmElement) -> CmStatus {
    guard(|| {
        non_null!(x, y, out);
        write_box(out, CmElement(try_status!((*x).0.try_mul(&(*y).0))))
    })
}

/// # Safety
/// `x` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cm_element_inverse(x: *const CmElement, out: *mut *mut CmElement) -> CmStatus {
    guard(|| {
        non_null!(x, out);
        write_box(out, CmElement(try_status!((*x).0.inverse())))
    })
}

/// `σ_t`, sending `ζ_q ↦ ζ_q^t` for `gcd(t, q) = 1`.
///
/// # Safety
/// `x` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cm_element_galois(x: *const CmElement, t: i64, out: *mut *mut CmElement) -> CmStatus {
    guard(|| {
        non_null!(x, out);
        write_box(out, CmElement(try_status!((*x).0.galois_apply(t))))
    })
}

/// # Safety
/// `x` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cm_element_is_in_subfield(x: *const CmElement, d: u64, out: *mut bool) -> CmStatus {
    guard(|| {
        non_null!(x, out);
        *out = try_status!((*x).0.is_in_subfield(d));
        CmStatus::Ok
    })
}

/// # Safety
/// `x` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cm_element_free(x: *mut CmElement) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}
