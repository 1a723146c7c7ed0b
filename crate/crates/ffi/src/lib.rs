//! C ABI over the `loopjones` library.
//!
//! Handles are opaque pointers owned by the caller and released with the
//! matching `*_free` function. Every fallible call returns an [`LjStatus`];
//! on failure a message is available from [`lj_last_error`] on the same
//! thread. Strings returned through out-parameters are allocated here and
//! must be released with [`lj_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use loopjones::expansion::{alexander, loop_expansion, LoopExpansion, LoopOptions};
use loopjones::quantum::colored_jones;
use loopjones::{BraidWord, Error};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LjStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidBraid = 3,
    NotAKnot = 4,
    InvalidArgument = 5,
    Unverified = 6,
    Internal = 7,
    Panic = 8,
}

/// A braid word.
pub struct LjBraid(BraidWord);

/// A loop expansion.
pub struct LjExpansion(LoopExpansion);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

fn status_of(err: &Error) -> LjStatus {
    match err {
        Error::InvalidBraid(_) | Error::Parse(_) => LjStatus::InvalidBraid,
        Error::NotAKnot(_) => LjStatus::NotAKnot,
        Error::InvalidArgument(_) => LjStatus::InvalidArgument,
        Error::Unverified(_) => LjStatus::Unverified,
        _ => LjStatus::Internal,
    }
}

/// Runs `body`, recording any error or panic for [`lj_last_error`].
fn guard<F: FnOnce() -> Result<(), (LjStatus, String)>>(body: F) -> LjStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            LjStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LjStatus::Panic
        }
    }
}

fn lift<T>(result: loopjones::Result<T>) -> Result<T, (LjStatus, String)> {
    result.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (LjStatus, String) {
    (LjStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, (LjStatus, String)> {
    if text.is_null() {
        return Err(null("text"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| (LjStatus::InvalidUtf8, "text is not valid UTF-8".into()))
}

unsafe fn write_string(out: *mut *mut c_char, value: String) -> Result<(), (LjStatus, String)> {
    let c = CString::new(value).map_err(|_| (LjStatus::Internal, "string contains a nul byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn borrow<'a, T>(handle: *const T, what: &str) -> Result<&'a T, (LjStatus, String)> {
    handle.as_ref().ok_or_else(|| null(what))
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn lj_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn lj_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lj_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a braid word such as `"1 -2 1 -2"`. `strands = 0` infers the
/// strand count.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lj_braid_parse(text: *const c_char, strands: usize, out: *mut *mut LjBraid) -> LjStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(text)?;
        let beta = lift(BraidWord::parse(text, (strands > 0).then_some(strands)))?;
        *out = Box::into_raw(Box::new(LjBraid(beta)));
        Ok(())
    })
}

/// # Safety
/// `braid` must come from [`lj_braid_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lj_braid_free(braid: *mut LjBraid) {
    if !braid.is_null() {
        drop(Box::from_raw(braid));
    }
}

/// Number of strands, or 0 for a null handle.
///
/// # Safety
/// `braid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lj_braid_strands(braid: *const LjBraid) -> usize {
    braid.as_ref().map_or(0, |b| b.0.strands())
}

/// 1 when the closure is a knot, 0 otherwise or for a null handle.
///
/// # Safety
/// `braid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lj_braid_is_knot(braid: *const LjBraid) -> i32 {
    braid.as_ref().map_or(0, |b| i32::from(b.0.closure_is_knot()))
}

/// Alexander polynomial in `u = z^{1/2}`, symmetric with value 1 at 1.
///
/// # Safety
/// `braid` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lj_alexander(braid: *const LjBraid, out: *mut *mut c_char) -> LjStatus {
    guard(|| {
        let beta = borrow(braid, "braid")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let delta = lift(alexander(&beta.0))?;
        write_string(out, delta.to_string())
    })
}

/// Colored Jones polynomial `J_{K,alpha}` as a polynomial in `s = q^{1/2}`.
///
/// # Safety
/// `braid` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lj_colored_jones(braid: *const LjBraid, alpha: usize, out: *mut *mut c_char) -> LjStatus {
    guard(|| {
        let beta = borrow(braid, "braid")?;
        if out.is_null() {
            return Err(null("out"));
        }
        if alpha < 2 {
            return Err((LjStatus::InvalidArgument, "alpha must be at least 2".into()));
        }
        let j = lift(colored_jones(&beta.0, alpha, 0))?;
        write_string(out, j.polynomial.to_string())
    })
}

/// Loop expansion to `order` in `ħ`, summing at least `cutoff` terms and
/// keeping `u`-degrees down to `floor` (negative).
///
/// # Safety
/// `braid` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lj_loop_expansion(
    braid: *const LjBraid,
    order: usize,
    cutoff: usize,
    floor: i32,
    out: *mut *mut LjExpansion,
) -> LjStatus {
    guard(|| {
        let beta = borrow(braid, "braid")?;
        if out.is_null() {
            return Err(null("out"));
        }
        if floor >= 0 {
            return Err((LjStatus::InvalidArgument, "floor must be negative".into()));
        }
        let opts = LoopOptions { order, cutoff, max_cutoff: 4 * cutoff, floor, cache: None };
        let exp = lift(loop_expansion(&beta.0, &opts))?;
        *out = Box::into_raw(Box::new(LjExpansion(exp)));
        Ok(())
    })
}

/// # Safety
/// `exp` must come from [`lj_loop_expansion`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lj_expansion_free(exp: *mut LjExpansion) {
    if !exp.is_null() {
        drop(Box::from_raw(exp));
    }
}

/// 1 when the certified window does not reach the floor, 0 when it does,
/// -1 for a null handle.
///
/// # Safety
/// `exp` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lj_expansion_is_partial(exp: *const LjExpansion) -> i32 {
    exp.as_ref().map_or(-1, |e| i32::from(e.0.partial))
}

/// Coefficients at `u`-degrees above this value are certified.
///
/// # Safety
/// `exp` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lj_expansion_exact_above(exp: *const LjExpansion, out: *mut i32) -> LjStatus {
    guard(|| {
        let e = borrow(exp, "expansion")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = e.0.exact_above;
        Ok(())
    })
}

/// Certified coefficient of `u^degree` in `V^(i)` as `"p/q"` text.
/// Fails with `LJ_STATUS_UNVERIFIED` for degrees outside the certified
/// window.
///
/// # Safety
/// `exp` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lj_expansion_coefficient(
    exp: *const LjExpansion,
    i: usize,
    degree: i32,
    out: *mut *mut c_char,
) -> LjStatus {
    guard(|| {
        let e = borrow(exp, "expansion")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let tail = e
            .0
            .series
            .get(i)
            .ok_or_else(|| (LjStatus::InvalidArgument, format!("order {i} was not computed")))?;
        match tail.coeff(degree).filter(|_| tail.is_exact(degree)) {
            Some(c) => write_string(out, c.to_string()),
            None => Err((LjStatus::Unverified, format!("u^{degree} of V^({i}) is not certified"))),
        }
    })
}

/// The expansion as JSON: braid, order, cutoff, certified tails.
///
/// # Safety
/// `exp` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lj_expansion_json(exp: *const LjExpansion, out: *mut *mut c_char) -> LjStatus {
    guard(|| {
        let e = &borrow(exp, "expansion")?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        let series: Vec<_> = e
            .series
            .iter()
            .enumerate()
            .map(|(i, tail)| {
                let terms: Vec<(i32, String)> =
                    tail.exact_terms().into_iter().map(|(d, c)| (d, c.to_string())).collect();
                serde_json::json!({ "i": i, "tail": terms, "exact_above": tail.stable_above() })
            })
            .collect();
        let value = serde_json::json!({
            "knot": e.braid,
            "L": e.order,
            "M": e.cutoff,
            "partial": e.partial,
            "V": series,
        });
        write_string(out, value.to_string())
    })
}
