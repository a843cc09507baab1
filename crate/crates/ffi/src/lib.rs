//! C ABI for flagcone.
//!
//! Every function returns a status code (`FC_OK` on success) and writes its
//! result through an out-pointer. On failure the message for the calling
//! thread is available from [`fc_last_error_message`]. Objects are opaque
//! handles released with their `_free` function; strings returned by the
//! library are released with [`fc_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use flagcone::flag::{Basis, FlagVector};
use flagcone::poset::{GradedPoset, PosetJson};
use flagcone::rational::Q;
use flagcone::transforms::convert;
use libc::{c_char, c_int};

pub const FC_OK: c_int = 0;
pub const FC_ERR_NULL: c_int = 1;
pub const FC_ERR_UTF8: c_int = 2;
pub const FC_ERR_PARSE: c_int = 3;
pub const FC_ERR_DOMAIN: c_int = 4;
pub const FC_ERR_PANIC: c_int = 5;

/// Opaque graded poset.
pub struct FcPoset(GradedPoset);

/// Opaque flag vector.
pub struct FcFlagVector(FlagVector);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(c_int, String);

impl From<flagcone::Error> for Failure {
    fn from(e: flagcone::Error) -> Self {
        let code = match e {
            flagcone::Error::Parse(_) => FC_ERR_PARSE,
            _ => FC_ERR_DOMAIN,
        };
        Failure(code, e.to_string())
    }
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> c_int {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            FC_OK
        }
        Ok(Err(Failure(code, msg))) => {
            set_last_error(&msg);
            code
        }
        Err(_) => {
            set_last_error("internal panic");
            FC_ERR_PANIC
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(FC_ERR_NULL, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    // SAFETY: the caller passes a NUL-terminated string that outlives the call.
    CStr::from_ptr(s).to_str().map_err(|_| Failure(FC_ERR_UTF8, format!("{what} is not valid UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    // SAFETY: `out` is non-null and points to writable storage for a `T`.
    out.write(value);
    Ok(())
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    // SAFETY: a non-null handle was produced by this library and not yet freed.
    p.as_ref().ok_or_else(|| null(what))
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|_| Failure(FC_ERR_DOMAIN, "string contains NUL".into()))
}

/// Numerator and denominator when both fit in `i64`.
fn to_i64_pair(v: &Q) -> Option<(i64, i64)> {
    let num = i64::try_from(v.numer()).ok()?;
    let den = i64::try_from(v.denom()).ok()?;
    Some((num, den))
}

/// Message describing the last failure on this thread. The pointer stays
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn fc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fc_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: the string was produced by `CString::into_raw`.
        drop(CString::from_raw(s));
    }
}

/// Parses a poset from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_poset_from_json(json: *const c_char, out: *mut *mut FcPoset) -> c_int {
    guard(|| {
        let text = read_str(json, "json")?;
        let parsed: PosetJson = serde_json::from_str(text).map_err(|e| Failure(FC_ERR_PARSE, e.to_string()))?;
        let p = GradedPoset::from_json(&parsed)?;
        write_out(out, Box::into_raw(Box::new(FcPoset(p))), "out")
    })
}

/// Builds a poset from a construction expression such as `"chain(4)"`.
///
/// # Safety
/// `expr` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_poset_from_expr(expr: *const c_char, out: *mut *mut FcPoset) -> c_int {
    guard(|| {
        let p = flagcone::expr::construct(read_str(expr, "expr")?)?;
        write_out(out, Box::into_raw(Box::new(FcPoset(p))), "out")
    })
}

/// # Safety
/// `p` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fc_poset_free(p: *mut FcPoset) {
    if !p.is_null() {
        // SAFETY: the handle was produced by `Box::into_raw`.
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_poset_to_json(p: *const FcPoset, out: *mut *mut c_char) -> c_int {
    guard(|| {
        let p = borrow(p, "poset")?;
        let text = serde_json::to_string(&p.0.to_json()).map_err(|e| Failure(FC_ERR_DOMAIN, e.to_string()))?;
        write_out(out, into_c_string(text)?, "out")
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_poset_rank(p: *const FcPoset, out: *mut usize) -> c_int {
    guard(|| write_out(out, borrow(p, "poset")?.0.rank(), "out"))
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_poset_is_eulerian(p: *const FcPoset, out: *mut bool) -> c_int {
    guard(|| write_out(out, borrow(p, "poset")?.0.is_eulerian().holds, "out"))
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_poset_is_half_eulerian(p: *const FcPoset, out: *mut bool) -> c_int {
    guard(|| write_out(out, borrow(p, "poset")?.0.is_half_eulerian().holds, "out"))
}

/// Flag f-vector of a poset.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_poset_flag_vector(p: *const FcPoset, out: *mut *mut FcFlagVector) -> c_int {
    guard(|| {
        let v = borrow(p, "poset")?.0.flag_f_vector()?;
        write_out(out, Box::into_raw(Box::new(FcFlagVector(v))), "out")
    })
}

/// # Safety
/// `v` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fc_flag_vector_free(v: *mut FcFlagVector) {
    if !v.is_null() {
        // SAFETY: the handle was produced by `Box::into_raw`.
        drop(Box::from_raw(v));
    }
}

/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_flag_vector_n(v: *const FcFlagVector, out: *mut usize) -> c_int {
    guard(|| write_out(out, borrow(v, "vector")?.0.n(), "out"))
}

/// Entry at the rank set whose bit `r-1` marks rank `r`, as a reduced
/// fraction. Fails with `FC_ERR_DOMAIN` if it does not fit in 64 bits.
///
/// # Safety
/// `v` must be a live handle; `num` and `den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_flag_vector_entry(
    v: *const FcFlagVector,
    mask: u32,
    num: *mut i64,
    den: *mut i64,
) -> c_int {
    guard(|| {
        let v = &borrow(v, "vector")?.0;
        if mask as u64 >= 1u64 << v.n() {
            return Err(Failure(FC_ERR_DOMAIN, format!("mask {mask} outside [1,{}]", v.n())));
        }
        let (a, b) = to_i64_pair(v.get(mask))
            .ok_or_else(|| Failure(FC_ERR_DOMAIN, "entry does not fit in 64 bits".into()))?;
        write_out(num, a, "num")?;
        write_out(den, b, "den")
    })
}

/// JSON form of the vector in `basis` (`"F"`, `"H"`, `"ELL"`, `"L"`, or
/// null for its own basis).
///
/// # Safety
/// `v` must be a live handle; `basis` null or NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_flag_vector_to_json(
    v: *const FcFlagVector,
    basis: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    guard(|| {
        let v = &borrow(v, "vector")?.0;
        let target: Basis = if basis.is_null() { v.basis() } else { read_str(basis, "basis")?.parse()? };
        let w = convert(v, target)?;
        let text = serde_json::to_string(&w.to_json()).map_err(|e| Failure(FC_ERR_DOMAIN, e.to_string()))?;
        write_out(out, into_c_string(text)?, "out")
    })
}

/// Number of even interval systems on `[1,n]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_even_system_count(n: usize, out: *mut u64) -> c_int {
    guard(|| {
        if n > 16 {
            return Err(Failure(FC_ERR_DOMAIN, format!("n = {n} is too large to enumerate")));
        }
        write_out(out, flagcone::systems::enumerate_even_systems(n).len() as u64, "out")
    })
}

/// Cone verification report for `rank` (2 to 8) as a JSON string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_cone_verify(rank: usize, out: *mut *mut c_char) -> c_int {
    guard(|| {
        let report = flagcone::cone::verify_rank(rank)?;
        write_out(out, into_c_string(report.to_json().to_string())?, "out")
    })
}
