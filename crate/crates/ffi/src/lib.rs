//! C ABI for the `numpoly` library.
//!
//! Polynomials live behind the opaque `NumpolyPoly` handle. Every fallible
//! call returns a `NumpolyStatus`; on failure the message is available from
//! `numpoly_last_error` on the same thread. Strings returned through `char **`
//! out-parameters are owned by the caller and released with
//! `numpoly_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use numpoly::cli::{membership, Ring};
use numpoly::numpoly::{parse_poly, to_binomial, to_monomial, AnyPoly, LaurentPoly, PolyJson};
use numpoly::{teichmuller, Error};

/// Opaque Laurent polynomial with rational coefficients.
pub struct NumpolyPoly(LaurentPoly);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumpolyStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// bad prime, ring/prime mismatch, non-integral input and similar
    Domain = 4,
    Precision = 5,
    Internal = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumpolyRing {
    A = 0,
    Ast = 1,
    Ap = 2,
    Astp = 3,
    Ko = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumpolyBasis {
    Monomial = 0,
    Binomial = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(NumpolyStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => NumpolyStatus::Parse,
            Error::Precision(_) => NumpolyStatus::Precision,
            Error::Internal(_) => NumpolyStatus::Internal,
            _ => NumpolyStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: Option<String>) {
    let msg = msg.map(|m| CString::new(m.replace('\0', " ")).expect("NUL bytes removed"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = msg);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NumpolyStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(None);
            NumpolyStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(Some(msg));
            status
        }
        Err(_) => {
            set_last_error(Some("panic inside numpoly".into()));
            NumpolyStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(NumpolyStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(NumpolyStatus::InvalidUtf8, "input is not UTF-8".into()))
}

unsafe fn poly_ref<'a>(p: *const NumpolyPoly) -> Result<&'a LaurentPoly, Failure> {
    p.as_ref().map(|h| &h.0).ok_or_else(null)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c =
        CString::new(s).map_err(|_| Failure(NumpolyStatus::Internal, "NUL in output".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_poly(out: *mut *mut NumpolyPoly, f: LaurentPoly) {
    *out = Box::into_raw(Box::new(NumpolyPoly(f)));
}

/// Parses an expression in `w` such as `"(w^2-1)/3"` or a polynomial JSON
/// document in either basis.
///
/// # Safety
/// `expr` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn numpoly_poly_parse(
    expr: *const c_char,
    out: *mut *mut NumpolyPoly,
) -> NumpolyStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let s = read_str(expr)?;
        let f = if s.trim_start().starts_with('{') {
            match PolyJson::parse(s)?.into_poly()? {
                AnyPoly::Monomial(f) => f,
                AnyPoly::Binomial(b) => to_monomial(&b),
            }
        } else {
            parse_poly(s)?
        };
        write_poly(out, f);
        Ok(())
    })
}

/// # Safety
/// `poly` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn numpoly_poly_free(poly: *mut NumpolyPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// # Safety
/// All pointers must be valid; `a` and `b` are borrowed.
#[no_mangle]
pub unsafe extern "C" fn numpoly_poly_mul(
    a: *const NumpolyPoly,
    b: *const NumpolyPoly,
    out: *mut *mut NumpolyPoly,
) -> NumpolyStatus {
    guard(|| {
        let (a, b) = (poly_ref(a)?, poly_ref(b)?);
        if out.is_null() {
            return Err(null());
        }
        write_poly(out, a.clone() * b.clone());
        Ok(())
    })
}

/// # Safety
/// All pointers must be valid; `a` and `b` are borrowed.
#[no_mangle]
pub unsafe extern "C" fn numpoly_poly_add(
    a: *const NumpolyPoly,
    b: *const NumpolyPoly,
    out: *mut *mut NumpolyPoly,
) -> NumpolyStatus {
    guard(|| {
        let (a, b) = (poly_ref(a)?, poly_ref(b)?);
        if out.is_null() {
            return Err(null());
        }
        write_poly(out, a.clone() + b.clone());
        Ok(())
    })
}

/// Human-readable form, e.g. `1/3*w^2 - 1/3`.
///
/// # Safety
/// `poly` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn numpoly_poly_to_string(
    poly: *const NumpolyPoly,
    out: *mut *mut c_char,
) -> NumpolyStatus {
    guard(|| {
        let f = poly_ref(poly)?;
        if out.is_null() {
            return Err(null());
        }
        write_string(out, f.to_string())
    })
}

/// Compact JSON in the requested basis. The binomial basis needs a
/// polynomial without negative powers.
///
/// # Safety
/// `poly` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn numpoly_poly_to_json(
    poly: *const NumpolyPoly,
    basis: NumpolyBasis,
    out: *mut *mut c_char,
) -> NumpolyStatus {
    guard(|| {
        let f = poly_ref(poly)?;
        if out.is_null() {
            return Err(null());
        }
        let doc = match basis {
            NumpolyBasis::Monomial => PolyJson::from(f),
            NumpolyBasis::Binomial => PolyJson::from(&to_binomial(f)?),
        };
        let text = serde_json::to_string(&doc)
            .map_err(|e| Failure(NumpolyStatus::Internal, e.to_string()))?;
        write_string(out, text)
    })
}

/// Ring membership. `prime == 0` means no prime. `is_member` receives 0 or
/// 1; `verdict_json`, if not null, receives the verdict with its witness.
///
/// # Safety
/// `poly` and `is_member` must be valid; `verdict_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn numpoly_member(
    poly: *const NumpolyPoly,
    ring: NumpolyRing,
    prime: u64,
    is_member: *mut i32,
    verdict_json: *mut *mut c_char,
) -> NumpolyStatus {
    guard(|| {
        let f = poly_ref(poly)?;
        if is_member.is_null() {
            return Err(null());
        }
        let ring = match ring {
            NumpolyRing::A => Ring::A,
            NumpolyRing::Ast => Ring::Ast,
            NumpolyRing::Ap => Ring::Ap,
            NumpolyRing::Astp => Ring::Astp,
            NumpolyRing::Ko => Ring::Ko,
        };
        let v = membership(ring, (prime != 0).then_some(prime), f)?;
        *is_member = v.member as i32;
        if !verdict_json.is_null() {
            let text = serde_json::to_string(&v)
                .map_err(|e| Failure(NumpolyStatus::Internal, e.to_string()))?;
            write_string(verdict_json, text)?;
        }
        Ok(())
    })
}

/// Teichmüller lift of the smallest primitive root mod `p`, reduced mod
/// `p^precision`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn numpoly_teichmuller(
    p: u64,
    precision: u32,
    out: *mut u64,
) -> NumpolyStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = teichmuller(p, precision)?.value;
        Ok(())
    })
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn numpoly_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn numpoly_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn numpoly_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
