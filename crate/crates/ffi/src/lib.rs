//! C ABI for the modlie library: opaque algebra handles, status codes,
//! and a thread-local last-error message.
//!
//! Every function returning `MlStatus` reports failure details through
//! `ml_last_error_message`. Strings returned through out-parameters are
//! owned by the caller and must be released with `ml_string_free`;
//! algebra handles with `ml_algebra_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use modlie::cohomology::{h2_basis, DEFAULT_COHOMOLOGY_LIMIT};
use modlie::constructors::{construct, Family, DEFAULT_CONSTRUCT_LIMIT};
use modlie::extensions::{frobenius_extension, verify_extension_axioms, witt1_extension};
use modlie::io::{parse_algebra, write_algebra};
use modlie::restricted::h2star_basis;
use modlie::AlgebraDescription;

/// Opaque handle to a restricted Lie algebra.
pub struct MlAlgebra {
    inner: AlgebraDescription,
}

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MlStatus {
    MlOk = 0,
    MlErrInvalidArgument = 1,
    MlErrParse = 2,
    MlErrVerification = 3,
    MlErrResourceGuard = 4,
    MlErrUtf8 = 5,
    MlErrNullPointer = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &modlie::Error) -> MlStatus {
    use modlie::Error;
    match err {
        Error::ResourceGuard(_) => MlStatus::MlErrResourceGuard,
        Error::Parse { .. } | Error::Io(_) => MlStatus::MlErrParse,
        Error::ExtensionAxiom(_) | Error::NotCocycle => MlStatus::MlErrVerification,
        _ => MlStatus::MlErrInvalidArgument,
    }
}

/// Message describing the most recent error on this thread. The pointer
/// stays valid until the next failing call on the same thread; do not
/// free it.
#[no_mangle]
pub extern "C" fn ml_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, MlStatus> {
    if ptr.is_null() {
        set_error("null string pointer");
        return Err(MlStatus::MlErrNullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string is not valid UTF-8");
        MlStatus::MlErrUtf8
    })
}

fn emit(out: *mut *mut MlAlgebra, alg: AlgebraDescription) -> MlStatus {
    if out.is_null() {
        set_error("null output pointer");
        return MlStatus::MlErrNullPointer;
    }
    let boxed = Box::new(MlAlgebra { inner: alg });
    unsafe {
        *out = Box::into_raw(boxed);
    }
    MlStatus::MlOk
}

/// Constructs a simple restricted Lie algebra.
///
/// `family` is one of "witt", "special", "hamiltonian", "contact", "sl",
/// "psl"; `n` is the family parameter and `p` the (prime) characteristic.
/// `max_dim` bounds the construction (pass 0 for the default of 2000).
///
/// # Safety
/// `family` must be a valid NUL-terminated string and `out` a valid
/// pointer to receive the handle.
#[no_mangle]
pub unsafe extern "C" fn ml_algebra_construct(
    family: *const c_char,
    n: u32,
    p: u64,
    max_dim: usize,
    out: *mut *mut MlAlgebra,
) -> MlStatus {
    let family_str = match read_str(family) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let Some(fam) = Family::parse(family_str) else {
        set_error(&format!("unknown family {family_str:?}"));
        return MlStatus::MlErrInvalidArgument;
    };
    let limit = if max_dim == 0 {
        DEFAULT_CONSTRUCT_LIMIT
    } else {
        max_dim
    };
    match construct(fam, n as usize, p, limit) {
        Ok(alg) => emit(out, alg),
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Parses an algebra from its structure-constant document.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid
/// pointer to receive the handle.
#[no_mangle]
pub unsafe extern "C" fn ml_algebra_parse(
    text: *const c_char,
    out: *mut *mut MlAlgebra,
) -> MlStatus {
    let text = match read_str(text) {
        Ok(s) => s,
        Err(status) => return status,
    };
    match parse_algebra(text) {
        Ok(alg) => emit(out, alg),
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Renders the canonical structure-constant document. The returned
/// string must be freed with `ml_string_free`.
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ml_algebra_write(
    alg: *const MlAlgebra,
    out: *mut *mut c_char,
) -> MlStatus {
    if alg.is_null() || out.is_null() {
        set_error("null pointer");
        return MlStatus::MlErrNullPointer;
    }
    let text = write_algebra(&(*alg).inner, &[]);
    match CString::new(text) {
        Ok(s) => {
            *out = s.into_raw();
            MlStatus::MlOk
        }
        Err(_) => {
            set_error("document contains interior NUL");
            MlStatus::MlErrUtf8
        }
    }
}

/// Dimension of the algebra (0 for a null handle).
///
/// # Safety
/// `alg` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ml_algebra_dim(alg: *const MlAlgebra) -> u32 {
    if alg.is_null() {
        return 0;
    }
    (*alg).inner.dim() as u32
}

/// Field characteristic (0 for a null handle).
///
/// # Safety
/// `alg` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ml_algebra_p(alg: *const MlAlgebra) -> u64 {
    if alg.is_null() {
        return 0;
    }
    (*alg).inner.p()
}

/// Runs the Jacobi, restrictedness, and simplicity gates.
/// Returns MlOk when all pass, MlErrVerification otherwise.
///
/// # Safety
/// `alg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ml_algebra_verify(
    alg: *const MlAlgebra,
    samples: u32,
    seed: u64,
) -> MlStatus {
    if alg.is_null() {
        set_error("null handle");
        return MlStatus::MlErrNullPointer;
    }
    let a = &(*alg).inner;
    if let Err(v) = a.jacobi_check() {
        set_error(&v.to_string());
        return MlStatus::MlErrVerification;
    }
    let r = a.restrictedness_check(samples as usize, seed);
    if !r.passed() {
        set_error(&r.to_string());
        return MlStatus::MlErrVerification;
    }
    let s = a.simplicity_check(3, seed);
    if !s.is_simple() {
        set_error(&s.to_string());
        return MlStatus::MlErrVerification;
    }
    MlStatus::MlOk
}

/// dim H^2 of the algebra. `max_dim` bounds the computation (0 for the
/// default of 300).
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ml_h2_dim(
    alg: *const MlAlgebra,
    max_dim: usize,
    out: *mut u32,
) -> MlStatus {
    if alg.is_null() || out.is_null() {
        set_error("null pointer");
        return MlStatus::MlErrNullPointer;
    }
    let limit = if max_dim == 0 {
        DEFAULT_COHOMOLOGY_LIMIT
    } else {
        max_dim
    };
    match h2_basis(&(*alg).inner, limit) {
        Ok(report) => {
            *out = report.h2_dim as u32;
            MlStatus::MlOk
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// dim H^2_* of the algebra, computed constructively with a verified
/// basis. `max_dim` as in `ml_h2_dim`.
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ml_h2star_dim(
    alg: *const MlAlgebra,
    max_dim: usize,
    seed: u64,
    out: *mut u32,
) -> MlStatus {
    if alg.is_null() || out.is_null() {
        set_error("null pointer");
        return MlStatus::MlErrNullPointer;
    }
    let limit = if max_dim == 0 {
        DEFAULT_COHOMOLOGY_LIMIT
    } else {
        max_dim
    };
    match h2star_basis(&(*alg).inner, limit, seed) {
        Ok(report) => {
            *out = report.h2star_dim as u32;
            MlStatus::MlOk
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Builds the restricted central extension by the Frobenius cocycle
/// (0, omega_i) for the 0-based basis index `i`, verifying all axioms.
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ml_extend_frobenius(
    alg: *const MlAlgebra,
    i: u32,
    out: *mut *mut MlAlgebra,
) -> MlStatus {
    if alg.is_null() {
        set_error("null handle");
        return MlStatus::MlErrNullPointer;
    }
    match frobenius_extension(&(*alg).inner, i as usize) {
        Ok(ext) => {
            let report = verify_extension_axioms(&ext, 10, 0);
            if !report.passed() {
                set_error(&format!("extension verification failed\n{report}"));
                return MlStatus::MlErrVerification;
            }
            emit(out, ext.algebra)
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Builds the explicit W(1) formula extension at characteristic p.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ml_witt1_extension(p: u64, out: *mut *mut MlAlgebra) -> MlStatus {
    match witt1_extension(p) {
        Ok(ext) => emit(out, ext.algebra),
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Releases an algebra handle (null is a no-op).
///
/// # Safety
/// `alg` must be a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ml_algebra_free(alg: *mut MlAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Releases a string returned by this library (null is a no-op).
///
/// # Safety
/// `s` must be a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ml_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
