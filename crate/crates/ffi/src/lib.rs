//! C interface to `mdmat`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns
//! an [`MdStatus`]; on failure the out-parameter is left untouched and a
//! message is available from [`md_last_error`] on the same thread.
//! Axis and index arguments are 0-based.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mdmat::combinatorics::{latin_to_tensor, transversal_count, LatinHypercube};
use mdmat::format::{parse_latin, parse_pmat, write_latin, write_pmat};
use mdmat::ops::{self, AxisSet};
use mdmat::permanent::{has_positive_diagonal, permanent};
use mdmat::rational::format_literal;
use mdmat::stochastic::is_k_stochastic;
use mdmat::tensor::{identity_diag, uniform_j};
use mdmat::{Error, Tensor};

/// Result codes. The nonzero library codes match the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MdStatus {
    Ok = 0,
    Validation = 1,
    Parse = 2,
    Budget = 4,
    NullArgument = 16,
    InvalidUtf8 = 17,
    Panic = 18,
}

/// Exact rational tensor.
pub struct MdTensor(Tensor);

/// Latin hypercube with symbols `1..=n`.
pub struct MdLatin(LatinHypercube);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

struct Failure(MdStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Validation(_) => MdStatus::Validation,
            Error::Parse { .. } | Error::Io(_) => MdStatus::Parse,
            Error::Budget { .. } => MdStatus::Budget,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(MdStatus::NullArgument, format!("null pointer passed as {what}"))
}

fn run(f: impl FnOnce() -> Result<(), Failure>) -> MdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MdStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal panic: {message}"));
            MdStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null("text"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(MdStatus::InvalidUtf8, e.to_string()))
}

unsafe fn slice<'a>(p: *const usize, len: usize) -> Result<&'a [usize], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null("array"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_tensor(out: *mut *mut MdTensor, t: Tensor) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(Box::into_raw(Box::new(MdTensor(t))));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(CString::new(s).expect("library text has no NUL").into_raw());
    Ok(())
}

/// Message for the most recent failure on this thread, or NULL.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn md_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn md_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `t` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn md_tensor_free(t: *mut MdTensor) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Parses `pmat v1` text.
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_tensor_parse(src: *const c_char, out: *mut *mut MdTensor) -> MdStatus {
    run(|| put_tensor(out, parse_pmat(text(src)?)?))
}

/// Canonical `pmat v1` text; free with [`md_string_free`].
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_tensor_serialize(t: *const MdTensor, out: *mut *mut c_char) -> MdStatus {
    run(|| put_string(out, write_pmat(&borrow(t, "tensor")?.0)))
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_tensor_dim(t: *const MdTensor, out: *mut usize) -> MdStatus {
    run(|| put(out, borrow(t, "tensor")?.0.dim()))
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_tensor_extent(t: *const MdTensor, axis: usize, out: *mut usize) -> MdStatus {
    run(|| {
        let t = &borrow(t, "tensor")?.0;
        let n = *t
            .extents()
            .get(axis)
            .ok_or_else(|| Failure(MdStatus::Validation, format!("axis {axis} out of range for dimension {}", t.dim())))?;
        put(out, n)
    })
}

/// Entry at a 0-based multi-index, as a rational literal.
///
/// # Safety
/// `index` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_tensor_entry(
    t: *const MdTensor,
    index: *const usize,
    len: usize,
    out: *mut *mut c_char,
) -> MdStatus {
    run(|| {
        let v = borrow(t, "tensor")?.0.entry_at(slice(index, len)?)?;
        put_string(out, format_literal(v))
    })
}

/// The cube of dimension `d` and order `n` with every entry `1/n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_tensor_uniform(d: usize, n: usize, out: *mut *mut MdTensor) -> MdStatus {
    run(|| put_tensor(out, uniform_j(d, n)?))
}

/// The unit diagonal cube of dimension `d` and order `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_tensor_identity(d: usize, n: usize, out: *mut *mut MdTensor) -> MdStatus {
    run(|| put_tensor(out, identity_diag(d, n)?))
}

unsafe fn binary(
    a: *const MdTensor,
    b: *const MdTensor,
    out: *mut *mut MdTensor,
    op: fn(&Tensor, &Tensor) -> mdmat::Result<Tensor>,
) -> MdStatus {
    run(|| {
        let (a, b) = (borrow(a, "left tensor")?, borrow(b, "right tensor")?);
        put_tensor(out, op(&a.0, &b.0)?)
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_tensor_outer(a: *const MdTensor, b: *const MdTensor, out: *mut *mut MdTensor) -> MdStatus {
    binary(a, b, out, ops::outer)
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_tensor_kronecker(
    a: *const MdTensor,
    b: *const MdTensor,
    out: *mut *mut MdTensor,
) -> MdStatus {
    binary(a, b, out, ops::kronecker)
}

/// Contracts the last axis of `a` with the first axis of `b`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_tensor_dot(a: *const MdTensor, b: *const MdTensor, out: *mut *mut MdTensor) -> MdStatus {
    binary(a, b, out, ops::dot)
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_tensor_circle(a: *const MdTensor, b: *const MdTensor, out: *mut *mut MdTensor) -> MdStatus {
    binary(a, b, out, ops::circle)
}

unsafe fn reduce(
    a: *const MdTensor,
    axes: *const usize,
    len: usize,
    out: *mut *mut MdTensor,
    op: fn(&Tensor, &[AxisSet]) -> mdmat::Result<Tensor>,
) -> MdStatus {
    run(|| {
        let a = borrow(a, "tensor")?;
        let set = AxisSet::new(slice(axes, len)?.to_vec())?;
        put_tensor(out, op(&a.0, &[set])?)
    })
}

/// Sums over the diagonal of the given axes, which must share one extent.
///
/// # Safety
/// `axes` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_tensor_contract(
    a: *const MdTensor,
    axes: *const usize,
    len: usize,
    out: *mut *mut MdTensor,
) -> MdStatus {
    reduce(a, axes, len, out, ops::contract)
}

/// Sums out the given axes.
///
/// # Safety
/// `axes` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_tensor_project(
    a: *const MdTensor,
    axes: *const usize,
    len: usize,
    out: *mut *mut MdTensor,
) -> MdStatus {
    reduce(a, axes, len, out, ops::project)
}

/// Exact permanent as a rational literal.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_tensor_permanent(a: *const MdTensor, out: *mut *mut c_char) -> MdStatus {
    run(|| put_string(out, format_literal(&permanent(&borrow(a, "tensor")?.0)?)))
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_tensor_is_k_stochastic(a: *const MdTensor, k: usize, out: *mut bool) -> MdStatus {
    run(|| put(out, is_k_stochastic(&borrow(a, "tensor")?.0, k)?))
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_tensor_has_positive_diagonal(a: *const MdTensor, out: *mut bool) -> MdStatus {
    run(|| put(out, has_positive_diagonal(&borrow(a, "tensor")?.0)?))
}

/// # Safety
/// `q` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn md_latin_free(q: *mut MdLatin) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Parses `latin v1` text.
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_latin_parse(src: *const c_char, out: *mut *mut MdLatin) -> MdStatus {
    run(|| {
        let q = parse_latin(text(src)?)?;
        put(out, Box::into_raw(Box::new(MdLatin(q))))
    })
}

/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_latin_serialize(q: *const MdLatin, out: *mut *mut c_char) -> MdStatus {
    run(|| put_string(out, write_latin(&borrow(q, "latin")?.0)))
}

/// The (0,1) permutation tensor of `q`.
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_latin_to_tensor(q: *const MdLatin, out: *mut *mut MdTensor) -> MdStatus {
    run(|| put_tensor(out, latin_to_tensor(&borrow(q, "latin")?.0)))
}

/// Number of transversals, in decimal.
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_latin_transversals(q: *const MdLatin, out: *mut *mut c_char) -> MdStatus {
    run(|| put_string(out, transversal_count(&borrow(q, "latin")?.0).to_string()))
}
