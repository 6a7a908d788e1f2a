//! C ABI for `lissajous3`.
//!
//! Every fallible function returns an `L3Status`. On failure a message is
//! stored per thread and can be read with `l3_last_error`. Objects are handed
//! out as opaque pointers and must be released with the matching `_free`.
//! Panics never cross the boundary; they are reported as `L3_STATUS_PANIC`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, c_void, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lissajous3::cubature::integrate;
use lissajous3::extremal::{extract, ExtremalKind, ExtremalSet, InterpolationSystem};
use lissajous3::frequency::{check_property, frequency_triple};
use lissajous3::hyperinterp::{coeffs_from_samples, hyper_coeffs, CoeffSet};
use lissajous3::lattice::{Lattice, Variant};
use lissajous3::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum L3Status {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    Numerical = 3,
    BufferTooSmall = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum L3Variant {
    Gauss = 0,
    Lobatto = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum L3Method {
    Afp = 0,
    Dlp = 1,
}

/// Callback evaluating a function at `(x, y, z)`; `user` is passed through.
pub type L3Function =
    Option<unsafe extern "C" fn(x: f64, y: f64, z: f64, user: *mut c_void) -> f64>;

/// Lattice of a Lissajous curve.
pub struct L3Lattice {
    inner: Lattice,
}

/// Coefficients of a trivariate polynomial in the graded Chebyshev basis.
pub struct L3Coeffs {
    inner: CoeffSet,
}

/// Extremal point set with its factorized interpolation matrix.
pub struct L3Extremal {
    set: ExtremalSet,
    system: InterpolationSystem,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> L3Status {
    match e {
        Error::RankDeficient { .. }
        | Error::Evaluation { .. }
        | Error::SearchLimit { .. }
        | Error::BoundViolation { .. } => L3Status::Numerical,
        _ => L3Status::InvalidArgument,
    }
}

enum Failure {
    Lib(Error),
    Null(&'static str),
    Buffer { need: usize, got: usize },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type FfiResult = Result<(), Failure>;

fn guard<F: FnOnce() -> FfiResult>(f: F) -> L3Status {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => L3Status::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            L3Status::NullPointer
        }
        Ok(Err(Failure::Buffer { need, got })) => {
            set_error(format!("buffer too small: need {need}, got {got}"));
            L3Status::BufferTooSmall
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_error(format!("panic: {msg}"));
            L3Status::Panic
        }
    }
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn in_ref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn out_slice<'a, T>(
    p: *mut T,
    cap: usize,
    need: usize,
    what: &'static str,
) -> Result<&'a mut [T], Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    if cap < need {
        return Err(Failure::Buffer { need, got: cap });
    }
    Ok(std::slice::from_raw_parts_mut(p, need))
}

unsafe fn in_slice<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn variant(v: L3Variant) -> Variant {
    match v {
        L3Variant::Gauss => Variant::Gauss,
        L3Variant::Lobatto => Variant::Lobatto,
    }
}

fn callback(f: L3Function, user: *mut c_void) -> Result<impl Fn([f64; 3]) -> f64, Failure> {
    let f = f.ok_or(Failure::Null("function"))?;
    let user = user as usize;
    Ok(move |x: [f64; 3]| unsafe { f(x[0], x[1], x[2], user as *mut c_void) })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn l3_version() -> *const c_char {
    static VERSION: &CStr =
        match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
            Ok(v) => v,
            Err(_) => panic!("version string"),
        };
    VERSION.as_ptr()
}

/// Message of the last failure on this thread, or NULL. Valid until the next
/// call into the library from the same thread.
#[no_mangle]
pub extern "C" fn l3_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Writes the frequencies `(a, b, c)` of degree `n` to `out[0..3]`.
#[no_mangle]
pub unsafe extern "C" fn l3_frequency_triple(n: u64, out: *mut u64) -> L3Status {
    guard(|| {
        let out = out_slice(out, 3, 3, "out")?;
        out.copy_from_slice(&frequency_triple(n)?.as_array());
        Ok(())
    })
}

/// Sets `*holds` to whether no integer relation of 1-norm at most `budget`
/// annihilates `freqs[0..3]`.
#[no_mangle]
pub unsafe extern "C" fn l3_check_property(
    freqs: *const u64,
    budget: u64,
    holds: *mut bool,
) -> L3Status {
    guard(|| {
        let f = in_slice(freqs, 3, "freqs")?;
        *out_ref(holds, "holds")? = check_property([f[0], f[1], f[2]], budget)?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn l3_lattice_new(
    n: usize,
    v: L3Variant,
    out: *mut *mut L3Lattice,
) -> L3Status {
    guard(|| {
        let out = out_ref(out, "out")?;
        let inner = Lattice::new(n, variant(v))?;
        *out = Box::into_raw(Box::new(L3Lattice { inner }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn l3_lattice_free(lattice: *mut L3Lattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// Number of nodes, 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn l3_lattice_len(lattice: *const L3Lattice) -> usize {
    lattice.as_ref().map_or(0, |l| l.inner.node_count())
}

/// Copies the nodes as `x0 y0 z0 x1 ...` into `out`, which holds `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn l3_lattice_nodes(
    lattice: *const L3Lattice,
    out: *mut f64,
    cap: usize,
) -> L3Status {
    guard(|| {
        let l = &in_ref(lattice, "lattice")?.inner;
        let out = out_slice(out, cap, 3 * l.node_count(), "out")?;
        for (chunk, p) in out.chunks_exact_mut(3).zip(&l.nodes) {
            chunk.copy_from_slice(p);
        }
        Ok(())
    })
}

/// Copies the cubature weights into `out`, which holds `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn l3_lattice_weights(
    lattice: *const L3Lattice,
    out: *mut f64,
    cap: usize,
) -> L3Status {
    guard(|| {
        let l = &in_ref(lattice, "lattice")?.inner;
        out_slice(out, cap, l.node_count(), "out")?.copy_from_slice(&l.weights);
        Ok(())
    })
}

/// Hyperinterpolation coefficients from `len` samples taken at the lattice nodes.
#[no_mangle]
pub unsafe extern "C" fn l3_hyper_from_samples(
    lattice: *const L3Lattice,
    samples: *const f64,
    len: usize,
    out: *mut *mut L3Coeffs,
) -> L3Status {
    guard(|| {
        let l = &in_ref(lattice, "lattice")?.inner;
        let out = out_ref(out, "out")?;
        let inner = coeffs_from_samples(l, in_slice(samples, len, "samples")?)?;
        *out = Box::into_raw(Box::new(L3Coeffs { inner }));
        Ok(())
    })
}

/// Hyperinterpolation coefficients of a callback. The callback may be
/// invoked from several threads at once.
#[no_mangle]
pub unsafe extern "C" fn l3_hyper_from_fn(
    n: usize,
    v: L3Variant,
    f: L3Function,
    user: *mut c_void,
    out: *mut *mut L3Coeffs,
) -> L3Status {
    guard(|| {
        let out = out_ref(out, "out")?;
        let g = callback(f, user)?;
        let inner = hyper_coeffs(g, n, variant(v))?;
        *out = Box::into_raw(Box::new(L3Coeffs { inner }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn l3_coeffs_free(coeffs: *mut L3Coeffs) {
    if !coeffs.is_null() {
        drop(Box::from_raw(coeffs));
    }
}

/// Number of coefficients, 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn l3_coeffs_len(coeffs: *const L3Coeffs) -> usize {
    coeffs.as_ref().map_or(0, |c| c.inner.coeffs.len())
}

/// Copies the coefficients in graded order into `out`.
#[no_mangle]
pub unsafe extern "C" fn l3_coeffs_get(
    coeffs: *const L3Coeffs,
    out: *mut f64,
    cap: usize,
) -> L3Status {
    guard(|| {
        let c = &in_ref(coeffs, "coeffs")?.inner;
        out_slice(out, cap, c.coeffs.len(), "out")?.copy_from_slice(&c.coeffs);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn l3_coeffs_eval(
    coeffs: *const L3Coeffs,
    x: f64,
    y: f64,
    z: f64,
    out: *mut f64,
) -> L3Status {
    guard(|| {
        let c = &in_ref(coeffs, "coeffs")?.inner;
        *out_ref(out, "out")? = c.eval([x, y, z])?;
        Ok(())
    })
}

/// Lattice cubature of a callback against the product Chebyshev measure.
#[no_mangle]
pub unsafe extern "C" fn l3_cubature(
    n: usize,
    v: L3Variant,
    f: L3Function,
    user: *mut c_void,
    out: *mut f64,
) -> L3Status {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = integrate(callback(f, user)?, n, variant(v))?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn l3_extremal_new(
    n: usize,
    v: L3Variant,
    method: L3Method,
    out: *mut *mut L3Extremal,
) -> L3Status {
    guard(|| {
        let out = out_ref(out, "out")?;
        let kind = match method {
            L3Method::Afp => ExtremalKind::Afp,
            L3Method::Dlp => ExtremalKind::Dlp,
        };
        let (_, set) = extract(n, variant(v), kind)?;
        let system = set.system()?;
        *out = Box::into_raw(Box::new(L3Extremal { set, system }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn l3_extremal_free(set: *mut L3Extremal) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Number of points, 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn l3_extremal_len(set: *const L3Extremal) -> usize {
    set.as_ref().map_or(0, |s| s.set.len())
}

/// Copies the 0-based lattice indices of the points into `out`.
#[no_mangle]
pub unsafe extern "C" fn l3_extremal_indices(
    set: *const L3Extremal,
    out: *mut usize,
    cap: usize,
) -> L3Status {
    guard(|| {
        let s = &in_ref(set, "set")?.set;
        out_slice(out, cap, s.len(), "out")?.copy_from_slice(&s.indices);
        Ok(())
    })
}

/// Copies the points as `x0 y0 z0 x1 ...` into `out`.
#[no_mangle]
pub unsafe extern "C" fn l3_extremal_points(
    set: *const L3Extremal,
    out: *mut f64,
    cap: usize,
) -> L3Status {
    guard(|| {
        let s = &in_ref(set, "set")?.set;
        let out = out_slice(out, cap, 3 * s.len(), "out")?;
        for (chunk, p) in out.chunks_exact_mut(3).zip(&s.points) {
            chunk.copy_from_slice(p);
        }
        Ok(())
    })
}

/// Interpolating polynomial through `values` given at the extremal points.
#[no_mangle]
pub unsafe extern "C" fn l3_extremal_interpolate(
    set: *const L3Extremal,
    values: *const f64,
    len: usize,
    out: *mut *mut L3Coeffs,
) -> L3Status {
    guard(|| {
        let s = in_ref(set, "set")?;
        let out = out_ref(out, "out")?;
        let inner = s.system.solve(in_slice(values, len, "values")?)?;
        *out = Box::into_raw(Box::new(L3Coeffs { inner }));
        Ok(())
    })
}
