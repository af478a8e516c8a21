//! C interface over the section and fat-point computations.
//!
//! A surface is built once with [`atiyah_surface_new`] and released with
//! [`atiyah_surface_free`]. Every other call returns an [`AtiyahStatus`] and
//! writes its result through an out-pointer; on failure the message is kept
//! per thread and read with [`atiyah_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use atiyah::atiyah::AtiyahSurface;
use atiyah::curve::{CurveSpec, WeierstrassCurve};
use atiyah::fat::{h0_fat, lambda, lambda_with_cap, FatPoint, FatSample, LambdaOutcome};
use atiyah::field::{make_extension_field, Field, FiniteField, Rationals};
use atiyah::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtiyahStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// The field cannot be built, or the request needs a finite field.
    Unsupported = 3,
    /// The computation ran but could not certify its answer.
    Computation = 4,
    /// The lambda search reached its cap.
    CapReached = 5,
    Panic = 6,
}

enum Inner {
    Rational(AtiyahSurface<Rationals>),
    Finite(AtiyahSurface<FiniteField>),
}

/// Opaque handle to a ruled surface over a fixed base field.
pub struct AtiyahSurfaceHandle {
    inner: Inner,
}

macro_rules! with_surface {
    ($h:expr, |$a:ident| $body:expr) => {
        match &$h.inner {
            Inner::Rational($a) => $body,
            Inner::Finite($a) => $body,
        }
    };
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> AtiyahStatus {
    match e {
        Error::NotPrime(_) | Error::DegreeOutOfRange(_) | Error::FieldTooLarge { .. } | Error::EnumerationTooLarge(_) => {
            AtiyahStatus::Unsupported
        }
        Error::Parse(_)
        | Error::BadDenominator(_)
        | Error::SingularCurve
        | Error::NotOnCurve
        | Error::ChartPoint(_)
        | Error::Precondition(_)
        | Error::Torsion(_)
        | Error::Config(_) => AtiyahStatus::InvalidArgument,
        _ => AtiyahStatus::Computation,
    }
}

struct Failure(AtiyahStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> AtiyahStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            AtiyahStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            AtiyahStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(AtiyahStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(AtiyahStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(h: *const AtiyahSurfaceHandle) -> Result<&'a AtiyahSurfaceHandle, Failure> {
    h.as_ref().ok_or_else(|| null("surface"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn build<F: Field>(field: F, coeffs: &str, q: Option<(&str, &str)>) -> Result<AtiyahSurface<F>, Failure> {
    let a: [String; 5] = coeffs
        .split(',')
        .map(|s| s.trim().to_string())
        .collect::<Vec<_>>()
        .try_into()
        .map_err(|_| Failure(AtiyahStatus::InvalidArgument, "expected five comma-separated coefficients".into()))?;
    let curve = WeierstrassCurve::from_spec(field, &CurveSpec { a })?;
    let q = match q {
        Some((x, y)) => curve.parse_point(x, y)?,
        None => curve
            .first_point_avoiding(&[])
            .ok_or_else(|| Failure(AtiyahStatus::InvalidArgument, "no affine point found for q".into()))?,
    };
    Ok(AtiyahSurface::new(curve, q, None)?)
}

fn sample<F: Field>(a: &AtiyahSurface<F>, x: &str, y: &str, w0: &str) -> Result<FatSample<F::Elem>, Failure> {
    Ok(FatSample { base: a.curve().parse_point(x, y)?, w0: a.field().parse(w0)? })
}

/// Builds the surface over `F_{p^k}`, or over the rationals when `p` is 0.
///
/// `coeffs` holds `"a1,a2,a3,a4,a6"`. The marked point is `(qx, qy)`; pass
/// two null pointers to take the first affine point found. On success
/// `*out` owns a handle for [`atiyah_surface_free`].
///
/// # Safety
/// String arguments must be null or valid NUL-terminated strings, and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn atiyah_surface_new(
    coeffs: *const c_char,
    p: u64,
    k: u32,
    qx: *const c_char,
    qy: *const c_char,
    out: *mut *mut AtiyahSurfaceHandle,
) -> AtiyahStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let coeffs = text(coeffs, "coefficients")?;
        let q = match (qx.is_null(), qy.is_null()) {
            (true, true) => None,
            _ => Some((text(qx, "qx")?, text(qy, "qy")?)),
        };
        let inner = if p == 0 {
            Inner::Rational(build(Rationals, coeffs, q)?)
        } else {
            Inner::Finite(build(make_extension_field(p, k)?, coeffs, q)?)
        };
        write(out, Box::into_raw(Box::new(AtiyahSurfaceHandle { inner })))
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `h` must come from [`atiyah_surface_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn atiyah_surface_free(h: *mut AtiyahSurfaceHandle) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Characteristic of the base field.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn atiyah_surface_characteristic(h: *const AtiyahSurfaceHandle, out: *mut u64) -> AtiyahStatus {
    guard(|| {
        let h = handle(h)?;
        write(out, with_surface!(h, |a| a.field().characteristic()))
    })
}

/// Number of points of the curve, including infinity. Finite fields only.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn atiyah_group_order(h: *const AtiyahSurfaceHandle, out: *mut u64) -> AtiyahStatus {
    guard(|| match &handle(h)?.inner {
        Inner::Rational(_) => Err(Failure(AtiyahStatus::Unsupported, "group order needs a finite field".into())),
        Inner::Finite(a) => write(out, a.curve().points()?.len() as u64),
    })
}

/// Dimension of the sections of `O(n E_inf)`.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn atiyah_h0_untwisted(h: *const AtiyahSurfaceHandle, n: usize, out: *mut usize) -> AtiyahStatus {
    guard(|| {
        let h = handle(h)?;
        write(out, with_surface!(h, |a| a.h0_ne_dim(n))?)
    })
}

/// Dimension of the sections of `O(l E_inf + f_q)`.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn atiyah_h0_twisted(h: *const AtiyahSurfaceHandle, l: usize, out: *mut usize) -> AtiyahStatus {
    guard(|| {
        let h = handle(h)?;
        write(out, with_surface!(h, |a| a.h0_fq_le_dim(l))?)
    })
}

/// Dimension of the twisted sections at level `l` vanishing to order `m`
/// at the point over `(x, y)` with fiber coordinate `w0`.
///
/// # Safety
/// `h` must be a live handle, the strings valid, and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn atiyah_h0_fat(
    h: *const AtiyahSurfaceHandle,
    l: usize,
    x: *const c_char,
    y: *const c_char,
    w0: *const c_char,
    m: usize,
    out: *mut usize,
) -> AtiyahStatus {
    guard(|| {
        let h = handle(h)?;
        let (x, y, w0) = (text(x, "x")?, text(y, "y")?, text(w0, "w0")?);
        let dim = with_surface!(h, |a| {
            let s = sample(a, x, y, w0)?;
            h0_fat(a, l, &[FatPoint::new(&s, m)])?
        });
        write(out, dim)
    })
}

/// Least level carrying a curve of multiplicity at least `m` at the given
/// point, searching up to `cap` (0 picks the default cap).
///
/// Returns [`AtiyahStatus::CapReached`] when no level up to the cap works.
///
/// # Safety
/// `h` must be a live handle, the strings valid, and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn atiyah_lambda(
    h: *const AtiyahSurfaceHandle,
    x: *const c_char,
    y: *const c_char,
    w0: *const c_char,
    m: usize,
    cap: usize,
    out: *mut usize,
) -> AtiyahStatus {
    guard(|| {
        let h = handle(h)?;
        let (x, y, w0) = (text(x, "x")?, text(y, "y")?, text(w0, "w0")?);
        let found = with_surface!(h, |a| {
            let s = sample(a, x, y, w0)?;
            let outcome = if cap == 0 { lambda(a, m, &s)? } else { lambda_with_cap(a, m, &s, cap)? };
            match outcome {
                LambdaOutcome::Found(rec) => Ok(rec.lambda),
                LambdaOutcome::ExceedsBound { cap, .. } => Err(cap),
            }
        });
        match found {
            Ok(v) => write(out, v),
            Err(cap) => Err(Failure(AtiyahStatus::CapReached, format!("no curve of multiplicity {m} up to level {cap}"))),
        }
    })
}

/// Message of the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn atiyah_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn atiyah_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
