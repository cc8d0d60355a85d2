//! C ABI for `sqw-core`.
//!
//! States are opaque `SqwState` handles owned by the caller and released with
//! [`sqw_state_free`]. Every fallible function returns an [`SqwStatus`]; on
//! failure a message is available from [`sqw_last_error_message`] on the same
//! thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sqw_core::linalg::{Complex64, Mat4};
use sqw_core::s3world::{
    self, assemble_s3, concurrence_closed, ie_state, is_pure, measure_update, t_param,
    GainResult, MeasurementAxis, S3Coeffs, TParam,
};
use sqw_core::twoqubit::{concurrence_oracle, validate_density, DensityMatrix};
use sqw_core::Error;

pub const SQW_AXIS_H1: u32 = 1;
pub const SQW_AXIS_H2: u32 = 2;
pub const SQW_AXIS_H3: u32 = 3;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SqwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NonFinite = 3,
    NotHermitian = 4,
    TraceNotOne = 5,
    NotPsd = 6,
    OutsideValidityWindow = 7,
    NormalizationViolated = 8,
    PreconditionViolated = 9,
    Panic = 10,
}

impl From<&Error> for SqwStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NonFinite { .. } => SqwStatus::NonFinite,
            Error::NotHermitian { .. } => SqwStatus::NotHermitian,
            Error::TraceNotOne { .. } => SqwStatus::TraceNotOne,
            Error::NotPsd { .. } => SqwStatus::NotPsd,
            Error::OutsideValidityWindow { .. } => SqwStatus::OutsideValidityWindow,
            Error::NormalizationViolated { .. } => SqwStatus::NormalizationViolated,
            Error::PreconditionViolated(_) => SqwStatus::PreconditionViolated,
        }
    }
}

/// A validated S3-world state.
pub struct SqwState {
    coeffs: S3Coeffs,
    rho: DensityMatrix,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SqwCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Entanglement gain at one pure state. `t` is ±infinity for the point at
/// infinity.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SqwGain {
    pub t: f64,
    pub delta_c: f64,
    pub c_before: f64,
    pub c_after: f64,
}

impl From<GainResult> for SqwGain {
    fn from(g: GainResult) -> Self {
        SqwGain {
            t: match g.t_star {
                TParam::Finite(t) => t,
                TParam::Infinity => f64::INFINITY,
            },
            delta_c: g.delta_c,
            c_before: g.c_before,
            c_after: g.c_after,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

struct Failure(SqwStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(SqwStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SqwStatus::NullPointer, format!("{what} is NULL"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SqwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SqwStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            SqwStatus::Panic
        }
    }
}

fn axis_from(axis: u32) -> Result<MeasurementAxis, Failure> {
    match axis {
        SQW_AXIS_H1 => Ok(MeasurementAxis::H1),
        SQW_AXIS_H2 => Ok(MeasurementAxis::H2),
        SQW_AXIS_H3 => Ok(MeasurementAxis::H3),
        _ => Err(Failure(SqwStatus::InvalidArgument, format!("unknown axis {axis}"))),
    }
}

fn t_from(t: f64) -> Result<TParam, Failure> {
    if t.is_nan() {
        return Err(Failure(SqwStatus::InvalidArgument, "t is NaN".into()));
    }
    Ok(TParam::from(t))
}

fn make_state(coeffs: S3Coeffs) -> Result<SqwState, Failure> {
    let coeffs = S3Coeffs::new(coeffs.a, coeffs.b, coeffs.c, coeffs.d)?;
    let rho = validate_density(assemble_s3(&coeffs))?;
    Ok(SqwState { coeffs, rho })
}

unsafe fn emit<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn emit_state(out: *mut *mut SqwState, state: SqwState) -> Result<(), Failure> {
    emit(out, Box::into_raw(Box::new(state)), "out")
}

unsafe fn state_ref<'a>(s: *const SqwState) -> Result<&'a SqwState, Failure> {
    s.as_ref().ok_or_else(|| null("state"))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sqw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or NULL. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn sqw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Creates the state `a/2 + b·H1 + c·H2 + d·H3`.
///
/// # Safety
/// `out` must be NULL or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn sqw_state_new(a: f64, b: f64, c: f64, d: f64, out: *mut *mut SqwState) -> SqwStatus {
    guard(|| emit_state(out, make_state(S3Coeffs { a, b, c, d })?))
}

/// Creates the pure state with parameter `t`; pass ±INFINITY for the point at
/// infinity.
///
/// # Safety
/// `out` must be NULL or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn sqw_state_from_t(t: f64, out: *mut *mut SqwState) -> SqwStatus {
    guard(|| emit_state(out, make_state(t_param(t_from(t)?))?))
}

/// Creates the irreducible entangled state.
///
/// # Safety
/// `out` must be NULL or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn sqw_state_ie(out: *mut *mut SqwState) -> SqwStatus {
    guard(|| emit_state(out, make_state(ie_state())?))
}

/// Releases a state. NULL is ignored.
///
/// # Safety
/// `state` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sqw_state_free(state: *mut SqwState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// # Safety
/// `state` must be a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqw_state_coeffs(state: *const SqwState, out: *mut SqwCoeffs) -> SqwStatus {
    guard(|| {
        let c = state_ref(state)?.coeffs;
        emit(out, SqwCoeffs { a: c.a, b: c.b, c: c.c, d: c.d }, "out")
    })
}

/// Writes the four eigenvalues in ascending order.
///
/// # Safety
/// `state` must be a live handle; `out` must be NULL or point to four doubles.
#[no_mangle]
pub unsafe extern "C" fn sqw_state_eigenvalues(state: *const SqwState, out: *mut f64) -> SqwStatus {
    guard(|| {
        let values = state_ref(state)?.rho.eigenvalues();
        emit(out.cast::<[f64; 4]>(), values, "out")
    })
}

/// # Safety
/// `state` must be a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqw_state_is_pure(state: *const SqwState, out: *mut bool) -> SqwStatus {
    guard(|| {
        let s = state_ref(state)?;
        emit(out, is_pure(&s.coeffs, 1e-9), "out")
    })
}

/// Closed-form concurrence; needs `a = 1`.
///
/// # Safety
/// `state` must be a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqw_state_concurrence_closed(state: *const SqwState, out: *mut f64) -> SqwStatus {
    guard(|| {
        let c = concurrence_closed(&state_ref(state)?.coeffs)?;
        emit(out, c, "out")
    })
}

/// Wootters concurrence computed from the density matrix.
///
/// # Safety
/// `state` must be a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqw_state_concurrence_oracle(state: *const SqwState, out: *mut f64) -> SqwStatus {
    guard(|| {
        let report = concurrence_oracle(&state_ref(state)?.rho)?;
        emit(out, report.concurrence, "out")
    })
}

/// Non-selective measurement of `axis`; writes a new handle.
///
/// # Safety
/// `state` must be a live handle; `out` must be NULL or valid for writing one
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn sqw_state_measure(state: *const SqwState, axis: u32, out: *mut *mut SqwState) -> SqwStatus {
    guard(|| {
        let after = measure_update(&state_ref(state)?.coeffs, axis_from(axis)?)?;
        emit_state(out, make_state(after)?)
    })
}

/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqw_gain(axis: u32, t: f64, out: *mut SqwGain) -> SqwStatus {
    guard(|| {
        let g = s3world::gain(axis_from(axis)?, t_from(t)?);
        emit(out, g.into(), "out")
    })
}

/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqw_maximize_gain(axis: u32, out: *mut SqwGain) -> SqwStatus {
    guard(|| {
        let g = s3world::maximize_gain(axis_from(axis)?);
        emit(out, g.into(), "out")
    })
}

/// Wootters concurrence of an arbitrary two-qubit density matrix given as
/// row-major real and imaginary parts, 16 entries each.
///
/// # Safety
/// `re` and `im` must be NULL or point to 16 doubles; `out` must be NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn sqw_concurrence_oracle(re: *const f64, im: *const f64, out: *mut f64) -> SqwStatus {
    guard(|| {
        if re.is_null() || im.is_null() {
            return Err(null("matrix"));
        }
        let (re, im) = (&*re.cast::<[f64; 16]>(), &*im.cast::<[f64; 16]>());
        let rows = std::array::from_fn(|i| std::array::from_fn(|j| Complex64::new(re[4 * i + j], im[4 * i + j])));
        let rho = validate_density(Mat4::try_from_rows(rows)?)?;
        emit(out, concurrence_oracle(&rho)?.concurrence, "out")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;

    #[test]
    fn status_mapping_covers_every_error() {
        assert_eq!(SqwStatus::from(&Error::NotPsd { min_eigenvalue: -1.0 }), SqwStatus::NotPsd);
        assert_eq!(
            SqwStatus::from(&Error::PreconditionViolated(String::new())),
            SqwStatus::PreconditionViolated
        );
    }

    #[test]
    fn panics_become_status_codes() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, SqwStatus::Panic);
        let msg = unsafe { CStr::from_ptr(sqw_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "internal panic");
    }
}
