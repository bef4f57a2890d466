//! C ABI for the exact curve-counting library.
//!
//! Counts are returned as NUL-terminated decimal strings written into
//! caller-provided buffers, since the values outgrow every fixed-width
//! integer type quickly. Every function returns an [`HkStatus`] code; the
//! two-variable series is held behind an opaque handle so bindings can
//! query many coefficients without recomputing it.
//!
//! The generated header lands in `include/hkcount.h` at build time.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, UnwindSafe};

use hkcount::chow::fano::FanoTower;
use hkcount::counts;
use hkcount::qseries::{y_coefficient, QSeries, Rational, YLaurent};

/// Status code of every FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HkStatus {
    /// Success.
    HkOk = 0,
    /// A required pointer argument was NULL.
    HkNullPointer = 1,
    /// An argument was out of range for the operation.
    HkInvalidArgument = 2,
    /// A mathematical invariant failed or the computation errored.
    HkMathError = 3,
    /// The output buffer is too small for the result and its NUL terminator.
    HkBufferTooSmall = 4,
}

/// A static description of a status code.
#[no_mangle]
pub extern "C" fn hk_status_message(status: HkStatus) -> *const c_char {
    let text: &'static CStr = match status {
        HkStatus::HkOk => c"ok",
        HkStatus::HkNullPointer => c"null pointer argument",
        HkStatus::HkInvalidArgument => c"invalid argument",
        HkStatus::HkMathError => c"mathematical invariant failure",
        HkStatus::HkBufferTooSmall => c"output buffer too small",
    };
    text.as_ptr()
}

/// Writes `value` as a NUL-terminated decimal string into `buf`.
fn write_rational(value: &Rational, buf: *mut c_char, buf_len: usize) -> HkStatus {
    if buf.is_null() {
        return HkStatus::HkNullPointer;
    }
    let text = value.to_string();
    if text.len() + 1 > buf_len {
        return HkStatus::HkBufferTooSmall;
    }
    unsafe {
        std::ptr::copy_nonoverlapping(text.as_ptr(), buf as *mut u8, text.len());
        *buf.add(text.len()) = 0;
    }
    HkStatus::HkOk
}

fn guarded(f: impl FnOnce() -> HkStatus + UnwindSafe) -> HkStatus {
    catch_unwind(f).unwrap_or(HkStatus::HkMathError)
}

/// The number of elliptic curves of fixed general j-invariant on a K3
/// surface with `(β,β) = 2h - 2`, as a decimal string. `h` is capped at
/// 4096.
///
/// # Safety
/// `buf` must point to at least `buf_len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn hk_k3_count(h: u64, buf: *mut c_char, buf_len: usize) -> HkStatus {
    let buf = buf as usize;
    guarded(move || {
        let Ok(h) = u32::try_from(h) else {
            return HkStatus::HkInvalidArgument;
        };
        if h > 4096 {
            return HkStatus::HkInvalidArgument;
        }
        match counts::n_k3(h, h as i64 + 2) {
            Ok(value) => write_rational(&value, buf as *mut c_char, buf_len),
            Err(_) => HkStatus::HkMathError,
        }
    })
}

/// Evaluation route for [`hk_k3two_count`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HkMethod {
    /// The two-variable Jacobi-form route, with representative cross-checks.
    HkMethodJacobi = 0,
    /// The one-variable Γ₀(4) route.
    HkMethodGamma0 = 1,
    /// Both routes, which must agree.
    HkMethodBoth = 2,
}

/// The count for K3^\[2\]-type fourfolds at `(β,β) = s/2`, as a decimal
/// string. Squares `s ≡ 1, 2 (mod 4)` carry no curve class and report "0".
///
/// # Safety
/// `buf` must point to at least `buf_len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn hk_k3two_count(
    s: i64,
    method: HkMethod,
    buf: *mut c_char,
    buf_len: usize,
) -> HkStatus {
    let buf = buf as usize;
    guarded(move || {
        if !(-64..=256).contains(&s) {
            return HkStatus::HkInvalidArgument;
        }
        let jacobi = || counts::n_k3two(s, counts::jacobi_order_for(s));
        let gamma0 = || -> Result<Rational, counts::CountsError> {
            if s < 0 || matches!(s.rem_euclid(4), 1 | 2) {
                return Ok(Rational::zero());
            }
            Ok(counts::n_k3two_gamma0(s + 1)?.coefficient(s)?)
        };
        let value = match method {
            HkMethod::HkMethodJacobi => jacobi(),
            HkMethod::HkMethodGamma0 => gamma0(),
            HkMethod::HkMethodBoth => match (jacobi(), gamma0()) {
                (Ok(a), Ok(b)) if a == b => Ok(a),
                (Ok(_), Ok(_)) => return HkStatus::HkMathError,
                (Err(e), _) | (_, Err(e)) => Err(e),
            },
        };
        match value {
            Ok(value) => write_rational(&value, buf as *mut c_char, buf_len),
            Err(_) => HkStatus::HkMathError,
        }
    })
}

/// The genus of the curve of cubic cones in the Fano variety of lines of a
/// general cubic fourfold (expected: 631).
///
/// # Safety
/// `out` must point to a writable `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn hk_fano_genus(out: *mut i64) -> HkStatus {
    if out.is_null() {
        return HkStatus::HkNullPointer;
    }
    let out = out as usize;
    guarded(move || {
        let Ok(tower) = FanoTower::build() else {
            return HkStatus::HkMathError;
        };
        match tower.genus() {
            Ok((_, genus)) => {
                unsafe { *(out as *mut i64) = genus };
                HkStatus::HkOk
            }
            Err(_) => HkStatus::HkMathError,
        }
    })
}

/// The degree of the map from that curve to the j-line (expected: 3780).
/// With `via_euler` the singular-cubics divisor is recomputed by the
/// Euler-class pushforward and both routes must agree.
///
/// # Safety
/// `out` must point to a writable `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn hk_fano_j_degree(via_euler: bool, out: *mut i64) -> HkStatus {
    if out.is_null() {
        return HkStatus::HkNullPointer;
    }
    let out = out as usize;
    guarded(
        move || match hkcount::chow::fano::sigma_j_degree(via_euler) {
            Ok(value) => match value.to_integer() {
                Some(v) => {
                    let Ok(v) = i64::try_from(&v) else {
                        return HkStatus::HkMathError;
                    };
                    unsafe { *(out as *mut i64) = v };
                    HkStatus::HkOk
                }
                None => HkStatus::HkMathError,
            },
            Err(_) => HkStatus::HkMathError,
        },
    )
}

/// Opaque handle to the two-variable K3^\[2\] counting series
/// `Σ c(n,k) q^n y^k`.
pub struct HkJacobiSeries {
    series: QSeries<YLaurent>,
}

/// Computes the series to the given exclusive q-order. Returns NULL when
/// `qorder` is out of range. Free with [`hk_jacobi_series_free`].
#[no_mangle]
pub extern "C" fn hk_jacobi_series_new(qorder: i64) -> *mut HkJacobiSeries {
    if !(1..=64).contains(&qorder) {
        return std::ptr::null_mut();
    }
    match catch_unwind(move || counts::n_k3two_jacobi(qorder)) {
        Ok(series) => Box::into_raw(Box::new(HkJacobiSeries { series })),
        Err(_) => std::ptr::null_mut(),
    }
}

/// The exclusive q-order of the handle, or -1 for NULL.
///
/// # Safety
/// `series` must be NULL or a pointer from [`hk_jacobi_series_new`].
#[no_mangle]
pub unsafe extern "C" fn hk_jacobi_series_order(series: *const HkJacobiSeries) -> i64 {
    if series.is_null() {
        return -1;
    }
    unsafe { (*series).series.order() }
}

/// The coefficient of `q^n y^k` as a decimal string.
///
/// # Safety
/// `series` must come from [`hk_jacobi_series_new`]; `buf` must point to at
/// least `buf_len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn hk_jacobi_series_coefficient(
    series: *const HkJacobiSeries,
    n: i64,
    k: i64,
    buf: *mut c_char,
    buf_len: usize,
) -> HkStatus {
    if series.is_null() {
        return HkStatus::HkNullPointer;
    }
    let series = unsafe { &(*series).series };
    match y_coefficient(series, n, k) {
        Ok(value) => write_rational(&value, buf, buf_len),
        Err(_) => HkStatus::HkInvalidArgument,
    }
}

/// Releases a series handle; NULL is a no-op.
///
/// # Safety
/// `series` must be NULL or a pointer from [`hk_jacobi_series_new`] that has
/// not been freed already.
#[no_mangle]
pub unsafe extern "C" fn hk_jacobi_series_free(series: *mut HkJacobiSeries) {
    if !series.is_null() {
        drop(unsafe { Box::from_raw(series) });
    }
}
