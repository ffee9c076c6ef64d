//! C interface to the twisted coproduct, antipode and verification suites.
//!
//! Every function returns a [`WtStatus`]. On any status other than
//! `WT_STATUS_OK` the message for the calling thread is available from
//! [`wt_last_error`]. Strings handed out by the library are released with
//! [`wt_string_free`], contexts with [`wt_context_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use witt_twist::cli::grammar::{format_element, format_tensor};
use witt_twist::liealg::LieAlgebra;
use witt_twist::ring::{is_prime, PrimeField, PrimeFieldElem, RationalField, Ring, TPolyRing};
use witt_twist::twist::{Quantized, Setting};
use witt_twist::uea::Uea;
use witt_twist::verify::{run_suite, Config, Suite};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Computation = 3,
    CheckFailed = 4,
    Panic = 5,
}

enum Inner {
    Modular(Quantized<TPolyRing<PrimeField>>),
    Integral(Quantized<TPolyRing<RationalField>>),
}

/// A twisted algebra: restricted `u_{t,q}(W(n;1))` or `U(W+)` over a
/// truncated series ring.
pub struct WtContext {
    inner: Inner,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("no interior nul"));
}

struct Failure(WtStatus, String);

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(WtStatus::InvalidArgument, msg.into())
}

fn computation(e: impl std::fmt::Display) -> Failure {
    Failure(WtStatus::Computation, e.to_string())
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> WtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            WtStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            WtStatus::Panic
        }
    }
}

unsafe fn slice<'a, T>(ptr: *const T, len: usize) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(Failure(WtStatus::NullPointer, "null array".into()));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

fn eta_vec(eta: &[u32], n: usize) -> Result<Vec<usize>, Failure> {
    let eta: Vec<usize> = eta.iter().map(|&k| k as usize).collect();
    if eta.is_empty() || eta.iter().any(|&k| k == 0 || k > n) || eta.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid(format!("eta must be a strictly increasing list in 1..={n}")));
    }
    Ok(eta)
}

fn check_prime(p: u64) -> Result<(), Failure> {
    if p < 3 || !is_prime(p) {
        return Err(invalid(format!("p must be a prime at least 3, got {p}")));
    }
    Ok(())
}

fn hand_out(text: String, out: *mut *mut c_char) -> Result<(), Failure> {
    let s = CString::new(text).map_err(computation)?;
    unsafe { *out = s.into_raw() };
    Ok(())
}

fn store(ctx: WtContext, out: *mut *mut WtContext) {
    unsafe { *out = Box::into_raw(Box::new(ctx)) };
}

/// Restricted `u_{t,q}(W(n;1))` with the twist in the directions `eta`
/// (1-based, strictly increasing).
///
/// # Safety
/// `eta` must point to `eta_len` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wt_context_modular(
    p: u64,
    n: u32,
    eta: *const u32,
    eta_len: usize,
    q: u64,
    out: *mut *mut WtContext,
) -> WtStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(WtStatus::NullPointer, "null output".into()));
        }
        check_prime(p)?;
        if q >= p {
            return Err(invalid(format!("q must be a residue below {p}")));
        }
        let eta = eta_vec(slice(eta, eta_len)?, n as usize)?;
        let field = PrimeField::new(p).map_err(computation)?;
        let ring = TPolyRing::quotient(field, PrimeFieldElem(q)).map_err(computation)?;
        let lie = LieAlgebra::jacobson_witt(p, n as usize).map_err(|e| invalid(e.to_string()))?;
        let u = Uea::restricted(lie, ring).map_err(computation)?;
        let qz = Quantized::new(u, Setting::Modular { eta }).map_err(computation)?;
        store(WtContext { inner: Inner::Modular(qz) }, out);
        Ok(())
    })
}

/// `U(W+(n))` over `Q[t]/(t^cap)` with the product of basic twists.
///
/// # Safety
/// `eta` must point to `eta_len` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wt_context_integral(
    n: u32,
    eta: *const u32,
    eta_len: usize,
    cap: u32,
    out: *mut *mut WtContext,
) -> WtStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(WtStatus::NullPointer, "null output".into()));
        }
        let eta = eta_vec(slice(eta, eta_len)?, n as usize)?;
        let ring = TPolyRing::series(RationalField, cap as usize).map_err(|e| invalid(e.to_string()))?;
        let lie = LieAlgebra::wplus(n as usize).map_err(|e| invalid(e.to_string()))?;
        let u = Uea::free(lie, ring).map_err(computation)?;
        let qz = Quantized::new(u, Setting::Basic { eta }).map_err(computation)?;
        store(WtContext { inner: Inner::Integral(qz) }, out);
        Ok(())
    })
}

/// # Safety
/// `ctx` must be null or come from a `wt_context_*` constructor, and is not
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wt_context_free(ctx: *mut WtContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

#[derive(Clone, Copy)]
enum Image {
    Coproduct,
    Antipode,
}

fn image_text<R: Ring>(qz: &Quantized<R>, alpha: &[i64], i: usize, image: Image) -> Result<String, Failure> {
    let u: &Arc<Uea<R>> = qz.uea();
    if alpha.len() != u.lie().n() {
        return Err(invalid(format!("alpha needs {} entries", u.lie().n())));
    }
    let x = u.basis(alpha, i).map_err(|e| invalid(e.to_string()))?;
    Ok(match image {
        Image::Coproduct => format_tensor(&qz.delta(&x).map_err(computation)?),
        Image::Antipode => format_element(&qz.antipode(&x).map_err(computation)?),
    })
}

unsafe fn basis_image(
    ctx: *const WtContext,
    alpha: *const i64,
    alpha_len: usize,
    i: u32,
    out: *mut *mut c_char,
    image: Image,
) -> WtStatus {
    guard(|| {
        if ctx.is_null() || out.is_null() {
            return Err(Failure(WtStatus::NullPointer, "null context or output".into()));
        }
        let alpha = slice(alpha, alpha_len)?;
        let text = match &(*ctx).inner {
            Inner::Modular(qz) => image_text(qz, alpha, i as usize, image)?,
            Inner::Integral(qz) => image_text(qz, alpha, i as usize, image)?,
        };
        hand_out(text, out)
    })
}

/// Coproduct of the basis symbol `alpha`, `i`, rendered in the element grammar.
///
/// # Safety
/// `ctx` must be a live context, `alpha` must point to `alpha_len` values and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wt_delta(
    ctx: *const WtContext,
    alpha: *const i64,
    alpha_len: usize,
    i: u32,
    out: *mut *mut c_char,
) -> WtStatus {
    basis_image(ctx, alpha, alpha_len, i, out, Image::Coproduct)
}

/// Antipode of the basis symbol `alpha`, `i`, rendered in the element grammar.
///
/// # Safety
/// As for [`wt_delta`].
#[no_mangle]
pub unsafe extern "C" fn wt_antipode(
    ctx: *const WtContext,
    alpha: *const i64,
    alpha_len: usize,
    i: u32,
    out: *mut *mut c_char,
) -> WtStatus {
    basis_image(ctx, alpha, alpha_len, i, out, Image::Antipode)
}

/// Runs the named suite on the modular configuration and writes the JSON
/// report to `out_json` (when not null). Returns `WT_STATUS_CHECK_FAILED`
/// when some check fails.
///
/// # Safety
/// `suite` must be a nul-terminated string, `eta` must point to `eta_len`
/// values and `out_json` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn wt_verify_modular(
    p: u64,
    n: u32,
    eta: *const u32,
    eta_len: usize,
    q: u64,
    suite: *const c_char,
    seed: u64,
    out_json: *mut *mut c_char,
) -> WtStatus {
    let mut passed = true;
    let status = guard(|| {
        if suite.is_null() {
            return Err(Failure(WtStatus::NullPointer, "null suite".into()));
        }
        check_prime(p)?;
        if q >= p {
            return Err(invalid(format!("q must be a residue below {p}")));
        }
        let name = CStr::from_ptr(suite).to_str().map_err(|_| invalid("suite is not UTF-8"))?;
        let suite: Suite = name.parse().map_err(invalid)?;
        let eta = eta_vec(slice(eta, eta_len)?, n as usize)?;
        let config = Config::Modular {
            p,
            n: n as usize,
            eta,
            q,
        };
        let report = run_suite(suite, &config, seed);
        passed = report.passed();
        if !out_json.is_null() {
            hand_out(report.to_json(), out_json)?;
        }
        Ok(())
    });
    if status == WtStatus::Ok && !passed {
        set_error("some checks failed");
        return WtStatus::CheckFailed;
    }
    status
}

/// Message for the last failing call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn wt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn wt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
