//! C ABI over the primebounds engine.
//!
//! Every function returns a [`PbStatus`]; results go through out-pointers.
//! On failure, [`pb_last_error_message`] describes the most recent error on
//! the calling thread. Tables and sieves are opaque handles that must be
//! released with their `_free` functions.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::OnceLock;

use primebounds::bounds::{
    chebyshev_delta0, optimize_params, schoenfeld_threshold, schoenfeld_verify, BoundCertificate,
    CertificateOptions, ChebyshevBoundParams, SearchGrid, VerifyOptions,
};
use primebounds::kernel::KernelCache;
use primebounds::primes::{PrimePowerSieve, StepKind};
use primebounds::specfun::{log_integral, logan_ell, KernelParams};
use primebounds::zeros::ZeroTable;
use primebounds::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Parse = 3,
    InvalidData = 4,
    Infeasible = 5,
    Range = 6,
    Resource = 7,
    Io = 8,
    Utf8 = 9,
    Panic = 10,
}

/// Step functions for [`pb_sieve_eval`] and the [`pb_verify`] mask.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbStepKind {
    Psi = 1,
    Theta = 2,
    Pi = 4,
    PiStar = 8,
}

impl From<PbStepKind> for StepKind {
    fn from(k: PbStepKind) -> Self {
        match k {
            PbStepKind::Psi => StepKind::Psi,
            PbStepKind::Theta => StepKind::Theta,
            PbStepKind::Pi => StepKind::Pi,
            PbStepKind::PiStar => StepKind::PiStar,
        }
    }
}

/// Opaque zero-ordinate table.
pub struct PbZeroTable(ZeroTable);

/// Opaque prime-power sieve.
pub struct PbSieve(PrimePowerSieve);

/// Result of a Chebyshev-type bound: |ψ(x) − x| ≤ delta0·x for x ≥ valid_from.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PbCertificate {
    pub log_x0: f64,
    pub c: f64,
    pub eps: f64,
    pub alpha: f64,
    pub t: f64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub shift: f64,
    pub delta0: f64,
    pub log_valid_from: f64,
    /// RH must hold up to this height.
    pub rh_height_required: f64,
    pub zero_data_height_used: f64,
    pub tail_bound_used: f64,
}

impl From<&BoundCertificate> for PbCertificate {
    fn from(c: &BoundCertificate) -> Self {
        Self {
            log_x0: c.log_x0,
            c: c.c,
            eps: c.eps,
            alpha: c.alpha,
            t: c.t,
            e1: c.e1,
            e2: c.e2,
            e3: c.e3,
            shift: c.shift,
            delta0: c.delta0,
            log_valid_from: c.log_valid_from,
            rh_height_required: c.rh_height_required,
            zero_data_height_used: c.zero_data_height_used,
            tail_bound_used: c.tail_bound_used,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PbStatus {
    match e {
        Error::Domain { .. } => PbStatus::Domain,
        Error::Parse { .. } => PbStatus::Parse,
        Error::NotAscending { .. } | Error::EmptyInput | Error::Invalid(_) => PbStatus::InvalidData,
        Error::Infeasible(_) => PbStatus::Infeasible,
        Error::Range(_) => PbStatus::Range,
        Error::Resource(_) => PbStatus::Resource,
        Error::Io(_) => PbStatus::Io,
    }
}

struct Failure(PbStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(PbStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status plus message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            PbStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            PbStatus::Panic
        }
    }
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

fn kernel_cache() -> &'static KernelCache {
    static CACHE: OnceLock<KernelCache> = OnceLock::new();
    CACHE.get_or_init(KernelCache::default)
}

/// Message for the last failed call on this thread ("" after a success).
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn pb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Loads a zero table (text or binary) from `path`.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_zero_table_load(path: *const c_char, out: *mut *mut PbZeroTable) -> PbStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        if path.is_null() {
            return Err(null("path"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| Failure(PbStatus::Utf8, "path is not UTF-8".into()))?;
        let table = ZeroTable::load_path(path)?;
        *out = Box::into_raw(Box::new(PbZeroTable(table)));
        Ok(())
    })
}

/// Builds a table from `len` ascending ordinates, complete up to `height`.
///
/// # Safety
/// `ordinates` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_zero_table_from_ordinates(
    ordinates: *const f64,
    len: usize,
    height: f64,
    out: *mut *mut PbZeroTable,
) -> PbStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        if ordinates.is_null() {
            return Err(null("ordinates"));
        }
        let ords = std::slice::from_raw_parts(ordinates, len).to_vec();
        let table = ZeroTable::new(ords, Some(height), None, "ffi")?;
        *out = Box::into_raw(Box::new(PbZeroTable(table)));
        Ok(())
    })
}

/// # Safety
/// `table` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn pb_zero_table_free(table: *mut PbZeroTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// # Safety
/// `table` must be a live handle; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_zero_table_info(
    table: *const PbZeroTable,
    count: *mut usize,
    height: *mut f64,
) -> PbStatus {
    guard(|| {
        let t = &table.as_ref().ok_or_else(|| null("table"))?.0;
        *out_ref(count, "count")? = t.len();
        *out_ref(height, "height")? = t.height();
        Ok(())
    })
}

/// Sieves prime powers up to `limit`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_sieve_new(limit: u64, out: *mut *mut PbSieve) -> PbStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let sieve = PrimePowerSieve::new(limit)?;
        *out = Box::into_raw(Box::new(PbSieve(sieve)));
        Ok(())
    })
}

/// # Safety
/// `sieve` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn pb_sieve_free(sieve: *mut PbSieve) {
    if !sieve.is_null() {
        drop(Box::from_raw(sieve));
    }
}

/// Value of ψ, θ, π or π* at x (half the jump at a prime power).
///
/// # Safety
/// `sieve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_sieve_eval(
    sieve: *const PbSieve,
    kind: PbStepKind,
    x: f64,
    out: *mut f64,
) -> PbStatus {
    guard(|| {
        let s = &sieve.as_ref().ok_or_else(|| null("sieve"))?.0;
        let out = out_ref(out, "out")?;
        *out = s.eval(kind.into(), x)?.value;
        Ok(())
    })
}

/// Scans [lo, hi] for violations of the Schoenfeld-type inequalities of the
/// functions in `which_mask` (an OR of [`PbStepKind`] values), including the
/// strong and auxiliary forms.
///
/// # Safety
/// `sieve` must be a live handle; `violations` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_verify(
    sieve: *const PbSieve,
    lo: f64,
    hi: f64,
    which_mask: u32,
    violations: *mut usize,
) -> PbStatus {
    guard(|| {
        let s = &sieve.as_ref().ok_or_else(|| null("sieve"))?.0;
        let out = out_ref(violations, "violations")?;
        let which: Vec<StepKind> = [PbStepKind::Psi, PbStepKind::Theta, PbStepKind::Pi, PbStepKind::PiStar]
            .into_iter()
            .filter(|&k| which_mask & k as u32 != 0)
            .map(StepKind::from)
            .collect();
        if which.is_empty() || which_mask & !0xF != 0 {
            return Err(Failure(PbStatus::Domain, format!("invalid function mask {which_mask:#x}")));
        }
        *out = schoenfeld_verify(lo, hi, &which, s, VerifyOptions::default())?.violation_count;
        Ok(())
    })
}

/// Largest x with 4.92·√(x/log x) ≤ t.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_schoenfeld_threshold(t: f64, out: *mut f64) -> PbStatus {
    guard(|| {
        *out_ref(out, "out")? = schoenfeld_threshold(t)?;
        Ok(())
    })
}

/// li(x) for x > 1.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_log_integral(x: f64, out: *mut f64) -> PbStatus {
    guard(|| {
        *out_ref(out, "out")? = log_integral(x)?;
        Ok(())
    })
}

/// The Logan kernel ℓ_{c,ε}(ξ).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_logan_ell(c: f64, eps: f64, xi: f64, out: *mut f64) -> PbStatus {
    guard(|| {
        let p = KernelParams::new(c, eps)?;
        *out_ref(out, "out")? = logan_ell(p, xi);
        Ok(())
    })
}

/// Bound for fixed (c, α) with ε = c/t, valid from e^{log_valid_from}.
/// `table` may be null, in which case the whole zero sum is bounded analytically.
///
/// # Safety
/// `table` must be null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_chebyshev_delta0(
    table: *const PbZeroTable,
    log_valid_from: f64,
    c: f64,
    alpha: f64,
    t: f64,
    out: *mut PbCertificate,
) -> PbStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let table = table.as_ref().map(|t| &t.0);
        let p = ChebyshevBoundParams::for_threshold(log_valid_from, c, alpha, t)?;
        let kv = kernel_cache().get(c, alpha)?;
        *out = PbCertificate::from(&chebyshev_delta0(&p, table, &kv)?);
        Ok(())
    })
}

/// Best certified bound over the default (c, α) grid.
///
/// # Safety
/// `table` must be null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_optimize(
    table: *const PbZeroTable,
    log_valid_from: f64,
    t: f64,
    out: *mut PbCertificate,
) -> PbStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let table = table.as_ref().map(|t| &t.0);
        let (_, cert) = optimize_params(
            log_valid_from,
            t,
            table,
            kernel_cache(),
            &SearchGrid::default(),
            &CertificateOptions::default(),
        )?;
        *out = PbCertificate::from(&cert);
        Ok(())
    })
}
