//! Bounds for the parts of the zero sum that are not summed explicitly.

use crate::error::{domain, Result};
use crate::specfun::KernelParams;

fn check_rem(op: &'static str, params: KernelParams) -> Result<()> {
    if !(params.eps <= 1e-3) {
        return Err(domain(op, format!("eps must be at most 1e-3, got {}", params.eps)));
    }
    if !(params.c >= 3.0) {
        return Err(domain(op, format!("c must be at least 3, got {}", params.c)));
    }
    Ok(())
}

/// 1/sinh(c) without overflow for large c.
fn inv_sinh(c: f64) -> f64 {
    2.0 * (-c).exp() / -(-2.0 * c).exp_m1()
}

/// 0.16·(x+1)/sinh(c)·e^{0.71√(cε)}·log(3c)·log(c/ε), valid for any x > 0
/// once the kernel preconditions hold.
pub(crate) fn rem1_unchecked(params: KernelParams, x: f64) -> f64 {
    let (c, eps) = (params.c, params.eps);
    0.16 * (x + 1.0) * inv_sinh(c) * (0.71 * (c * eps).sqrt()).exp() * (3.0 * c).ln() * (c / eps).ln()
}

/// Bound on Σ_{|γ| > c/ε} |a_{c,ε}(ρ)·x^ρ/ρ|. Needs no hypothesis on the zeros.
pub fn tail_remainder_rem1(params: KernelParams, x: f64) -> Result<f64> {
    check_rem("tail_remainder_rem1", params)?;
    if !(x > 1.0) {
        return Err(domain("tail_remainder_rem1", format!("x must exceed 1, got {x}")));
    }
    Ok(rem1_unchecked(params, x))
}

/// Bound on Σ_{|γ| > c/ε} |a_{c,ε}(ρ)/ρ|: the x = 1 instance of the
/// remainder, 0.32·e^{0.71√(cε)}/sinh(c)·log(3c)·log(c/ε).
pub fn constant_part_remainder(params: KernelParams) -> Result<f64> {
    check_rem("constant_part_remainder", params)?;
    Ok(rem1_unchecked(params, 1.0))
}

/// Bound on the band a·c/ε < |γ| ≤ c/ε, assuming the zeros there are on
/// the critical line:
/// (1 + 11cε)/(πca²)·log(c/ε)·cosh(c√(1−a²))/sinh(c)·√x.
pub fn band_remainder_rem2(params: KernelParams, a: f64, x: f64) -> Result<f64> {
    let (c, eps) = (params.c, params.eps);
    if !(a > 0.0 && a < 1.0) {
        return Err(domain("band_remainder_rem2", format!("a must lie in (0, 1), got {a}")));
    }
    if !(a * c / eps >= 1e3) {
        return Err(domain(
            "band_remainder_rem2",
            format!("a·c/ε = {} is below 1000", a * c / eps),
        ));
    }
    if !(x > 0.0) {
        return Err(domain("band_remainder_rem2", format!("x must be positive, got {x}")));
    }
    let s = c * ((1.0 - a) * (1.0 + a)).sqrt();
    // cosh(s)/sinh(c) = e^{s−c}(1 + e^{−2s})/(1 − e^{−2c})
    let cosh_over_sinh = (s - c).exp() * (1.0 + (-2.0 * s).exp()) / -(-2.0 * c).exp_m1();
    Ok((1.0 + 11.0 * c * eps) / (std::f64::consts::PI * c * a * a)
        * (c / eps).ln()
        * cosh_over_sinh
        * x.sqrt())
}
