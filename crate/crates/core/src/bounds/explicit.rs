//! The truncated smoothed explicit formula
//!
//! ```text
//! ψ_{c,ε}(x) = x − Σ_ρ a_{c,ε}(ρ)(x^ρ − 1)/ρ + C₁ − ½·log(1 − x⁻²) + Θ(8ε|log ε|)
//! ```
//!
//! summed over the table zeros with |γ| ≤ c/ε; the remaining zeros are
//! covered by the tail remainder.

use serde::{Deserialize, Serialize};

use crate::bounds::remainder::rem1_unchecked;
use crate::error::{domain, Error, Result};
use crate::numeric::CompensatedSum;
use crate::specfun::{c1, lambda_norm, logan_ell, KernelParams};
use crate::zeros::ZeroTable;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExplicitFormulaValue {
    pub value: f64,
    pub error_budget: f64,
    /// Σ over conjugate pairs of a(ρ)(x^ρ − 1)/ρ (real part).
    pub zero_sum: f64,
    /// Accumulated imaginary part of the pair sums; zero up to rounding.
    pub imaginary_residue: f64,
    pub zeros_used: usize,
    /// The 8ε|log ε| part of the budget.
    pub smoothing_term: f64,
    /// Tail remainders for x^ρ and for the constant part.
    pub tail_term: f64,
    /// Effect of the per-ordinate precision of the table.
    pub data_term: f64,
}

fn check(x: f64, params: KernelParams, table: &ZeroTable) -> Result<()> {
    let (c, eps) = (params.c, params.eps);
    if !(eps > 0.0 && eps <= 1e-3) {
        return Err(domain(
            "explicit_formula_rhs",
            format!("eps must lie in (0, 1e-3] for a certified budget, got {eps}"),
        ));
    }
    if !(c >= 3.0) {
        return Err(domain("explicit_formula_rhs", format!("c must be at least 3, got {c}")));
    }
    if !(x > 1.0 && x.ln() > 2.0 / eps.ln().abs()) {
        return Err(domain("explicit_formula_rhs", format!("x = {x} too small for ε = {eps}")));
    }
    if params.cutoff() > table.height() {
        return Err(Error::Range(format!(
            "c/ε = {} exceeds the zero table height {}",
            params.cutoff(),
            table.height()
        )));
    }
    Ok(())
}

/// Right-hand side of the explicit formula with its error budget.
pub fn explicit_formula_rhs(
    x: f64,
    params: KernelParams,
    table: &ZeroTable,
) -> Result<ExplicitFormulaValue> {
    check(x, params, table)?;
    let lambda = lambda_norm(params);
    let log_x = x.ln();
    let sqrt_x = x.sqrt();
    let n = table.count_up_to(params.cutoff());
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    let mut data = CompensatedSum::new();
    for &g in &table.ordinates()[..n] {
        let a = logan_ell(params, g) / lambda;
        let (s, co) = (g * log_x).sin_cos();
        // w = x^ρ − 1 for ρ = ½ + iγ and its conjugate
        let (wr, wi) = (sqrt_x * co - 1.0, sqrt_x * s);
        let den = 0.25 + g * g;
        // w/ρ = w·(½ − iγ)/|ρ|²
        let (qr, qi) = ((0.5 * wr + g * wi) / den, (0.5 * wi - g * wr) / den);
        // conjugate zero: conj(w)/conj(ρ) = conj(w/ρ)
        re.add(a * qr);
        re.add(a * qr);
        im.add(a * qi);
        im.add(-a * qi);
        // |∂/∂γ| of the pair term is at most 2[(√x+1)(log x/γ + 2/γ²) + ε(√x+1)/γ]
        data.add(2.0 * (sqrt_x + 1.0) * (log_x / g + 2.0 / (g * g) + params.eps / g));
    }
    let zero_sum = re.value();
    let value = x - zero_sum + c1() - 0.5 * (-(x * x).recip()).ln_1p();
    let smoothing_term = 8.0 * params.eps * params.eps.ln().abs();
    let tail_term = rem1_unchecked(params, x) + rem1_unchecked(params, 1.0);
    let data_term = table.precision() * data.value();
    Ok(ExplicitFormulaValue {
        value,
        error_budget: smoothing_term + tail_term + data_term,
        zero_sum,
        imaginary_residue: im.value(),
        zeros_used: n,
        smoothing_term,
        tail_term,
        data_term,
    })
}

/// Σ_{0 < |γ| ≤ up_to} |a_{c,ε}(ρ)·x^ρ/ρ| over the table (both signs of γ).
pub fn zero_sum_abs(x: f64, params: KernelParams, table: &ZeroTable, up_to: f64) -> Result<f64> {
    if up_to > table.height() {
        return Err(Error::Range(format!(
            "sum up to {up_to} exceeds the zero table height {}",
            table.height()
        )));
    }
    let lambda = lambda_norm(params);
    let sqrt_x = x.sqrt();
    let n = table.count_up_to(up_to);
    let mut acc = CompensatedSum::new();
    for &g in &table.ordinates()[..n] {
        acc.add(2.0 * logan_ell(params, g).abs() / lambda * sqrt_x / (0.25 + g * g).sqrt());
    }
    Ok(acc.value())
}

/// (√x/2π)·log²(√(2c)/(2πε)), the bound for [`zero_sum_abs`] up to √(2c)/ε.
pub fn zero_prefix_bound(x: f64, params: KernelParams) -> f64 {
    let l = ((2.0 * params.c).sqrt() / (2.0 * std::f64::consts::PI * params.eps)).ln();
    x.sqrt() / (2.0 * std::f64::consts::PI) * l * l
}
