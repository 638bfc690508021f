//! The prime-sum bound A(x, c, ε, α) controlling |ψ − ψ_{c,ε}|.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::kernel::KernelValues;
use crate::specfun::KernelParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrimeSumBound {
    /// A(x, c, ε, α).
    pub a: f64,
    /// The conservative B = εx·e^{−ε}|ν_c(α)|/(2μ_c(α)) used in log B.
    pub b: f64,
}

/// Conservative B from certified brackets: |ν| low over μ high.
pub fn b_parameter(x: f64, eps: f64, kv: &KernelValues) -> f64 {
    eps * x * (-eps).exp() * kv.nu.lo / (2.0 * kv.mu.hi)
}

/// A(x,c,ε,α) = e^{2ε}·log(e^ε x)·[2εx|ν_c(α)|/log B + 2.01ε√x + ½·log log(2x²)].
///
/// Then ψ(e^{−αε}x) ≤ ψ_{c,ε}(x) + A and ψ(e^{αε}x) ≥ ψ_{c,ε}(x) − A.
pub fn prime_sum_bound_a(
    x: f64,
    params: KernelParams,
    alpha: f64,
    kv: &KernelValues,
) -> Result<PrimeSumBound> {
    let eps = params.eps;
    if !(eps < 1e-2) {
        return Err(domain("prime_sum_bound_a", format!("eps must be below 1e-2, got {eps}")));
    }
    if !(x > 100.0) {
        return Err(domain("prime_sum_bound_a", format!("x must exceed 100, got {x}")));
    }
    if !(0.0..1.0).contains(&alpha) {
        return Err(domain("prime_sum_bound_a", format!("alpha must lie in [0, 1), got {alpha}")));
    }
    if kv.c != params.c || kv.alpha != alpha {
        return Err(Error::Invalid(format!(
            "kernel values are for (c={}, α={}), not (c={}, α={alpha})",
            kv.c, kv.alpha, params.c
        )));
    }
    let b = b_parameter(x, eps, kv);
    if !(b > 1.0) {
        return Err(Error::Infeasible(format!(
            "B = {b:.6e} ≤ 1 (x={x}, c={}, ε={eps:e}, α={alpha})",
            params.c
        )));
    }
    let bracket = 2.0 * eps * x * kv.nu.hi / b.ln()
        + 2.01 * eps * x.sqrt()
        + 0.5 * (2.0 * x * x).ln().ln();
    Ok(PrimeSumBound {
        a: (2.0 * eps).exp() * (eps + x.ln()) * bracket,
        b,
    })
}
