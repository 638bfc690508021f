//! Certified enclosures of the kernel antiderivatives μ_c(α) and ν_c(α).
//!
//! With ε = 1 (the general case follows by scaling), on 0 ≤ α < 1
//!
//! ```text
//! μ_c(α⁺) = ∫_α^1 η_{c,1}(t) dt,      |ν_c(α)| = ∫_α^1 (t − α) η_{c,1}(t) dt.
//! ```
//!
//! Substituting t = 1 − s turns both into integrals of the increasing
//! function f(s) = c·I_0(c√(2s − s²))/(2 sinh c) over [0, 1 − α], so left and
//! right Riemann sums give lower and upper bounds. At α = 0 the value
//! returned for μ is the right limit μ_c(0⁺) = 1/2.

use std::collections::BTreeMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numeric::{integrate, CompensatedSum};
use crate::specfun::{bessel_i_scaled_unchecked, i0_scaled};

/// Lower/upper enclosure of a kernel quantity from `steps` Riemann-sum steps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelBracket {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl KernelBracket {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// Width relative to the upper end.
    pub fn relative_width(&self) -> f64 {
        self.width() / self.hi.max(1e-30)
    }
}

/// Enclosures of μ_c(α⁺) and |ν_c(α)| computed from one set of samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelValues {
    pub c: f64,
    pub alpha: f64,
    pub mu: KernelBracket,
    pub nu: KernelBracket,
}

pub const DEFAULT_REL_TOL: f64 = 1e-4;
pub const INITIAL_STEPS: usize = 256;
pub const MAX_STEPS: usize = 1 << 20;

fn check(op: &'static str, c: f64, alpha: f64, steps: usize) -> Result<()> {
    if !(c >= 3.0) || !c.is_finite() {
        return Err(domain(op, format!("c must be at least 3, got {c}")));
    }
    if !(0.0..1.0).contains(&alpha) {
        return Err(domain(op, format!("alpha must lie in [0, 1), got {alpha}")));
    }
    if steps == 0 {
        return Err(domain(op, "step count must be positive"));
    }
    Ok(())
}

/// Samples f(jh), j = 0..=K, of the increasing integrand, on a grid that can
/// be refined in place.
struct Samples {
    c: f64,
    len: f64,
    values: Vec<f64>,
    // 1/(1 − e^{−2c}); combined with e^{z−c} this is 1/(2 sinh c) up to e^{z}
    inv_den: f64,
}

impl Samples {
    fn new(c: f64, alpha: f64, steps: usize) -> Self {
        let mut s = Samples {
            c,
            len: 1.0 - alpha,
            values: Vec::new(),
            inv_den: 1.0 / -(-2.0 * c).exp_m1(),
        };
        s.values = (0..=steps).map(|j| s.eval(j, steps)).collect();
        s
    }

    /// c·I_0(z)/(2 sinh c) evaluated in scaled form, z = c√(2s − s²).
    #[inline]
    fn eval(&self, j: usize, steps: usize) -> f64 {
        let s = self.len * j as f64 / steps as f64;
        let z = self.c * (s * (2.0 - s)).max(0.0).sqrt();
        self.c * i0_scaled(z) * (z - self.c).exp() * self.inv_den
    }

    fn steps(&self) -> usize {
        self.values.len() - 1
    }

    /// Doubles the step count, evaluating only the new midpoints.
    fn refine(&mut self) {
        let old = self.steps();
        let new = 2 * old;
        let mut values = Vec::with_capacity(new + 1);
        for j in 0..old {
            values.push(self.values[j]);
            values.push(self.eval(2 * j + 1, new));
        }
        values.push(self.values[old]);
        self.values = values;
    }

    fn brackets(&self) -> (KernelBracket, KernelBracket) {
        let k = self.steps();
        let h = self.len / k as f64;
        let f = &self.values;

        let mut mu_lo = CompensatedSum::new();
        let mut mu_hi = CompensatedSum::new();
        let mut nu_lo = CompensatedSum::new();
        let mut nu_hi = CompensatedSum::new();
        for (j, &v) in f.iter().enumerate() {
            if j < k {
                mu_lo.add(v);
            }
            if j >= 1 {
                mu_hi.add(v);
                // Σ_{k'=1}^{K} Σ_{j=1}^{k'} f_j: f_j appears K − j + 1 times
                nu_hi.add(v * (k - j + 1) as f64);
            }
            if j + 1 < k {
                // Σ_{k'=0}^{K−1} Σ_{j<k'} f_j: f_j appears K − 1 − j times
                nu_lo.add(v * (k - 1 - j) as f64);
            }
        }
        let mu = KernelBracket {
            lo: h * mu_lo.value(),
            hi: h * mu_hi.value(),
            steps: k,
        };
        let nu = KernelBracket {
            lo: h * h * nu_lo.value(),
            hi: h * h * nu_hi.value(),
            steps: k,
        };
        (mu, nu)
    }
}

/// Riemann-sum enclosure of μ_c(α⁺) with `steps` subintervals.
pub fn mu_bracket(c: f64, alpha: f64, steps: usize) -> Result<KernelBracket> {
    check("mu_bracket", c, alpha, steps)?;
    Ok(Samples::new(c, alpha, steps).brackets().0)
}

/// Riemann-sum enclosure of |ν_c(α)| with `steps` subintervals.
pub fn nu_bracket(c: f64, alpha: f64, steps: usize) -> Result<KernelBracket> {
    check("nu_bracket", c, alpha, steps)?;
    Ok(Samples::new(c, alpha, steps).brackets().1)
}

/// Both enclosures, doubling the step count from 256 until each relative
/// width is below `rel_tol` or the step count reaches 2²⁰.
pub fn kernel_values(c: f64, alpha: f64, rel_tol: f64) -> Result<KernelValues> {
    check("kernel_values", c, alpha, INITIAL_STEPS)?;
    let mut samples = Samples::new(c, alpha, INITIAL_STEPS);
    loop {
        let (mu, nu) = samples.brackets();
        let done = mu.relative_width() < rel_tol && nu.relative_width() < rel_tol;
        if done || samples.steps() >= MAX_STEPS {
            return Ok(KernelValues { c, alpha, mu, nu });
        }
        samples.refine();
    }
}

/// Adaptive enclosure of μ_c(α⁺).
pub fn mu_bracket_adaptive(c: f64, alpha: f64, rel_tol: f64) -> Result<KernelBracket> {
    check("mu_bracket_adaptive", c, alpha, INITIAL_STEPS)?;
    let mut samples = Samples::new(c, alpha, INITIAL_STEPS);
    loop {
        let (mu, _) = samples.brackets();
        if mu.relative_width() < rel_tol || samples.steps() >= MAX_STEPS {
            return Ok(mu);
        }
        samples.refine();
    }
}

/// Adaptive enclosure of |ν_c(α)|.
pub fn nu_bracket_adaptive(c: f64, alpha: f64, rel_tol: f64) -> Result<KernelBracket> {
    check("nu_bracket_adaptive", c, alpha, INITIAL_STEPS)?;
    let mut samples = Samples::new(c, alpha, INITIAL_STEPS);
    loop {
        let (_, nu) = samples.brackets();
        if nu.relative_width() < rel_tol || samples.steps() >= MAX_STEPS {
            return Ok(nu);
        }
        samples.refine();
    }
}

/// |ν_c(0)| = I_1(c)/(2 sinh c).
pub fn nu0_exact(c: f64) -> f64 {
    // I_1(c)e^{−c} / (1 − e^{−2c})
    bessel_i_scaled_unchecked(1.0, c) / -(-2.0 * c).exp_m1()
}

/// D(c₀) = √(πc₀/2)·I_1(c₀)/sinh(c₀), the lower-bound factor for |ν_c(0)|√(2πc).
pub fn decay_constant(c0: f64) -> f64 {
    (std::f64::consts::PI * c0 / 2.0).sqrt() * 2.0 * nu0_exact(c0)
}

/// Quadrature estimates (not certified) of μ_c(α⁺) and |ν_c(α)|.
///
/// Used to rank parameter candidates cheaply before certification. The
/// substitution t = sin θ removes the square-root edge of η_{c,1} at t = 1.
pub fn kernel_estimate(c: f64, alpha: f64) -> (f64, f64) {
    let inv_den = 1.0 / -(-2.0 * c).exp_m1();
    // η_{c,1}(sin θ)·cos θ
    let weight = |theta: f64| {
        let co = theta.cos().max(0.0);
        let z = c * co;
        c * co * i0_scaled(z) * (z - c).exp() * inv_den
    };
    let lo = alpha.clamp(0.0, 1.0).asin();
    let hi = std::f64::consts::FRAC_PI_2;
    let mu = integrate(weight, lo, hi, 1e-14);
    let nu = integrate(|th: f64| (th.sin() - alpha) * weight(th), lo, hi, 1e-14);
    (mu, nu)
}

/// Memoised certified kernel values keyed by (c, α).
///
/// Safe to share between threads; entries are computed on first use.
#[derive(Debug)]
pub struct KernelCache {
    rel_tol: f64,
    entries: Mutex<BTreeMap<(u64, u64), KernelValues>>,
}

impl Default for KernelCache {
    fn default() -> Self {
        Self::new(DEFAULT_REL_TOL)
    }
}

impl KernelCache {
    pub fn new(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            entries: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn get(&self, c: f64, alpha: f64) -> Result<KernelValues> {
        let key = (c.to_bits(), alpha.to_bits());
        if let Some(v) = self.entries.lock().expect("kernel cache poisoned").get(&key) {
            return Ok(*v);
        }
        let v = kernel_values(c, alpha, self.rel_tol)?;
        self.entries
            .lock()
            .expect("kernel cache poisoned")
            .insert(key, v);
        Ok(v)
    }
}
