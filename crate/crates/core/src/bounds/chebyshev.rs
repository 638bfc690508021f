//! Chebyshev-type certificates |ψ(x) − x| ≤ δ₀·x for x ≥ e^{αε}x₀, and the
//! grid search that picks (c, α) for a given threshold and RH height.
//!
//! x₀ is carried through its logarithm so that thresholds far beyond the
//! binary64 range (e^{1000} and up) can still be certified.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::kernel::{kernel_estimate, KernelBracket, KernelCache, KernelValues};
use crate::specfun::KernelParams;
use crate::zeros::{certified_weighted_sum, WeightedZeroSum, ZeroTable, DEFAULT_TAIL_GRID};
use crate::CERTIFIED_SLACK;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChebyshevBoundParams {
    /// x₀; +∞ when beyond the binary64 range (see `log_x0`).
    pub x0: f64,
    pub log_x0: f64,
    pub c: f64,
    pub eps: f64,
    pub alpha: f64,
    /// Height up to which the Riemann hypothesis is assumed.
    #[serde(rename = "T")]
    pub t: f64,
}

impl ChebyshevBoundParams {
    pub fn new(x0: f64, c: f64, eps: f64, alpha: f64, t: f64) -> Result<Self> {
        if !(x0 > 0.0) {
            return Err(domain("ChebyshevBoundParams", format!("x0 must be positive, got {x0}")));
        }
        Self::from_log(x0.ln(), c, eps, alpha, t)
    }

    pub fn from_log(log_x0: f64, c: f64, eps: f64, alpha: f64, t: f64) -> Result<Self> {
        let op = "ChebyshevBoundParams";
        if !(log_x0 >= 100f64.ln() - 1e-12) {
            return Err(domain(op, format!("x0 must be at least 100, got e^{log_x0}")));
        }
        if !(c >= 3.0 && c.is_finite()) {
            return Err(domain(op, format!("c must be at least 3, got {c}")));
        }
        if !(eps > 0.0 && eps < 1e-3) {
            return Err(domain(op, format!("eps must lie in (0, 1e-3), got {eps}")));
        }
        if !(0.0..1.0).contains(&alpha) {
            return Err(domain(op, format!("alpha must lie in [0, 1), got {alpha}")));
        }
        if !(c / eps <= t * (1.0 + 1e-12)) {
            return Err(domain(op, format!("c/ε = {} exceeds T = {t}", c / eps)));
        }
        Ok(Self {
            x0: log_x0.exp(),
            log_x0,
            c,
            eps,
            alpha,
            t,
        })
    }

    /// Parameters with ε = c/T and x₀ chosen so that e^{αε}x₀ = e^{log_valid_from}.
    pub fn for_threshold(log_valid_from: f64, c: f64, alpha: f64, t: f64) -> Result<Self> {
        let eps = c / t;
        Self::from_log(log_valid_from - alpha * eps, c, eps, alpha, t)
    }

    pub fn kernel(&self) -> KernelParams {
        KernelParams { c: self.c, eps: self.eps }
    }

    pub fn log_valid_from(&self) -> f64 {
        self.log_x0 + self.alpha * self.eps
    }
}

/// How E₂ is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum E2Form {
    /// 0.16(1 + 1/x₀)/sinh(c)·e^{0.71√(cε)}·log(3c)·log(c/ε): the tail
    /// remainder divided by x₀.
    Certified,
    /// The same without the factor log(3c).
    WithoutLog3c,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertificateOptions {
    /// Grid points per e-fold for the tail of the zero sum.
    pub tail_grid: usize,
    pub e2_form: E2Form,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        Self {
            tail_grid: DEFAULT_TAIL_GRID,
            e2_form: E2Form::Certified,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub x0: f64,
    pub log_x0: f64,
    pub c: f64,
    pub eps: f64,
    pub alpha: f64,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "E1")]
    pub e1: f64,
    #[serde(rename = "E2")]
    pub e2: f64,
    #[serde(rename = "E3")]
    pub e3: f64,
    pub b0: f64,
    /// e^{αε} − 1: moving from the smoothing point x to e^{∓αε}x.
    pub shift: f64,
    pub delta0: f64,
    pub valid_from: f64,
    pub log_valid_from: f64,
    pub rh_height_required: f64,
    pub zero_data_height_used: f64,
    pub zero_sum_exact: f64,
    pub tail_bound_used: f64,
    /// Set when the table was too short and the whole zero sum is the tail
    /// bound from height 14.
    pub tail_from_fourteen: bool,
    pub slack: f64,
    pub assumption: String,
}

impl BoundCertificate {
    /// e^{αε}(E₁ + E₂ + E₃) + (e^{αε} − 1) before slack.
    pub fn raw_delta0(&self) -> f64 {
        (self.alpha * self.eps).exp() * (self.e1 + self.e2 + self.e3) + self.shift
    }
}

fn exp_neg(log_x: f64, k: f64) -> f64 {
    (-k * log_x).exp()
}

fn assemble(
    p: &ChebyshevBoundParams,
    kv: &KernelValues,
    zsum: &WeightedZeroSum,
    opts: &CertificateOptions,
) -> Result<BoundCertificate> {
    let (c, eps, l) = (p.c, p.eps, p.log_x0);
    // log B₀ = log(ε e^{−ε} x₀ |ν|_lo / (2 μ_hi))
    let log_b0 = eps.ln() - eps + l + kv.nu.lo.ln() - (2.0 * kv.mu.hi).ln();
    if !(log_b0 > 0.0) {
        return Err(Error::Infeasible(format!(
            "B0 = {:.6e} ≤ 1 (log x0 = {l}, c = {c}, ε = {eps:e}, α = {})",
            log_b0.exp(),
            p.alpha
        )));
    }
    let inv_sqrt_x0 = exp_neg(l, 0.5);
    let inv_x0 = exp_neg(l, 1.0);
    let e1 = (2.0 * eps).exp()
        * (eps + l)
        * (2.0 * eps * kv.nu.hi / log_b0
            + 2.01 * eps * inv_sqrt_x0
            + (2f64.ln() + 2.0 * l).ln() * 0.5 * inv_x0);
    let log3c = match opts.e2_form {
        E2Form::Certified => (3.0 * c).ln(),
        E2Form::WithoutLog3c => 1.0,
    };
    let inv_sinh = 2.0 * (-c).exp() / -(-2.0 * c).exp_m1();
    let e2 = 0.16 * (1.0 + inv_x0) * inv_sinh * (0.71 * (c * eps).sqrt()).exp() * log3c * (c / eps).ln();
    let e3 = 2.0 * inv_sqrt_x0 * zsum.total() + 2.0 * inv_x0;
    // for y = e^{−αε}x the gap x − y = (e^{αε} − 1)y has to be paid for too
    let shift = (p.alpha * eps).exp_m1();
    let delta0 = ((p.alpha * eps).exp() * (e1 + e2 + e3) + shift) * (1.0 + CERTIFIED_SLACK);
    let height = p.kernel().cutoff();
    Ok(BoundCertificate {
        x0: p.x0,
        log_x0: l,
        c,
        eps,
        alpha: p.alpha,
        t: p.t,
        e1,
        e2,
        e3,
        b0: log_b0.exp(),
        shift,
        delta0,
        valid_from: p.log_valid_from().exp(),
        log_valid_from: p.log_valid_from(),
        rh_height_required: height,
        zero_data_height_used: if zsum.pure_tail { 0.0 } else { zsum.exact_up_to },
        zero_sum_exact: zsum.exact,
        tail_bound_used: zsum.tail,
        tail_from_fourteen: zsum.pure_tail,
        slack: CERTIFIED_SLACK,
        assumption: format!("RH verified for 0 < γ ≤ H, H = {height:e}"),
    })
}

/// Certificate for the given parameters. `kv` must be certified kernel
/// values for (c, α).
pub fn chebyshev_delta0(
    p: &ChebyshevBoundParams,
    table: Option<&ZeroTable>,
    kv: &KernelValues,
) -> Result<BoundCertificate> {
    chebyshev_delta0_with(p, table, kv, &CertificateOptions::default())
}

pub fn chebyshev_delta0_with(
    p: &ChebyshevBoundParams,
    table: Option<&ZeroTable>,
    kv: &KernelValues,
    opts: &CertificateOptions,
) -> Result<BoundCertificate> {
    if kv.c != p.c || kv.alpha != p.alpha {
        return Err(Error::Invalid(format!(
            "kernel values are for (c={}, α={}), not (c={}, α={})",
            kv.c, kv.alpha, p.c, p.alpha
        )));
    }
    let zsum = certified_weighted_sum(table, p.kernel(), opts.tail_grid)?;
    assemble(p, kv, &zsum, opts)
}

/// Parameter grid searched by [`optimize_params`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchGrid {
    pub c_values: Vec<f64>,
    pub alpha_values: Vec<f64>,
    /// Number of best-ranked candidates that are certified.
    pub certify_top: usize,
}

impl Default for SearchGrid {
    fn default() -> Self {
        Self {
            c_values: (3..=60).map(f64::from).collect(),
            alpha_values: (0..=30).map(|k| k as f64 / 100.0).collect(),
            certify_top: 8,
        }
    }
}

fn point_bracket(v: f64) -> KernelBracket {
    KernelBracket { lo: v, hi: v, steps: 0 }
}

/// Grid search over (c, α) with ε = c/T for the smallest δ₀ valid from
/// e^{log_valid_from}.
///
/// Every grid point is ranked with quadrature estimates of μ and ν; the best
/// `certify_top` are then recomputed with certified brackets and the
/// smallest certified δ₀ wins (ties: smaller c, then smaller α).
pub fn optimize_params(
    log_valid_from: f64,
    t: f64,
    table: Option<&ZeroTable>,
    cache: &KernelCache,
    grid: &SearchGrid,
    opts: &CertificateOptions,
) -> Result<(ChebyshevBoundParams, BoundCertificate)> {
    if !(log_valid_from >= 100f64.ln()) {
        return Err(domain("optimize_params", format!("x0 must be at least 100, got e^{log_valid_from}")));
    }
    if !(t >= 1e3) {
        return Err(domain("optimize_params", format!("T must be at least 1000, got {t}")));
    }
    // the zero sum depends on c only
    let per_c: Vec<(f64, Result<WeightedZeroSum>)> = grid
        .c_values
        .par_iter()
        .map(|&c| {
            let eps = c / t;
            let z = KernelParams::new(c, eps)
                .and_then(|kp| certified_weighted_sum(table, kp, opts.tail_grid));
            (c, z)
        })
        .collect();

    let mut ranked: Vec<(f64, f64, f64)> = per_c
        .par_iter()
        .flat_map_iter(|(c, zsum)| {
            let c = *c;
            grid.alpha_values.iter().filter_map(move |&alpha| {
                let zsum = zsum.as_ref().ok()?;
                let p = ChebyshevBoundParams::for_threshold(log_valid_from, c, alpha, t).ok()?;
                let (mu, nu) = kernel_estimate(c, alpha);
                let kv = KernelValues {
                    c,
                    alpha,
                    mu: point_bracket(mu),
                    nu: point_bracket(nu),
                };
                let cert = assemble(&p, &kv, zsum, opts).ok()?;
                Some((cert.delta0, c, alpha))
            })
        })
        .collect();
    ranked.sort_by(|a, b| a.partial_cmp(b).expect("finite δ₀"));
    if ranked.is_empty() {
        return Err(Error::Infeasible(format!(
            "no feasible (c, α) for threshold e^{log_valid_from} and T = {t:e} \
             (need c/T < 1e-3 and B0 > 1)"
        )));
    }

    let mut best: Option<(ChebyshevBoundParams, BoundCertificate)> = None;
    let mut last_err = None;
    for &(_, c, alpha) in ranked.iter().take(grid.certify_top.max(1)) {
        let p = ChebyshevBoundParams::for_threshold(log_valid_from, c, alpha, t)?;
        let zsum = per_c
            .iter()
            .find(|(cc, _)| *cc == c)
            .and_then(|(_, z)| z.as_ref().ok())
            .expect("ranked candidates have a zero sum");
        let cert = match cache.get(c, alpha).and_then(|kv| assemble(&p, &kv, zsum, opts)) {
            Ok(cert) => cert,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        let better = match &best {
            None => true,
            Some((bp, bc)) => (cert.delta0, c, alpha) < (bc.delta0, bp.c, bp.alpha),
        };
        if better {
            best = Some((p, cert));
        }
    }
    best.ok_or_else(|| last_err.unwrap_or_else(|| Error::Infeasible("no certifiable candidate".into())))
}

/// One row of the report on the condition δ_n·y_n ≤ e^{−1/8}·√y_n/(8π)·log y_n·(log y_n − 3).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChebConditionRow {
    pub n: u32,
    pub y: f64,
    pub c: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub alpha: f64,
    pub delta: Option<f64>,
    pub lhs: Option<f64>,
    pub rhs: f64,
    pub holds: bool,
    /// The RH height T is covered by the zero table.
    pub certifiable: bool,
    pub note: String,
}

/// Evaluates the mid-range condition for each n, with y_n = e^{n/4},
/// c = n/8 + 5, x₀ = e^{−αε}y_n and either (T = 2√y_n, α = 0.2) for n ≤ 129
/// or (T = 4√(y_n/log y_n), α = 0.1) above.
pub fn cheb_condition_report(
    ns: impl IntoIterator<Item = u32>,
    table: Option<&ZeroTable>,
    cache: &KernelCache,
) -> Vec<ChebConditionRow> {
    let height = table.map_or(0.0, |t| t.height());
    ns.into_iter()
        .map(|n| {
            let log_y = n as f64 / 4.0;
            let y = log_y.exp();
            let c = n as f64 / 8.0 + 5.0;
            let (t, alpha) = if n <= 129 {
                (2.0 * y.sqrt(), 0.2)
            } else {
                (4.0 * (y / log_y).sqrt(), 0.1)
            };
            let rhs = (-0.125f64).exp() * y.sqrt() / (8.0 * std::f64::consts::PI) * log_y * (log_y - 3.0);
            let certifiable = t <= height;
            let outcome = ChebyshevBoundParams::for_threshold(log_y, c, alpha, t)
                .and_then(|p| {
                    let kv = cache.get(c, alpha)?;
                    chebyshev_delta0(&p, table, &kv)
                });
            match outcome {
                Ok(cert) => {
                    let lhs = cert.delta0 * y;
                    ChebConditionRow {
                        n,
                        y,
                        c,
                        t,
                        alpha,
                        delta: Some(cert.delta0),
                        lhs: Some(lhs),
                        rhs,
                        holds: lhs <= rhs,
                        certifiable,
                        note: if certifiable {
                            String::new()
                        } else {
                            format!("T = {t:.6e} exceeds zero data height {height:.6e}")
                        },
                    }
                }
                Err(e) => ChebConditionRow {
                    n,
                    y,
                    c,
                    t,
                    alpha,
                    delta: None,
                    lhs: None,
                    rhs,
                    holds: false,
                    certifiable: false,
                    note: e.to_string(),
                },
            }
        })
        .collect()
}
