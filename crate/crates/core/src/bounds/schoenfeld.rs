//! Schoenfeld-type bounds |ψ(x) − x| ≤ √x·log²x/(8π), |π(x) − li(x)| ≤
//! √x·log x/(8π) and their θ, π* variants: the range in which a given RH
//! height yields them, and exhaustive verification scans over a sieve.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::primes::{PrimePowerSieve, StepKind};
use crate::specfun::log_integral;

/// Largest x with 4.92·√(x/log x) ≤ T.
pub fn schoenfeld_threshold(t: f64) -> Result<f64> {
    if !(t >= 100.0 && t.is_finite()) {
        return Err(domain("schoenfeld_threshold", format!("T must be at least 100, got {t}")));
    }
    // in y = log x the condition reads log 4.92 + (y − log y)/2 ≤ log T,
    // increasing for y > 1
    let target = t.ln();
    let f = |y: f64| 4.92f64.ln() + 0.5 * (y - y.ln());
    let mut lo = 1.0;
    let mut hi = 2.0;
    while f(hi) <= target {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo.exp())
}

/// Which inequality a scan point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Inequality {
    /// |f(x) − x| ≤ √x·log²x/(8π) for f = ψ, θ; |f(x) − li(x)| ≤ √x·log x/(8π) for π, π*.
    Basic(StepKind),
    /// |ψ(x) − x| ≤ √x/(8π)·log x·(log x − 3), x ≥ 5000.
    StrongPsi,
    /// |θ(x) − x| ≤ √x/(8π)·log x·(log x − 2), x ≥ 5000.
    StrongTheta,
    /// 0 ≤ x − θ(x) ≤ 1.938√x, x ≥ 5000.
    ThetaAuxiliary,
}

impl Inequality {
    pub fn name(self) -> String {
        match self {
            Inequality::Basic(k) => k.name().to_string(),
            Inequality::StrongPsi => "psi_strong".into(),
            Inequality::StrongTheta => "theta_strong".into(),
            Inequality::ThetaAuxiliary => "theta_auxiliary".into(),
        }
    }

    fn kind(self) -> StepKind {
        match self {
            Inequality::Basic(k) => k,
            Inequality::StrongPsi => StepKind::Psi,
            Inequality::StrongTheta | Inequality::ThetaAuxiliary => StepKind::Theta,
        }
    }

    fn min_x(self) -> f64 {
        match self {
            Inequality::Basic(_) => 0.0,
            _ => 5000.0,
        }
    }

    /// Right-hand side at x.
    pub fn rhs(self, x: f64) -> f64 {
        let l = x.ln();
        let s = x.sqrt() / (8.0 * PI);
        match self {
            Inequality::Basic(StepKind::Psi | StepKind::Theta) => s * l * l,
            Inequality::Basic(StepKind::Pi | StepKind::PiStar) => s * l,
            Inequality::StrongPsi => s * l * (l - 3.0),
            Inequality::StrongTheta => s * l * (l - 2.0),
            Inequality::ThetaAuxiliary => 1.938 * x.sqrt(),
        }
    }

    /// Left-hand side at x given the value f of the step function; `li` is
    /// li(x) when needed.
    fn lhs(self, x: f64, f: f64, li: f64) -> f64 {
        match self {
            Inequality::Basic(StepKind::Pi | StepKind::PiStar) => (f - li).abs(),
            Inequality::ThetaAuxiliary => x - f,
            _ => (f - x).abs(),
        }
    }

    fn holds(self, lhs: f64, rhs: f64) -> bool {
        match self {
            Inequality::ThetaAuxiliary => (0.0..=rhs).contains(&lhs),
            _ => lhs <= rhs,
        }
    }

    fn needs_li(self) -> bool {
        matches!(self, Inequality::Basic(StepKind::Pi | StepKind::PiStar))
    }
}

/// Where on the step function a check was made.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Left limit f(x⁻) at a jump.
    Left,
    /// Right limit f(x⁺) at a jump.
    Right,
    /// A point that is not a jump (range endpoint).
    Point,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub x: f64,
    pub function: String,
    pub side: Side,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchoenfeldReport {
    pub range: [f64; 2],
    pub inequalities_checked: Vec<String>,
    /// Violations sorted by x (at most `MAX_REPORTED_VIOLATIONS`).
    pub violations: Vec<Violation>,
    pub violation_count: usize,
    pub scan_points: usize,
}

impl SchoenfeldReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

pub const MAX_REPORTED_VIOLATIONS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Also check the strong ψ/θ forms on [5000, hi] when ψ/θ are selected.
    pub strong: bool,
    /// Also check 0 ≤ x − θ(x) ≤ 1.938√x on [5000, hi] when θ is selected.
    pub theta_auxiliary: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            strong: true,
            theta_auxiliary: true,
        }
    }
}

/// The inequalities a scan over `which` covers.
pub fn inequalities_for(which: &[StepKind], opts: VerifyOptions) -> Vec<Inequality> {
    let mut out: Vec<Inequality> = Vec::new();
    let mut kinds = which.to_vec();
    kinds.sort();
    kinds.dedup();
    for k in kinds {
        out.push(Inequality::Basic(k));
        match k {
            StepKind::Psi if opts.strong => out.push(Inequality::StrongPsi),
            StepKind::Theta => {
                if opts.strong {
                    out.push(Inequality::StrongTheta);
                }
                if opts.theta_auxiliary {
                    out.push(Inequality::ThetaAuxiliary);
                }
            }
            _ => {}
        }
    }
    out
}

const CHUNK: usize = 1 << 14;

/// Checks every selected inequality at both one-sided limits of every jump
/// in [lo, hi] and at the range endpoints.
///
/// Between jumps the step functions are constant while the right-hand sides
/// increase more slowly than x and li(x) (for x ≥ 59), so a violation
/// anywhere in [lo, hi] shows up at one of these points.
pub fn schoenfeld_verify(
    lo: f64,
    hi: f64,
    which: &[StepKind],
    sieve: &PrimePowerSieve,
    opts: VerifyOptions,
) -> Result<SchoenfeldReport> {
    if !(lo > 1.0 && lo <= hi) {
        return Err(Error::Range(format!("invalid range [{lo}, {hi}] (need 1 < lo ≤ hi)")));
    }
    if hi > sieve.limit() as f64 {
        return Err(Error::Range(format!("hi = {hi} exceeds sieve limit {}", sieve.limit())));
    }
    let checks = inequalities_for(which, opts);
    let any_li = checks.iter().any(|c| c.needs_li());

    let start = sieve.index_below(lo);
    let end = sieve.index_at_or_below(hi);
    let records = &sieve.records()[start..end];

    let check_point = |x: f64, side: Side, value_of: &dyn Fn(StepKind) -> f64, out: &mut Vec<Violation>| {
        let li = if any_li { log_integral(x).unwrap_or(f64::NAN) } else { 0.0 };
        for &ineq in &checks {
            if x < ineq.min_x() {
                continue;
            }
            let lhs = ineq.lhs(x, value_of(ineq.kind()), li);
            let rhs = ineq.rhs(x);
            if !ineq.holds(lhs, rhs) {
                out.push(Violation {
                    x,
                    function: ineq.name(),
                    side,
                    lhs,
                    rhs,
                });
            }
        }
    };

    let mut violations: Vec<Violation> = records
        .par_chunks(CHUNK)
        .enumerate()
        .flat_map_iter(|(ci, chunk)| {
            let mut out = Vec::new();
            for (k, r) in chunk.iter().enumerate() {
                let j = start + ci * CHUNK + k;
                let x = r.n as f64;
                check_point(x, Side::Left, &|kind| sieve.cumulative(kind, j), &mut out);
                check_point(x, Side::Right, &|kind| sieve.cumulative(kind, j + 1), &mut out);
            }
            out
        })
        .collect();

    let mut scan_points = 2 * records.len();
    for x in [lo, hi] {
        let j = sieve.index_below(x);
        let is_jump = sieve.records().get(j).is_some_and(|r| r.n as f64 == x);
        if !is_jump && (x != hi || hi != lo) {
            let mut out = Vec::new();
            check_point(x, Side::Point, &|kind| sieve.cumulative(kind, j), &mut out);
            violations.extend(out);
            scan_points += 1;
        }
    }
    violations.sort_by(|a, b| a.x.total_cmp(&b.x).then_with(|| a.function.cmp(&b.function)));
    let violation_count = violations.len();
    violations.truncate(MAX_REPORTED_VIOLATIONS);
    Ok(SchoenfeldReport {
        range: [lo, hi],
        inequalities_checked: checks.iter().map(|c| c.name()).collect(),
        violations,
        violation_count,
        scan_points,
    })
}
