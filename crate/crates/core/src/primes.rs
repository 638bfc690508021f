//! Prime-power sieve, the step functions ψ, θ, π, π* with the half-weight
//! convention at jumps, the smoothed ψ_{c,ε} and its boundary correction.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numeric::{integrate, CompensatedSum};
use crate::specfun::{eta_exp_integral, lambda_norm, log_integral, KernelParams};

pub const SIEVE_MAGIC: &[u8; 8] = b"PPSIEVE1";
pub const MAX_SIEVE_LIMIT: u64 = 1_000_000_000;
/// Default memory budget for a sieve, in bytes.
pub const DEFAULT_MEMORY_BUDGET: u64 = 1 << 30;

const SEGMENT: u64 = 1 << 18;

/// One prime power n = p^m.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrimePower {
    pub n: u64,
    pub p: u64,
    pub m: u8,
    pub logp: f64,
}

/// Which prime-counting step function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Psi,
    Theta,
    Pi,
    PiStar,
}

impl StepKind {
    pub const ALL: [StepKind; 4] = [StepKind::Psi, StepKind::Theta, StepKind::Pi, StepKind::PiStar];

    pub fn name(self) -> &'static str {
        match self {
            StepKind::Psi => "psi",
            StepKind::Theta => "theta",
            StepKind::Pi => "pi",
            StepKind::PiStar => "pi_star",
        }
    }

    /// Jump of the function at the prime power `r`.
    pub fn weight(self, r: &PrimePower) -> f64 {
        match self {
            StepKind::Psi => r.logp,
            StepKind::Theta if r.m == 1 => r.logp,
            StepKind::Pi if r.m == 1 => 1.0,
            StepKind::PiStar => 1.0 / r.m as f64,
            _ => 0.0,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl std::str::FromStr for StepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psi" => Ok(StepKind::Psi),
            "theta" => Ok(StepKind::Theta),
            "pi" => Ok(StepKind::Pi),
            "pi_star" | "pistar" => Ok(StepKind::PiStar),
            _ => Err(Error::Invalid(format!("unknown function {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepFunctionValue {
    pub value: f64,
    /// True when x is exactly a jump point and the half weight was applied.
    pub at_jump: bool,
}

/// All prime powers up to `limit`, ascending, with cumulative sums for the
/// four step functions.
#[derive(Debug, Clone)]
pub struct PrimePowerSieve {
    limit: u64,
    records: Vec<PrimePower>,
    // cumulative[k][j] = sum of weights of records[..j] for StepKind k
    cumulative: [Vec<f64>; 4],
}

/// Rough byte footprint of a sieve with the given limit.
pub fn estimated_memory(limit: u64) -> u64 {
    let l = (limit.max(3)) as f64;
    let records = 1.3 * l / l.ln() + 2.0 * l.sqrt();
    let per_record = std::mem::size_of::<PrimePower>() as f64 + 4.0 * 8.0;
    (records * per_record) as u64 + SEGMENT
}

impl PrimePowerSieve {
    pub fn new(limit: u64) -> Result<Self> {
        Self::with_budget(limit, DEFAULT_MEMORY_BUDGET)
    }

    pub fn with_budget(limit: u64, budget_bytes: u64) -> Result<Self> {
        if limit < 2 {
            return Err(domain("build_sieve", format!("limit must be at least 2, got {limit}")));
        }
        if limit > MAX_SIEVE_LIMIT {
            return Err(Error::Resource(format!(
                "sieve limit {limit} exceeds the supported maximum {MAX_SIEVE_LIMIT}"
            )));
        }
        let need = estimated_memory(limit);
        if need > budget_bytes {
            return Err(Error::Resource(format!(
                "sieve to {limit} needs about {} MiB, budget is {} MiB",
                need >> 20,
                budget_bytes >> 20
            )));
        }
        let primes = segmented_primes(limit);
        let mut records: Vec<PrimePower> = Vec::with_capacity(primes.len() + 64);
        for &p in &primes {
            let logp = (p as f64).ln();
            let mut n = p;
            let mut m = 1u8;
            loop {
                records.push(PrimePower { n, p, m, logp });
                match n.checked_mul(p) {
                    Some(next) if next <= limit => {
                        n = next;
                        m += 1;
                    }
                    _ => break,
                }
            }
        }
        records.sort_unstable_by_key(|r| r.n);
        Ok(Self::from_records(limit, records))
    }

    fn from_records(limit: u64, records: Vec<PrimePower>) -> Self {
        let cumulative = StepKind::ALL.map(|kind| {
            let mut out = Vec::with_capacity(records.len() + 1);
            let mut acc = CompensatedSum::new();
            out.push(0.0);
            for r in &records {
                acc.add(kind.weight(r));
                out.push(acc.value());
            }
            out
        });
        Self {
            limit,
            records,
            cumulative,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn records(&self) -> &[PrimePower] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Number of records with n < x.
    pub fn index_below(&self, x: f64) -> usize {
        self.records.partition_point(|r| (r.n as f64) < x)
    }

    /// Number of records with n ≤ x.
    pub fn index_at_or_below(&self, x: f64) -> usize {
        self.records.partition_point(|r| (r.n as f64) <= x)
    }

    /// Records with lo ≤ n ≤ hi.
    pub fn records_in(&self, lo: f64, hi: f64) -> &[PrimePower] {
        let a = self.index_below(lo);
        let b = self.index_at_or_below(hi).max(a);
        &self.records[a..b]
    }

    /// Sum of the weights of `records[..j]`, i.e. the left limit of the step
    /// function at `records[j].n`.
    pub fn cumulative(&self, kind: StepKind, j: usize) -> f64 {
        self.cumulative[kind.index()][j]
    }

    fn check_range(&self, x: f64) -> Result<()> {
        if !(x <= self.limit as f64) {
            return Err(Error::Range(format!("x = {x} exceeds sieve limit {}", self.limit)));
        }
        Ok(())
    }

    /// Step function value at x with the half weight at jumps.
    pub fn eval(&self, kind: StepKind, x: f64) -> Result<StepFunctionValue> {
        self.check_range(x)?;
        let j = self.index_below(x);
        let base = self.cumulative(kind, j);
        match self.records.get(j) {
            Some(r) if r.n as f64 == x => Ok(StepFunctionValue {
                value: base + 0.5 * kind.weight(r),
                at_jump: true,
            }),
            _ => Ok(StepFunctionValue {
                value: base,
                at_jump: false,
            }),
        }
    }

    pub fn psi(&self, x: f64) -> Result<StepFunctionValue> {
        self.eval(StepKind::Psi, x)
    }

    pub fn theta(&self, x: f64) -> Result<StepFunctionValue> {
        self.eval(StepKind::Theta, x)
    }

    pub fn pi(&self, x: f64) -> Result<StepFunctionValue> {
        self.eval(StepKind::Pi, x)
    }

    pub fn pi_star(&self, x: f64) -> Result<StepFunctionValue> {
        self.eval(StepKind::PiStar, x)
    }

    pub fn write_cache(&self, mut w: impl Write) -> Result<()> {
        w.write_all(SIEVE_MAGIC)?;
        w.write_all(&self.limit.to_le_bytes())?;
        w.write_all(&(self.records.len() as u64).to_le_bytes())?;
        for r in &self.records {
            w.write_all(&r.n.to_le_bytes())?;
            w.write_all(&r.p.to_le_bytes())?;
            w.write_all(&[r.m, 0, 0, 0, 0, 0, 0, 0])?;
        }
        Ok(())
    }

    pub fn read_cache(mut r: impl Read) -> Result<Self> {
        let mut header = [0u8; 24];
        r.read_exact(&mut header).map_err(cache_err)?;
        if &header[..8] != SIEVE_MAGIC {
            return Err(Error::Parse {
                location: "sieve cache@0".into(),
                msg: "missing PPSIEVE1 magic".into(),
            });
        }
        let limit = u64::from_le_bytes(header[8..16].try_into().unwrap());
        let count = u64::from_le_bytes(header[16..24].try_into().unwrap()) as usize;
        let mut records = Vec::with_capacity(count.min(1 << 26));
        let mut buf = [0u8; 24];
        let mut prev = 0u64;
        for i in 0..count {
            r.read_exact(&mut buf).map_err(cache_err)?;
            let n = u64::from_le_bytes(buf[..8].try_into().unwrap());
            let p = u64::from_le_bytes(buf[8..16].try_into().unwrap());
            let m = buf[16];
            if n <= prev || n > limit || m == 0 || p < 2 || p.checked_pow(m as u32) != Some(n) {
                return Err(Error::Parse {
                    location: format!("sieve cache@{}", 24 + 24 * i),
                    msg: format!("inconsistent record n={n} p={p} m={m}"),
                });
            }
            prev = n;
            records.push(PrimePower {
                n,
                p,
                m,
                logp: (p as f64).ln(),
            });
        }
        Ok(Self::from_records(limit, records))
    }

    pub fn load_cache(path: impl AsRef<Path>) -> Result<Self> {
        let f = std::fs::File::open(path)?;
        Self::read_cache(std::io::BufReader::new(f))
    }
}

fn cache_err(e: std::io::Error) -> Error {
    match e.kind() {
        std::io::ErrorKind::UnexpectedEof => Error::Parse {
            location: "sieve cache".into(),
            msg: "truncated file".into(),
        },
        _ => Error::Io(e),
    }
}

fn small_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// All primes ≤ limit via a segmented sieve over odd numbers.
fn segmented_primes(limit: u64) -> Vec<u64> {
    let root = (limit as f64).sqrt() as u64 + 1;
    let base = small_primes(root);
    let mut primes = vec![2u64];
    let mut flags = vec![false; SEGMENT as usize];
    // segment covers odd numbers lo, lo+2, …, lo + 2(SEGMENT−1)
    let mut lo = 3u64;
    while lo <= limit {
        let hi = (lo + 2 * (SEGMENT - 1)).min(limit);
        let len = ((hi - lo) / 2 + 1) as usize;
        flags[..len].iter_mut().for_each(|f| *f = false);
        for &p in base.iter().skip(1) {
            if p * p > hi {
                break;
            }
            let mut start = (p * p).max(lo.div_ceil(p) * p);
            if start % 2 == 0 {
                start += p;
            }
            let mut k = ((start - lo) / 2) as usize;
            while k < len {
                flags[k] = true;
                k += p as usize;
            }
        }
        for (k, &composite) in flags[..len].iter().enumerate() {
            if !composite {
                primes.push(lo + 2 * k as u64);
            }
        }
        lo = hi + 2;
    }
    primes.retain(|&p| p <= limit);
    primes
}

// ---------------------------------------------------------------------------
// Smoothed ψ and boundary correction

fn check_eps(op: &'static str, params: KernelParams) -> Result<()> {
    if !(params.eps < 0.1) {
        return Err(domain(op, format!("eps must be below 1/10, got {}", params.eps)));
    }
    Ok(())
}

/// φ_{x,c,ε}(t)·e^{−t/2}: the weight with which a prime power at log-position
/// t enters ψ_{c,ε}(x), relative to its plain contribution log p.
pub fn smoothing_weight(params: KernelParams, log_x: f64, t: f64) -> f64 {
    let eps = params.eps;
    let lo = (-eps).max(t - log_x);
    let hi = eps.min(t);
    if lo >= hi {
        return 0.0;
    }
    if lo == -eps && hi == eps {
        return 1.0;
    }
    eta_exp_integral(params, lo, hi) / lambda_norm(params)
}

/// ψ_{c,ε}(x) = Σ_{p^m} (log p / p^{m/2})·φ_{x,c,ε}(m log p).
///
/// Prime powers below e^{−ε}x carry full weight log p and are taken from the
/// cumulative sums; the window (e^{−ε}x, e^{ε}x) is integrated.
pub fn psi_smoothed(x: f64, params: KernelParams, sieve: &PrimePowerSieve) -> Result<f64> {
    check_eps("psi_smoothed", params)?;
    if !(x > 1.0) {
        return Err(domain("psi_smoothed", format!("x must exceed 1, got {x}")));
    }
    let eps = params.eps;
    let upper = x * eps.exp();
    if upper > sieve.limit() as f64 {
        return Err(Error::Range(format!(
            "e^ε·x = {upper} exceeds sieve limit {}",
            sieve.limit()
        )));
    }
    let log_x = x.ln();
    let records = sieve.records();
    // first index whose log-position is above log x − ε
    let j0 = records.partition_point(|r| (r.n as f64).ln() - log_x <= -eps);
    let mut acc = CompensatedSum::new();
    acc.add(sieve.cumulative(StepKind::Psi, j0));
    for r in &records[j0..] {
        let t = (r.n as f64).ln();
        if t - log_x >= eps {
            break;
        }
        acc.add(r.logp * smoothing_weight(params, log_x, t));
    }
    Ok(acc.value())
}

/// M_{x,c,ε}(t), the per-prime-power difference between ψ_{c,ε}(x) and ψ(x)
/// (scaled by m), with half weights at t = x.
pub fn boundary_correction(x: f64, params: KernelParams, t: f64) -> Result<f64> {
    check_eps("boundary_correction", params)?;
    let eps = params.eps;
    let s = (t / x).ln();
    if !(s.abs() <= eps) {
        return Ok(0.0);
    }
    let scale = t.ln() / lambda_norm(params);
    let above = eta_exp_integral(params, s, eps);
    let below = eta_exp_integral(params, -eps, s);
    Ok(if t > x {
        scale * above
    } else if t < x {
        -scale * below
    } else {
        0.5 * scale * (above - below)
    })
}

/// Σ (1/m)·M_{x,c,ε}(p^m) over prime powers with lo < p^m < hi
/// (`lo_closed`/`hi_closed` include the respective endpoint).
pub fn boundary_sum(
    x: f64,
    params: KernelParams,
    sieve: &PrimePowerSieve,
    (lo, lo_closed): (f64, bool),
    (hi, hi_closed): (f64, bool),
) -> Result<f64> {
    let mut acc = CompensatedSum::new();
    for r in sieve.records_in(lo, hi) {
        let n = r.n as f64;
        if (n == lo && !lo_closed) || (n == hi && !hi_closed) {
            continue;
        }
        acc.add(boundary_correction(x, params, n)? / r.m as f64);
    }
    Ok(acc.value())
}

// ---------------------------------------------------------------------------
// Partial summation

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartialSummationKind {
    /// f = ψ, g = π*.
    PsiToPiStar,
    /// f = θ, g = π.
    ThetaToPi,
}

/// |LHS − RHS| of
/// g(x) − g(a) = li(x) − li(a) − (x − f(x))/log x + (a − f(a))/log a
///               − ∫_a^x (t − f(t))/(t log²t) dt,
/// the integral computed by quadrature between consecutive jumps of f.
pub fn partial_summation_residual(
    kind: PartialSummationKind,
    a: f64,
    x: f64,
    sieve: &PrimePowerSieve,
) -> Result<f64> {
    if a == x {
        return Ok(0.0);
    }
    if !(a > 2.0 && a < x) {
        return Err(domain("partial_summation_residual", format!("need 2 < a < x, got a={a}, x={x}")));
    }
    sieve.check_range(x)?;
    let (f, g) = match kind {
        PartialSummationKind::PsiToPiStar => (StepKind::Psi, StepKind::PiStar),
        PartialSummationKind::ThetaToPi => (StepKind::Theta, StepKind::Pi),
    };
    let fa = sieve.eval(f, a)?;
    let fx = sieve.eval(f, x)?;
    if fa.at_jump || fx.at_jump {
        return Err(domain("partial_summation_residual", "endpoints must not be prime powers"));
    }
    let lhs = sieve.eval(g, x)?.value - sieve.eval(g, a)?.value;

    let mut integral = CompensatedSum::new();
    let mut left = a;
    let mut level = fa.value;
    let start = sieve.index_below(a);
    let end = sieve.index_below(x);
    for r in &sieve.records()[start..end] {
        let right = r.n as f64;
        let fl = level;
        integral.add(integrate(
            move |t: f64| (t - fl) / (t * t.ln().powi(2)),
            left,
            right,
            1e-13,
        ));
        level += f.weight(r);
        left = right;
    }
    let fl = level;
    integral.add(integrate(move |t: f64| (t - fl) / (t * t.ln().powi(2)), left, x, 1e-13));

    let rhs = log_integral(x)? - log_integral(a)? - (x - fx.value) / x.ln() + (a - fa.value) / a.ln()
        - integral.value();
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    fn trial_prime_power(n: u64) -> Option<(u64, u8)> {
        let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
        let mut k = n;
        let mut m = 0u8;
        while k.is_multiple_of(p) {
            k /= p;
            m += 1;
        }
        (k == 1).then_some((p, m))
    }

    #[test]
    fn limit_ten() {
        let s = PrimePowerSieve::new(10).unwrap();
        let ns: Vec<u64> = s.records().iter().map(|r| r.n).collect();
        assert_eq!(ns, vec![2, 3, 4, 5, 7, 8, 9]);
        assert_eq!(s.records()[2].p, 2);
        assert_eq!(s.records()[2].m, 2);
    }

    #[test]
    fn limit_one_rejected() {
        assert!(PrimePowerSieve::new(1).is_err());
    }

    #[test]
    fn matches_trial_division() {
        let limit = 10_000;
        let s = PrimePowerSieve::new(limit).unwrap();
        let expect: Vec<(u64, u64, u8)> = (2..=limit)
            .filter_map(|n| trial_prime_power(n).map(|(p, m)| (n, p, m)))
            .collect();
        let got: Vec<(u64, u64, u8)> = s.records().iter().map(|r| (r.n, r.p, r.m)).collect();
        assert_eq!(got, expect);
        let primes = (2..=limit).filter(|&n| trial_division_prime(n)).count();
        assert_eq!(s.pi(limit as f64).unwrap().value as usize, primes);
    }

    #[test]
    fn segment_boundaries() {
        // limit spanning several segments
        let limit = 3 * SEGMENT * 2 + 17;
        let s = PrimePowerSieve::new(limit).unwrap();
        for r in s.records().iter().filter(|r| r.m == 1).step_by(997) {
            assert!(trial_division_prime(r.n), "{}", r.n);
        }
        assert_eq!(s.pi(1_000_000.0).unwrap().value, 78_498.0);
    }

    #[test]
    fn hundred() {
        let s = PrimePowerSieve::new(100).unwrap();
        assert_eq!(s.len(), 35);
        assert_eq!(s.pi(100.0).unwrap().value, 25.0);
        let psi = s.psi(100.0).unwrap();
        assert!(!psi.at_jump);
        assert!((psi.value - 94.045_311_229_357_39).abs() < 1e-12);
    }

    #[test]
    fn half_weight_at_jump() {
        let s = PrimePowerSieve::new(100).unwrap();
        let v = s.psi(2.0).unwrap();
        assert!(v.at_jump);
        assert!((v.value - 0.5 * 2f64.ln()).abs() < 1e-15);
        let p = s.pi_star(4.0).unwrap();
        assert!(p.at_jump);
        assert!((p.value - 2.25).abs() < 1e-15);
        assert_eq!(s.theta(4.0).unwrap().value, 2f64.ln() + 3f64.ln());
        assert!(s.psi(101.0).is_err());
    }

    #[test]
    fn cache_round_trip() {
        let s = PrimePowerSieve::new(1000).unwrap();
        let mut buf = Vec::new();
        s.write_cache(&mut buf).unwrap();
        assert_eq!(buf.len(), 24 + 24 * s.len());
        let back = PrimePowerSieve::read_cache(buf.as_slice()).unwrap();
        assert_eq!(back.records(), s.records());
        assert_eq!(back.limit(), 1000);
        assert!(PrimePowerSieve::read_cache(&buf[..40]).is_err());
        let mut bad = buf.clone();
        bad[24] ^= 1;
        assert!(PrimePowerSieve::read_cache(bad.as_slice()).is_err());
    }

    #[test]
    fn resource_budget() {
        assert!(matches!(
            PrimePowerSieve::with_budget(100_000_000, 1 << 20),
            Err(Error::Resource(_))
        ));
        assert!(matches!(PrimePowerSieve::new(MAX_SIEVE_LIMIT + 1), Err(Error::Resource(_))));
    }

    #[test]
    fn smoothed_equals_psi_in_a_gap() {
        let s = PrimePowerSieve::new(1_100_000).unwrap();
        let p = KernelParams::new(10.0, 1e-6).unwrap();
        let x = 1e6 + 0.5;
        let sm = psi_smoothed(x, p, &s).unwrap();
        assert!((sm - s.psi(1e6).unwrap().value).abs() < 1e-6);
    }

    #[test]
    fn boundary_correction_signs() {
        let p = KernelParams::new(10.0, 1e-3).unwrap();
        let x = 1000.5;
        assert_eq!(boundary_correction(x, p, 2.0 * x).unwrap(), 0.0);
        assert!(boundary_correction(x, p, x * 1.0002).unwrap() > 0.0);
        assert!(boundary_correction(x, p, x * 0.9998).unwrap() < 0.0);
        assert!(boundary_correction(x, p, x).unwrap().abs() < 1e-3);
    }

    #[test]
    fn identity_with_correction_sum() {
        let s = PrimePowerSieve::new(200_000).unwrap();
        let p = KernelParams::new(10.0, 1e-3).unwrap();
        for &x in &[1000.5, 1e4 + 0.3, 1e5 + 0.7] {
            let lo = x * (-p.eps).exp();
            let hi = x * p.eps.exp();
            let corr = boundary_sum(x, p, &s, (lo, false), (hi, false)).unwrap();
            let lhs = s.psi(x).unwrap().value;
            let rhs = psi_smoothed(x, p, &s).unwrap() - corr;
            assert!((lhs - rhs).abs() < 1e-8, "x={x}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn smoothed_psi_requires_small_eps() {
        let s = PrimePowerSieve::new(1000).unwrap();
        assert!(psi_smoothed(100.0, KernelParams::new(3.0, 0.2).unwrap(), &s).is_err());
        assert!(psi_smoothed(999.9, KernelParams::new(3.0, 0.01).unwrap(), &s).is_err());
    }

    #[test]
    fn partial_summation_small() {
        let s = PrimePowerSieve::new(20_000).unwrap();
        let r = partial_summation_residual(PartialSummationKind::ThetaToPi, 10.5, 1e4 + 0.5, &s).unwrap();
        assert!(r < 1e-6, "{r}");
        assert_eq!(
            partial_summation_residual(PartialSummationKind::PsiToPiStar, 10.5, 10.5, &s).unwrap(),
            0.0
        );
        assert!(partial_summation_residual(PartialSummationKind::PsiToPiStar, 10.5, 16.0, &s).is_err());
    }
}
