//! Summation and quadrature primitives shared by the other modules.

use std::sync::OnceLock;

/// Neumaier compensated accumulator.
///
/// The result depends only on the order in which terms are added, so callers
/// that iterate in a fixed order get bit-identical results across runs.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

/// Compensated sum of an iterator, in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    let mut acc = CompensatedSum::new();
    acc.extend(iter);
    acc.value()
}

const GL_ORDER: usize = 16;

struct GaussLegendre {
    nodes: [f64; GL_ORDER],
    weights: [f64; GL_ORDER],
}

fn gauss_legendre() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_ORDER;
        let mut nodes = [0.0; GL_ORDER];
        let mut weights = [0.0; GL_ORDER];
        for i in 0..n {
            // Newton iteration on P_n from the Chebyshev initial guess.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        GaussLegendre { nodes, weights }
    })
}

/// Fixed 16-point Gauss–Legendre rule on `[a, b]`.
pub fn gauss_legendre_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let rule = gauss_legendre();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = CompensatedSum::new();
    for (x, w) in rule.nodes.iter().zip(rule.weights.iter()) {
        acc.add(w * f(mid + half * x));
    }
    half * acc.value()
}

const MAX_DEPTH: u32 = 48;

/// Adaptive Gauss–Legendre quadrature with recursive bisection.
///
/// A panel is accepted once it agrees with the sum over its two halves to
/// within the (locally halved) absolute tolerance, or to a few ulps of its
/// own magnitude.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let whole = gauss_legendre_panel(&f, a, b);
    bisect(&f, a, b, whole, abs_tol, 0)
}

fn bisect<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let left = gauss_legendre_panel(f, a, m);
    let right = gauss_legendre_panel(f, m, b);
    let halves = left + right;
    // below a few ulps of the panel value further bisection only chases rounding
    let tol = tol.max(4.0 * f64::EPSILON * halves.abs());
    if (halves - whole).abs() <= tol || depth >= MAX_DEPTH || m <= a || m >= b {
        return halves;
    }
    bisect(f, a, m, left, 0.5 * tol, depth + 1) + bisect(f, m, b, right, 0.5 * tol, depth + 1)
}
