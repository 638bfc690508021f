//! Certified bounds for the prime-counting functions ψ, θ, π and π* derived
//! from a partial verification of the Riemann hypothesis.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: modified Bessel functions, the Logan kernel and its
//!   Fourier transform, exponential and logarithmic integrals.
//! * [`kernel`]: certified Riemann-sum enclosures of the kernel
//!   antiderivatives μ_c and ν_c.
//! * [`zeros`]: zeta-zero tables, zero counting and certified zero sums.
//! * [`primes`]: prime-power sieve, step functions and the smoothed ψ_{c,ε}.
//! * [`bounds`]: the bound engine (Chebyshev certificates, explicit formula,
//!   Schoenfeld thresholds and verification scans).
//! * [`cli`]: the command-line front end used by the `primebounds` binary.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod kernel;
pub mod numeric;
pub mod primes;
pub mod specfun;
pub mod zeros;

pub use error::{Error, Result};
pub use specfun::KernelParams;

/// Multiplicative slack applied to every reported certified upper bound.
///
/// All arithmetic is binary64; the constants being certified have at least
/// three digits of headroom, which this factor covers with a wide margin.
pub const CERTIFIED_SLACK: f64 = 1e-9;
