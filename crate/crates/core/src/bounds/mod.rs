//! Certified bounds built on the kernel, the zero table and the sieve.

pub mod asymptotic;
pub mod chebyshev;
pub mod explicit;
pub mod prime_sum;
pub mod remainder;
pub mod schoenfeld;

pub use asymptotic::{asymptotic_error_terms, AsymptoticTerms};
pub use chebyshev::{
    cheb_condition_report, chebyshev_delta0, chebyshev_delta0_with, optimize_params, BoundCertificate,
    CertificateOptions, ChebConditionRow, ChebyshevBoundParams, E2Form, SearchGrid,
};
pub use explicit::{explicit_formula_rhs, zero_prefix_bound, zero_sum_abs, ExplicitFormulaValue};
pub use prime_sum::{b_parameter, prime_sum_bound_a, PrimeSumBound};
pub use remainder::{band_remainder_rem2, constant_part_remainder, tail_remainder_rem1};
pub use schoenfeld::{
    schoenfeld_threshold, schoenfeld_verify, Inequality, SchoenfeldReport, Side, VerifyOptions, Violation,
};
