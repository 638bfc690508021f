//! Error terms of the large-x argument with c = ½·log x + 5 and
//! ε = log^{3/2}x/(8√x).

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticTerms {
    pub x: f64,
    pub c: f64,
    pub eps: f64,
    #[serde(rename = "E1")]
    pub e1: f64,
    #[serde(rename = "E2")]
    pub e2: f64,
    #[serde(rename = "E3")]
    pub e3: f64,
    #[serde(rename = "E4")]
    pub e4: f64,
    #[serde(rename = "E5")]
    pub e5: f64,
    /// Σ Eᵢ/(√x·log x).
    pub normalized_total: f64,
}

pub fn asymptotic_error_terms(x: f64) -> Result<AsymptoticTerms> {
    if !(x >= 1e19 && x.is_finite()) {
        return Err(domain("asymptotic_error_terms", format!("x must be at least 1e19, got {x}")));
    }
    let l = x.ln();
    let ll = l.ln();
    let s = x.sqrt();
    let e1 = 0.0013 * s * l * ll;
    let e2 = 0.03 * l * s;
    let e3 = s * (0.061 * l + 0.16 * ll * ll + 0.024 - 0.15 * l * ll - 0.114 * ll);
    let e4 = 0.283 * s * l.powf(1.5) / (l + 10.0).sqrt();
    let ll2 = (2.0 * x).ln().ln();
    let e5 = 0.26 * l.powf(2.5) + 0.51 * l * ll2 * ll2 + 2.0;
    Ok(AsymptoticTerms {
        x,
        c: 0.5 * l + 5.0,
        eps: l.powf(1.5) / (8.0 * s),
        e1,
        e2,
        e3,
        e4,
        e5,
        normalized_total: (e1 + e2 + e3 + e4 + e5) / (s * l),
    })
}
