//! Zeta-zero ordinate tables, zero counting, and certified sums over zeros.
//!
//! Two on-disk formats are supported:
//!
//! * text: one decimal ordinate per line, ascending; lines starting with `#`
//!   are comments and may carry `height=<real>` and `precision=<real>`;
//! * binary cache: the 8-byte magic `ZETZERO1`, a little-endian `u64` record
//!   count, then that many little-endian IEEE-754 binary64 ordinates.

use std::f64::consts::PI;
use std::io::{BufRead, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numeric::CompensatedSum;
use crate::specfun::{logan_ell, KernelParams};

pub const BINARY_MAGIC: &[u8; 8] = b"ZETZERO1";
pub const DEFAULT_PRECISION: f64 = 1e-8;

/// Ascending ordinates γ of nontrivial zeros on the critical line.
///
/// `height` is the completeness guarantee: every zero with 0 < γ ≤ height is
/// present, counted with multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
    height: f64,
    precision: f64,
    source: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroFormat {
    Text,
    Binary,
}

impl ZeroTable {
    /// Validates and wraps a list of ordinates. `height` defaults to the last
    /// ordinate, `precision` to 1e-8.
    pub fn new(
        ordinates: Vec<f64>,
        height: Option<f64>,
        precision: Option<f64>,
        source: impl Into<String>,
    ) -> Result<Self> {
        if ordinates.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (i, &g) in ordinates.iter().enumerate() {
            if !(g.is_finite() && g > 0.0) {
                return Err(Error::Invalid(format!(
                    "record {}: ordinate must be positive and finite, got {g}",
                    i + 1
                )));
            }
            if i > 0 && g < ordinates[i - 1] {
                return Err(Error::NotAscending {
                    record: i + 1,
                    prev: ordinates[i - 1],
                    next: g,
                });
            }
        }
        let first = ordinates[0];
        if !(14.0..15.0).contains(&first) {
            return Err(Error::Invalid(format!(
                "first ordinate {first} is not the lowest zero (expected ≈14.13)"
            )));
        }
        let last = *ordinates.last().unwrap();
        let height = height.unwrap_or(last);
        if !(height.is_finite() && height > 0.0) {
            return Err(Error::Invalid(format!("invalid height {height}")));
        }
        let precision = precision.unwrap_or(DEFAULT_PRECISION);
        if !(precision.is_finite() && precision >= 0.0) {
            return Err(Error::Invalid(format!("invalid precision {precision}")));
        }
        Ok(Self {
            ordinates,
            height,
            precision,
            source: source.into(),
        })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn precision(&self) -> f64 {
        self.precision
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Table restricted to its ordinates not exceeding `height`.
    pub fn truncated(&self, height: f64) -> Result<Self> {
        let n = self.count_up_to(height);
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        Ok(Self {
            ordinates: self.ordinates[..n].to_vec(),
            height: height.min(self.height),
            precision: self.precision,
            source: format!("{} (truncated at {height})", self.source),
        })
    }

    /// N(t): number of stored ordinates γ ≤ t.
    pub fn count_up_to(&self, t: f64) -> usize {
        self.ordinates.partition_point(|&g| g <= t)
    }

    /// Σ_{t1 ≤ γ < t2} 1/γ over the stored ordinates, ascending.
    pub fn reciprocal_sum(&self, t1: f64, t2: f64) -> f64 {
        let a = self.ordinates.partition_point(|&g| g < t1);
        let b = self.ordinates.partition_point(|&g| g < t2);
        let mut acc = CompensatedSum::new();
        for &g in &self.ordinates[a..b.max(a)] {
            acc.add(1.0 / g);
        }
        acc.value()
    }

    pub fn load(reader: impl Read, format: ZeroFormat, source: &str) -> Result<Self> {
        match format {
            ZeroFormat::Text => Self::load_text(std::io::BufReader::new(reader), source),
            ZeroFormat::Binary => Self::load_binary(reader, source),
        }
    }

    /// Loads a table from a path; files starting with the binary magic are
    /// read as binary caches, everything else as text.
    pub fn load_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path)?;
        let format = if bytes.starts_with(BINARY_MAGIC) {
            ZeroFormat::Binary
        } else {
            ZeroFormat::Text
        };
        Self::load(bytes.as_slice(), format, &path.display().to_string())
    }

    pub fn load_text(reader: impl BufRead, source: &str) -> Result<Self> {
        let mut ordinates = Vec::new();
        let mut height = None;
        let mut precision = None;
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                for token in comment.split(|ch: char| ch.is_whitespace() || ch == ',') {
                    if let Some((key, value)) = token.split_once('=') {
                        let parsed = || {
                            value.parse::<f64>().map_err(|e| Error::Parse {
                                location: format!("{source}:{}", lineno + 1),
                                msg: format!("bad {key} value {value:?}: {e}"),
                            })
                        };
                        match key {
                            "height" => height = Some(parsed()?),
                            "precision" => precision = Some(parsed()?),
                            _ => {}
                        }
                    }
                }
                continue;
            }
            let g: f64 = trimmed.parse().map_err(|e| Error::Parse {
                location: format!("{source}:{}", lineno + 1),
                msg: format!("{trimmed:?}: {e}"),
            })?;
            if let Some(&prev) = ordinates.last() {
                if g < prev {
                    return Err(Error::NotAscending {
                        record: ordinates.len() + 1,
                        prev,
                        next: g,
                    });
                }
            }
            ordinates.push(g);
        }
        Self::new(ordinates, height, precision, source)
    }

    pub fn load_binary(mut reader: impl Read, source: &str) -> Result<Self> {
        let mut header = [0u8; 16];
        read_exact_at(&mut reader, &mut header, 0, source)?;
        if &header[..8] != BINARY_MAGIC {
            return Err(Error::Parse {
                location: format!("{source}@0"),
                msg: "missing ZETZERO1 magic".into(),
            });
        }
        let count = u64::from_le_bytes(header[8..16].try_into().unwrap()) as usize;
        if count == 0 {
            return Err(Error::EmptyInput);
        }
        let mut ordinates = Vec::with_capacity(count.min(1 << 28));
        let mut buf = [0u8; 8];
        for i in 0..count {
            read_exact_at(&mut reader, &mut buf, 16 + 8 * i, source)?;
            ordinates.push(f64::from_le_bytes(buf));
        }
        Self::new(ordinates, None, None, source)
    }

    pub fn write_binary(&self, mut writer: impl Write) -> Result<()> {
        writer.write_all(BINARY_MAGIC)?;
        writer.write_all(&(self.ordinates.len() as u64).to_le_bytes())?;
        for g in &self.ordinates {
            writer.write_all(&g.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn write_text(&self, mut writer: impl Write) -> Result<()> {
        writeln!(writer, "# height={:?} precision={:?}", self.height, self.precision)?;
        for g in &self.ordinates {
            writeln!(writer, "{g:?}")?;
        }
        Ok(())
    }
}

fn read_exact_at(reader: &mut impl Read, buf: &mut [u8], offset: usize, source: &str) -> Result<()> {
    reader.read_exact(buf).map_err(|e| match e.kind() {
        std::io::ErrorKind::UnexpectedEof => Error::Parse {
            location: format!("{source}@{offset}"),
            msg: "truncated binary zero file".into(),
        },
        _ => Error::Io(e),
    })
}

// ---------------------------------------------------------------------------
// Zero counting

/// N(t) enclosure g(t) ± log t.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountingEstimate {
    pub t: f64,
    pub main: f64,
    pub lo: f64,
    pub hi: f64,
}

impl CountingEstimate {
    pub fn contains(&self, n: f64) -> bool {
        self.lo <= n && n <= self.hi
    }
}

/// g(t) = (t/2π)·log(t/2πe) + 7/8.
pub fn counting_main_term(t: f64) -> Result<f64> {
    if !(t >= 14.0) {
        return Err(domain("counting_main_term", format!("t must be at least 14, got {t}")));
    }
    Ok(t / (2.0 * PI) * (t / (2.0 * PI * std::f64::consts::E)).ln() + 0.875)
}

/// |N(t) − g(t)| ≤ log t for t ≥ 14.
pub fn counting_bounds(t: f64) -> Result<CountingEstimate> {
    let main = counting_main_term(t)?;
    let r = t.ln();
    Ok(CountingEstimate {
        t,
        main,
        lo: main - r,
        hi: main + r,
    })
}

fn log_sq_over_4pi(t: f64) -> f64 {
    let l = (t / (2.0 * PI)).ln();
    l * l / (4.0 * PI)
}

/// Upper bound on Σ_{t1 ≤ γ < t2} 1/γ:
/// (1/4π)[log²(t2/2π) − log²(t1/2π)] + 5·log(t1)/t1.
pub fn reciprocal_sum_bound(t1: f64, t2: f64) -> Result<f64> {
    if !(t1 >= 14.0) {
        return Err(domain("reciprocal_sum_bound", format!("t1 must be at least 14, got {t1}")));
    }
    if !(t2 > t1) {
        return Err(domain("reciprocal_sum_bound", format!("empty range [{t1}, {t2})")));
    }
    Ok(log_sq_over_4pi(t2) - log_sq_over_4pi(t1) + 5.0 * t1.ln() / t1)
}

/// Upper bound (1/4π)·log²(t2/2π) on Σ_{0 < γ < t2} 1/γ, valid for t2 ≥ 5000.
pub fn reciprocal_sum_bound_from_zero(t2: f64) -> Result<f64> {
    if !(t2 >= 5000.0) {
        return Err(domain(
            "reciprocal_sum_bound_from_zero",
            format!("t2 must be at least 5000, got {t2}"),
        ));
    }
    Ok(log_sq_over_4pi(t2))
}

/// Upper bound on Σ_{T0 ≤ γ < T1} ℓ_{c,ε}(γ)/γ for 14 ≤ T0 < T1 ≤ c/ε, using
/// that ℓ decreases on [0, c/ε]:
/// ℓ(T0)/(4π)·[log²(T1/2π) − log²(T0/2π) + 20π·log(T0)/T0].
pub fn weighted_tail_bound(params: KernelParams, t0: f64, t1: f64) -> Result<f64> {
    if !(t0 >= 14.0) {
        return Err(domain("weighted_tail_bound", format!("T0 must be at least 14, got {t0}")));
    }
    if !(t1 > t0) {
        return Err(domain("weighted_tail_bound", format!("empty range [{t0}, {t1})")));
    }
    if t1 > params.cutoff() {
        return Err(domain(
            "weighted_tail_bound",
            format!("T1 = {t1} beyond the monotone range c/ε = {}", params.cutoff()),
        ));
    }
    Ok(logan_ell(params, t0) * reciprocal_sum_bound(t0, t1)?)
}

/// Σ_{γ ≤ up_to} ℓ_{c,ε}(γ)/γ over the table, ascending and compensated.
pub fn exact_weighted_sum(table: &ZeroTable, params: KernelParams, up_to: f64) -> Result<f64> {
    if up_to > table.height() {
        return Err(Error::Range(format!(
            "sum up to {up_to} exceeds the table's guaranteed height {}",
            table.height()
        )));
    }
    let n = table.count_up_to(up_to);
    let mut acc = CompensatedSum::new();
    for &g in &table.ordinates()[..n] {
        acc.add(logan_ell(params, g) / g);
    }
    Ok(acc.value())
}

/// Grid points per e-fold of the geometric grid used for tail estimates.
pub const DEFAULT_TAIL_GRID: usize = 16;

/// Certified value of Σ_{0 < γ ≤ c/ε} ℓ_{c,ε}(γ)/γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedZeroSum {
    /// Exact sum over table ordinates up to `exact_up_to`.
    pub exact: f64,
    pub exact_up_to: f64,
    /// Upper bound for the zeros in [exact_up_to, c/ε].
    pub tail: f64,
    /// True when the table did not reach 14 and the tail starts at 14.
    pub pure_tail: bool,
}

impl WeightedZeroSum {
    pub fn total(&self) -> f64 {
        self.exact + self.tail
    }
}

/// Exact prefix up to min(height, c/ε) plus, when c/ε exceeds the table
/// height, the monotone tail bound applied piecewise on [height, c/ε].
///
/// The pieces are cut at the fixed points 14·e^{k/grid}, independent of the
/// table, so a longer table only ever replaces tail pieces by exact sums.
pub fn certified_weighted_sum(
    table: Option<&ZeroTable>,
    params: KernelParams,
    grid: usize,
) -> Result<WeightedZeroSum> {
    let cutoff = params.cutoff();
    let (exact, exact_up_to, pure_tail) = match table {
        Some(t) if t.height() >= 14.0 => {
            let up_to = t.height().min(cutoff);
            (exact_weighted_sum(t, params, up_to)?, up_to, false)
        }
        _ => (0.0, 14.0, true),
    };
    let tail = if cutoff > exact_up_to {
        piecewise_tail_bound(params, exact_up_to, cutoff, grid.max(1))?
    } else {
        0.0
    };
    Ok(WeightedZeroSum {
        exact,
        exact_up_to,
        tail,
        pure_tail,
    })
}

/// Sum of [`weighted_tail_bound`] over [t0, t1] cut at the grid points
/// 14·e^{k/grid}.
pub fn piecewise_tail_bound(params: KernelParams, t0: f64, t1: f64, grid: usize) -> Result<f64> {
    let step = 1.0 / grid as f64;
    let mut k = ((t0 / 14.0).ln() / step).floor() as i64 + 1;
    let mut acc = CompensatedSum::new();
    let mut a = t0;
    while a < t1 {
        let mut b = 14.0 * (step * k as f64).exp();
        k += 1;
        if b <= a {
            continue;
        }
        if b > t1 {
            b = t1;
        }
        acc.add(weighted_tail_bound(params, a, b)?);
        a = b;
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOW: &str = "14.134725141\n21.022039639\n25.010857580\n";

    fn small_table() -> ZeroTable {
        ZeroTable::load_text(LOW.as_bytes(), "inline").unwrap()
    }

    #[test]
    fn parses_text() {
        let t = small_table();
        assert_eq!(t.len(), 3);
        assert!((t.ordinates()[0] - 14.134725).abs() < 1e-6);
        assert_eq!(t.height(), 25.010857580);
        assert_eq!(t.precision(), DEFAULT_PRECISION);
    }

    #[test]
    fn header_metadata_and_comments() {
        let text = "# zeros\n# height=30.5 precision=1e-9\n\n14.134725141\n# mid comment\n21.022039639\n";
        let t = ZeroTable::load_text(text.as_bytes(), "inline").unwrap();
        assert_eq!(t.height(), 30.5);
        assert_eq!(t.precision(), 1e-9);
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(ZeroTable::load_text("".as_bytes(), "e"), Err(Error::EmptyInput)));
        assert!(matches!(
            ZeroTable::load_text("# only a comment\n".as_bytes(), "e"),
            Err(Error::EmptyInput)
        ));
    }

    #[test]
    fn descending_rejected_at_second_record() {
        match ZeroTable::load_text("25.01\n21.02\n".as_bytes(), "d") {
            Err(Error::NotAscending { record, .. }) => assert_eq!(record, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn garbage_reports_line() {
        match ZeroTable::load_text("14.13\nabc\n".as_bytes(), "g") {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "g:2"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn repeated_entries_allowed() {
        let t = ZeroTable::load_text("14.2\n20.0\n20.0\n".as_bytes(), "m").unwrap();
        assert_eq!(t.count_up_to(20.0), 3);
    }

    #[test]
    fn nonpositive_rejected() {
        assert!(ZeroTable::new(vec![-1.0, 14.2], None, None, "x").is_err());
        assert!(ZeroTable::new(vec![10.0], None, None, "x").is_err());
    }

    #[test]
    fn binary_round_trip_and_errors() {
        let t = small_table();
        let mut buf = Vec::new();
        t.write_binary(&mut buf).unwrap();
        assert_eq!(&buf[..8], BINARY_MAGIC);
        assert_eq!(buf.len(), 16 + 24);
        let back = ZeroTable::load_binary(buf.as_slice(), "b").unwrap();
        assert_eq!(back.ordinates(), t.ordinates());

        let truncated = &buf[..30];
        assert!(matches!(
            ZeroTable::load_binary(truncated, "b"),
            Err(Error::Parse { .. })
        ));
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(ZeroTable::load_binary(bad.as_slice(), "b").is_err());
        let mut empty = BINARY_MAGIC.to_vec();
        empty.extend_from_slice(&0u64.to_le_bytes());
        assert!(matches!(ZeroTable::load_binary(empty.as_slice(), "b"), Err(Error::EmptyInput)));
    }

    #[test]
    fn counting_main_term_examples() {
        let t = 2.0 * PI * std::f64::consts::E;
        assert!((counting_main_term(t).unwrap() - 0.875).abs() < 1e-14);
        let g100 = counting_main_term(100.0).unwrap();
        let want = 100.0 / (2.0 * PI) * (100.0 / (2.0 * PI * std::f64::consts::E)).ln() + 0.875;
        assert_eq!(g100, want);
        // mpmath: 29.00234358732534
        assert!((g100 - 29.002_343_587_325_35).abs() < 1e-12);
        assert!(counting_main_term(13.9).is_err());
    }

    #[test]
    fn counting_bounds_at_fourteen() {
        let e = counting_bounds(14.0).unwrap();
        assert!((e.hi - e.lo - 2.0 * 14f64.ln()).abs() < 1e-12);
        assert!(e.contains(0.0));
    }

    #[test]
    fn reciprocal_bound_domain() {
        assert!(reciprocal_sum_bound(14.0, 14.0).is_err());
        assert!(reciprocal_sum_bound(10.0, 100.0).is_err());
        assert!(reciprocal_sum_bound_from_zero(4999.0).is_err());
        let b = reciprocal_sum_bound_from_zero(5000.0).unwrap();
        assert!((b - 3.5497).abs() < 1e-3);
    }

    #[test]
    fn weighted_tail_bound_example() {
        let c = 30.0;
        let t = 3.061e10;
        let p = KernelParams::new(c, c / t).unwrap();
        let b = weighted_tail_bound(p, 74_920.0, t).unwrap();
        let ell = logan_ell(p, 74_920.0);
        assert!(ell > 0.999_99);
        assert!((b / ell - 32.6).abs() < 0.05);
        assert!(weighted_tail_bound(p, 74_920.0, 2.0 * t).is_err());
        assert!(weighted_tail_bound(p, 2.0 * t, 3.0 * t).is_err());
    }

    #[test]
    fn exact_sum_trivial_cases() {
        let t = small_table();
        let p = KernelParams::new(10.0, 1e-3).unwrap();
        assert_eq!(exact_weighted_sum(&t, p, 14.0).unwrap(), 0.0);
        assert!(exact_weighted_sum(&t, p, 26.0).is_err());
        let s = exact_weighted_sum(&t, p, 25.010_857_58).unwrap();
        assert!(s > 0.0 && s <= t.reciprocal_sum(0.0, 26.0));
    }

    #[test]
    fn certified_sum_without_tail() {
        let t = small_table();
        // cutoff 20 lies inside the table
        let p = KernelParams::new(3.0, 0.15).unwrap();
        let s = certified_weighted_sum(Some(&t), p, 4).unwrap();
        assert_eq!(s.tail, 0.0);
        assert_eq!(s.exact_up_to, p.cutoff());
    }

    #[test]
    fn piecewise_tail_tighter_than_single_piece() {
        let p = KernelParams::new(30.0, 30.0 / 3.061e10).unwrap();
        let one = weighted_tail_bound(p, 74_920.0, p.cutoff()).unwrap();
        let coarse = piecewise_tail_bound(p, 74_920.0, p.cutoff(), 1).unwrap();
        let fine = piecewise_tail_bound(p, 74_920.0, p.cutoff(), 16).unwrap();
        assert!(fine < coarse && coarse < one);
    }

    #[test]
    fn longer_table_never_loosens_the_tail() {
        let p = KernelParams::new(10.0, 1e-3).unwrap();
        let ords: Vec<f64> = vec![14.134725141, 21.022039639, 25.010857580, 30.424876126, 32.935061588];
        let short = ZeroTable::new(ords[..3].to_vec(), None, None, "s").unwrap();
        let long = ZeroTable::new(ords, Some(40.0), None, "l").unwrap();
        let a = certified_weighted_sum(Some(&short), p, 16).unwrap();
        let b = certified_weighted_sum(Some(&long), p, 16).unwrap();
        assert!(b.total() <= a.total());
    }

    #[test]
    fn pure_tail_without_table() {
        let p = KernelParams::new(10.0, 1e-3).unwrap();
        let s = certified_weighted_sum(None, p, 16).unwrap();
        assert!(s.pure_tail && s.exact == 0.0 && s.tail > 0.0);
    }
}
