//! Verification reports and their JSON/CSV encodings.
//!
//! JSON layout: `{"points": [{"x", "lhs", "rhs", "margin", "budget"}],
//! "summary": {"min_margin", "worst_point", "pass"}}`. CSV has one header row
//! `x,lhs,rhs,margin,budget` with multi-component `x` joined by `;`.

use std::io::Write;

use serde::Serialize;

use crate::Real;

/// One checked point.
///
/// For an inequality `lhs <= rhs` the margin is `rhs - lhs`; for an identity
/// it is the negated discrepancy `-|lhs - rhs|`. Either way the point passes
/// when `margin >= -budget`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportPoint<T> {
    pub x: Vec<T>,
    pub lhs: T,
    pub rhs: T,
    pub margin: T,
    pub budget: T,
}

impl<T: Real> ReportPoint<T> {
    pub fn inequality(x: Vec<T>, lhs: T, rhs: T, budget: T) -> Self {
        Self {
            x,
            lhs,
            rhs,
            margin: rhs - lhs,
            budget,
        }
    }

    pub fn identity(x: Vec<T>, lhs: T, rhs: T, budget: T) -> Self {
        Self {
            x,
            lhs,
            rhs,
            margin: -(lhs - rhs).abs(),
            budget,
        }
    }

    pub fn passes(&self) -> bool {
        // NaN margins fail.
        self.margin >= -self.budget
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportSummary<T> {
    /// Smallest margin over all points (`null` in JSON for an empty report).
    pub min_margin: T,
    /// Index of the point with the least slack `margin + budget`.
    pub worst_point: Option<usize>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport<T> {
    pub points: Vec<ReportPoint<T>>,
    pub summary: ReportSummary<T>,
}

impl<T: Real> VerificationReport<T> {
    pub fn from_points(points: Vec<ReportPoint<T>>) -> Self {
        let min_margin = points
            .iter()
            .map(|p| p.margin)
            .fold(T::infinity(), |acc, m| if m < acc || m.is_nan() { m } else { acc });
        let worst_point = points
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                (a.margin + a.budget)
                    .partial_cmp(&(b.margin + b.budget))
                    .unwrap_or(std::cmp::Ordering::Less)
            })
            .map(|(i, _)| i);
        let pass = points.iter().all(ReportPoint::passes);
        Self {
            points,
            summary: ReportSummary {
                min_margin,
                worst_point,
                pass,
            },
        }
    }

    pub fn pass(&self) -> bool {
        self.summary.pass
    }

    /// Concatenates reports; the summary is recomputed.
    pub fn merge(reports: impl IntoIterator<Item = Self>) -> Self {
        Self::from_points(reports.into_iter().flat_map(|r| r.points).collect())
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    /// Writes the points as CSV. `prefix` columns (name, value) are prepended
    /// to every row, e.g. `[("check", "monotone"), ("n", "3")]`.
    pub fn write_csv<W: Write>(
        &self,
        writer: &mut csv::Writer<W>,
        prefix: &[(&str, String)],
        header: bool,
    ) -> csv::Result<()> {
        if header {
            let mut row: Vec<&str> = prefix.iter().map(|(k, _)| *k).collect();
            row.extend(["x", "lhs", "rhs", "margin", "budget"]);
            writer.write_record(&row)?;
        }
        for p in &self.points {
            let mut row: Vec<String> = prefix.iter().map(|(_, v)| v.clone()).collect();
            row.push(
                p.x.iter()
                    .map(|v| format_number(to_f64(*v)))
                    .collect::<Vec<_>>()
                    .join(";"),
            );
            for v in [p.lhs, p.rhs, p.margin, p.budget] {
                row.push(format_number(to_f64(v)));
            }
            writer.write_record(&row)?;
        }
        Ok(())
    }
}

fn to_f64<T: Real>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Formats with at most 12 significant digits, trailing zeros dropped: plain decimals for
/// `1e-3 <= |v| < 1e12`, scientific (`1.23456789012e-5`) otherwise.
pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.11e}");
    // Exponent after rounding to 12 significant digits.
    let exponent: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    if !(-3..12).contains(&exponent) {
        let (mantissa, e) = sci.split_once('e').expect("scientific form");
        return format!("{}e{e}", trim_zeros(mantissa));
    }
    let decimals = (11 - exponent) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
