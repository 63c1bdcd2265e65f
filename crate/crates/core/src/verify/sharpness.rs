//! Radial derivatives of `u_m = P[f_m]` at `rN`, approaching `C_n`.

use rayon::prelude::*;
use serde::Serialize;

use super::maps::HmProfile;
use crate::ballharmonic::{axisym_radial_derivative, SignProfile};
use crate::error::{Error, Result};
use crate::heinz::heinz_constant;
use crate::report::{ReportPoint, VerificationReport};
use crate::{effective_tol, from_usize, lit, Real};

/// Allowed undershoot of an estimate below `C_n`.
pub const LOWER_BOUND_SLACK: f64 = 1e-6;

/// Allowed distance between the extrapolated limit-profile value and `C_n`.
pub const EXTRAPOLATION_TOLERANCE: f64 = 1e-3;

/// Only sequence members with `m` above this are required to decrease in `m`.
pub const MONOTONE_FROM_M: usize = 10;

/// One estimate `d(n, m, r) = ∂_r u_m(rN)_n`; `m = None` is the limit
/// profile `sign(t)`, whose extension is `U`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharpnessRow<T> {
    pub m: Option<usize>,
    pub r: T,
    pub estimate: T,
    pub error_bound: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessTable<T> {
    pub n: usize,
    pub c_n: T,
    pub c_n_error: T,
    pub tol: T,
    pub rows: Vec<SharpnessRow<T>>,
}

/// Orders `Some(m)` by `m` with `None` (the limit) last.
fn m_key(m: Option<usize>) -> usize {
    m.unwrap_or(usize::MAX)
}

impl<T: Real> SharpnessTable<T> {
    /// Distinct `m` values, the limit last.
    pub fn m_values(&self) -> Vec<Option<usize>> {
        let mut ms: Vec<Option<usize>> = self.rows.iter().map(|row| row.m).collect();
        ms.sort_by_key(|&m| m_key(m));
        ms.dedup();
        ms
    }

    /// Rows for one `m`, sorted by `r`.
    pub fn rows_for(&self, m: Option<usize>) -> Vec<SharpnessRow<T>> {
        let mut rows: Vec<SharpnessRow<T>> = self.rows.iter().copied().filter(|row| row.m == m).collect();
        rows.sort_by(|a, b| a.r.partial_cmp(&b.r).expect("finite radii"));
        rows
    }

    pub fn min_estimate(&self) -> Option<T> {
        self.rows.iter().map(|row| row.estimate).reduce(T::min)
    }

    /// Linear extrapolation in `1 - r` to `r = 1` through the two largest radii.
    pub fn extrapolate(&self, m: Option<usize>) -> Option<T> {
        let rows = self.rows_for(m);
        let [.., a, b] = rows.as_slice() else {
            return None;
        };
        let (sa, sb) = (T::one() - a.r, T::one() - b.r);
        if sa == sb {
            return None;
        }
        Some(b.estimate - sb * (b.estimate - a.estimate) / (sb - sa))
    }

    /// Rows `x = [m, r]` (`m = 0` for the limit): `C_n - slack <= d`.
    pub fn lower_bound_report(&self) -> VerificationReport<T> {
        let bound = self.c_n - lit(LOWER_BOUND_SLACK);
        let points = self
            .rows
            .iter()
            .map(|row| {
                ReportPoint::inequality(
                    vec![from_usize(row.m.unwrap_or(0)), row.r],
                    bound,
                    row.estimate,
                    row.error_bound + self.c_n_error,
                )
            })
            .collect();
        VerificationReport::from_points(points)
    }

    /// Rows `x = [m, m', r]` with consecutive `m < m'` beyond
    /// [`MONOTONE_FROM_M`] (limit encoded as `m' = 0`): `d(m', r) <= d(m, r)`.
    pub fn monotone_report(&self) -> VerificationReport<T> {
        let ms: Vec<Option<usize>> = self
            .m_values()
            .into_iter()
            .filter(|&m| m_key(m) > MONOTONE_FROM_M)
            .collect();
        let mut points = Vec::new();
        for pair in ms.windows(2) {
            let (lo, hi) = (self.rows_for(pair[0]), self.rows_for(pair[1]));
            for a in &lo {
                if let Some(b) = hi.iter().find(|b| b.r == a.r) {
                    points.push(ReportPoint::inequality(
                        vec![
                            from_usize(pair[0].unwrap_or(0)),
                            from_usize(pair[1].unwrap_or(0)),
                            a.r,
                        ],
                        b.estimate,
                        a.estimate,
                        self.tol + a.error_bound + b.error_bound,
                    ));
                }
            }
        }
        VerificationReport::from_points(points)
    }

    /// Identity row `x = [1]`: extrapolated limit-profile value against `C_n`.
    pub fn extrapolation_report(&self) -> VerificationReport<T> {
        let points = self
            .extrapolate(None)
            .map(|e| {
                ReportPoint::identity(vec![T::one()], e, self.c_n, lit(EXTRAPOLATION_TOLERANCE))
            })
            .into_iter()
            .collect();
        VerificationReport::from_points(points)
    }

    /// All three checks.
    pub fn report(&self) -> VerificationReport<T> {
        VerificationReport::merge([
            self.lower_bound_report(),
            self.monotone_report(),
            self.extrapolation_report(),
        ])
    }
}

/// Estimates `∂_r` of the last component of `u_m` at `rN` for every
/// `m ∈ m_list` and the limit profile, at every `r ∈ r_list`.
pub fn sharpness_sweep<T: Real>(
    n: usize,
    m_list: &[usize],
    r_list: &[T],
    tol: T,
) -> Result<SharpnessTable<T>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("dimension must be >= 2, got {n}")));
    }
    let profiles = m_list
        .iter()
        .map(|&m| HmProfile::new(m).map(Some))
        .chain(std::iter::once(Ok(None)))
        .collect::<Result<Vec<Option<HmProfile>>>>()?;
    for &r in r_list {
        if !(r >= T::zero() && r < T::one()) {
            return Err(Error::InvalidArgument(format!("radius must lie in [0, 1), got {r}")));
        }
    }
    let tol = effective_tol(tol);
    let c = heinz_constant(n, tol)?;
    let jobs: Vec<(Option<HmProfile>, T)> = profiles
        .iter()
        .flat_map(|&p| r_list.iter().map(move |&r| (p, r)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(p, r)| {
            let d = match p {
                Some(h) => axisym_radial_derivative(&h, n, r, tol)?,
                None => axisym_radial_derivative(&SignProfile, n, r, tol)?,
            };
            Ok(SharpnessRow {
                m: p.map(|h| h.m),
                r,
                estimate: d.value,
                error_bound: d.error_bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SharpnessTable {
        n,
        c_n: c.value,
        c_n_error: c.error_bound,
        tol,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn limit_profile_n2() {
        let t = sharpness_sweep(2, &[], &[0.999_f64], 1e-12).unwrap();
        let row = t.rows_for(None)[0];
        let exact = 4.0 / (PI * (1.0 + 0.999 * 0.999));
        assert!((row.estimate - exact).abs() < 1e-9);
        assert!((row.estimate - 0.63726).abs() < 1e-5);
    }

    #[test]
    fn small_m_is_above_the_constant() {
        let t = sharpness_sweep(3, &[2], &[0.9_f64], 1e-12).unwrap();
        assert!(t.lower_bound_report().pass());
        // h_2 is the identity profile, so u_2(rN)_n = r.
        assert!((t.rows_for(Some(2))[0].estimate - 1.0).abs() < 1e-10);
    }

    #[test]
    fn extrapolates_to_the_constant() {
        let t = sharpness_sweep(2, &[5], &[0.99_f64, 1.0 - 1e-6], 1e-12).unwrap();
        let e = t.extrapolate(None).unwrap();
        assert!((e - 2.0 / PI).abs() < 1e-3);
        assert!(t.extrapolation_report().pass());
        assert!(sharpness_sweep(2, &[1], &[0.9_f64], 1e-12).is_err());
        assert!(sharpness_sweep(2, &[5], &[1.0_f64], 1e-12).is_err());
    }

    #[test]
    fn full_sweep() {
        for n in [2, 3] {
            let t = sharpness_sweep(n, &[2, 5, 20, 100], &[0.9_f64, 0.99, 0.999], 1e-10).unwrap();
            assert_eq!(t.rows.len(), 15);
            let rep = t.report();
            assert!(rep.pass(), "n={n}: {:#?}", t.rows);
        }
    }
}
