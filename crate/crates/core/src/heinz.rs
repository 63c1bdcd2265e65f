//! The extremal profile `U(rN) = P[χ_{S+} - χ_{S-}](rN)`, its radial
//! derivative `V(r)` and the sharp constant `C_n = V(1)`.
//!
//! ```text
//! U(rN) = L r 4F3[n/2, (n-1)/2, 1/2, 1 + n/4; n/4, 3/2, (1+n)/2; -r²]
//!       = L r + Σ_{k>=1} c_k r^{2k+1},
//! V(r)  = K (1 + r²)^{-n/2} (1 + n - (n - 2) r² 2F1[1/2, 1; (3+n)/2; -r²]),
//! C_n   = n! (1 + n - (n - 2) 2F1[1/2, 1; (3+n)/2; -1])
//!         / (2^{3n/2} Γ((1+n)/2) Γ((3+n)/2)),
//! ```
//!
//! with `L = 2Γ(1 + n/2) / (√π Γ((1+n)/2))` and `K = Γ(1 + n/2) / (√π Γ((3+n)/2))`.

use std::cell::Cell;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, MAX_PANELS};
use crate::report::{ReportPoint, VerificationReport};
use crate::specfun::{gamma, gamma_ratio, gauss2f1_neg, ln_gamma, pfq, EvalResult, HypergeomSpec};
use crate::{effective_tol, from_usize, lit, Real};

/// Largest radius at which `U` is summed as a power series; beyond it the
/// series slows down and `U` is continued by integrating `V`.
pub const SERIES_MAX_RADIUS: f64 = 0.9;

/// Below this radius the closed forms for `n = 3, 4` switch to their Taylor
/// polynomials (the formulas are `0/0` at the origin).
pub const ORACLE_TAYLOR_RADIUS: f64 = 1e-2;

/// Relative tolerance of the coefficient-split identity.
pub const COEFFICIENT_SPLIT_RTOL: f64 = 1e-12;

/// Which profile a closed form or table refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Which {
    U,
    V,
}

impl FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "U" | "u" => Ok(Which::U),
            "V" | "v" => Ok(Which::V),
            other => Err(Error::InvalidArgument(format!("expected U or V, got {other:?}"))),
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::U => "U",
            Which::V => "V",
        })
    }
}

fn check_dimension(n: usize) -> Result<()> {
    if n >= 2 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("dimension must be at least 2, got {n}")))
    }
}

fn check_unit_interval<T: Real>(r: T) -> Result<()> {
    if r >= T::zero() && r <= T::one() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("radius must lie in [0, 1], got {r}")))
    }
}

fn half<T: Real>(x: T) -> T {
    x * lit(0.5)
}

/// `L = 2Γ(1 + n/2) / (√π Γ((1+n)/2))`, the slope of `U` at the origin.
pub fn profile_leading<T: Real>(n: usize) -> T {
    let nn = from_usize::<T>(n);
    lit::<T>(2.0) * gamma_ratio(T::one() + half(nn), half(T::one() + nn)) / T::PI().sqrt()
}

/// `K = Γ(1 + n/2) / (√π Γ((3+n)/2))`.
fn v_prefactor<T: Real>(n: usize) -> T {
    let nn = from_usize::<T>(n);
    gamma_ratio(T::one() + half(nn), half(lit::<T>(3.0) + nn)) / T::PI().sqrt()
}

/// Power series coefficients of `U(rN)`: `U = leading · r + Σ c_k r^{2k+1}`.
#[derive(Debug, Clone, Copy)]
pub struct ProfileCoefficients<T> {
    pub n: usize,
    pub leading: T,
}

impl<T: Real> ProfileCoefficients<T> {
    pub fn new(n: usize) -> Result<Self> {
        check_dimension(n)?;
        Ok(Self {
            n,
            leading: profile_leading(n),
        })
    }

    /// `c_k = 2(-1)^k (4k + n) Γ(k + n/2) / ((1 + 2k)(2k + n - 1) √π Γ(1 + k) Γ((n-1)/2))`
    /// for `k >= 1`; `c_0` is the leading coefficient.
    pub fn coefficient(&self, k: usize) -> T {
        if k == 0 {
            return self.leading;
        }
        let (nn, kk) = (from_usize::<T>(self.n), from_usize::<T>(k));
        let one = T::one();
        let two = lit::<T>(2.0);
        let log_mag = ln_gamma(kk + half(nn)) - ln_gamma(one + kk) - ln_gamma(half(nn - one));
        let rational = two * (lit::<T>(4.0) * kk + nn)
            / ((one + two * kk) * (two * kk + nn - one) * T::PI().sqrt());
        let sign = if k % 2 == 0 { one } else { -one };
        sign * rational * log_mag.exp()
    }

    /// `c_1, c_2, ...`
    pub fn tail(&self) -> impl Iterator<Item = T> + '_ {
        (1..).map(move |k| self.coefficient(k))
    }
}

/// The sequence `a(m) = (1 + m) Γ(1/2 + m) Γ((3+n)/2) / (√π Γ(3/2 + m + n/2))`,
/// coefficients of `2F1[1/2, 2; (3+n)/2; -y] = Σ (-1)^m a(m) y^m`.
#[derive(Debug, Clone, Copy)]
pub struct MonotoneCoefficients {
    pub n: usize,
}

impl MonotoneCoefficients {
    pub fn a<T: Real>(&self, m: usize) -> T {
        let (nn, mm) = (from_usize::<T>(self.n), from_usize::<T>(m));
        let one = T::one();
        let log = ln_gamma(half(one) + mm) + ln_gamma(half(lit::<T>(3.0) + nn))
            - ln_gamma(lit::<T>(1.5) + mm + half(nn));
        (one + mm) * log.exp() / T::PI().sqrt()
    }

    /// `a(m) / a(m+1) = (1 + m)(3 + 2m + n) / ((2 + m)(1 + 2m))`.
    pub fn ratio<T: Real>(&self, m: usize) -> T {
        let (nn, mm) = (from_usize::<T>(self.n), from_usize::<T>(m));
        let (one, two, three) = (T::one(), lit::<T>(2.0), lit::<T>(3.0));
        (one + mm) * (three + two * mm + nn) / ((two + mm) * (one + two * mm))
    }
}

/// `U(rN)` by the `4F3` power series, `0 <= r < 1`.
pub fn u_series<T: Real>(n: usize, r: T, tol: T) -> Result<EvalResult<T>> {
    check_dimension(n)?;
    if !(r >= T::zero() && r < T::one()) {
        return Err(Error::InvalidArgument(format!("series radius must lie in [0, 1), got {r}")));
    }
    if r == T::zero() {
        return Ok(EvalResult::exact(T::zero()));
    }
    let nn = from_usize::<T>(n);
    let (one, four) = (T::one(), lit::<T>(4.0));
    let scale = profile_leading::<T>(n) * r;
    let spec = HypergeomSpec::new(
        vec![half(nn), half(nn - one), half(one), one + nn / four],
        vec![nn / four, lit(1.5), half(one + nn)],
        -(r * r),
    )?;
    Ok(pfq(&spec, tol / scale)?.scaled(scale))
}

/// `U(rN)` for `0 <= r <= 1`.
///
/// Power series up to [`SERIES_MAX_RADIUS`]; beyond it
/// `U(r) = U(r_0) + ∫_{r_0}^r V(s) ds` with `V` from its `2F1` closed form.
pub fn u_profile<T: Real>(n: usize, r: T, tol: T) -> Result<EvalResult<T>> {
    check_dimension(n)?;
    check_unit_interval(r)?;
    let tol = effective_tol(tol);
    let r0 = lit::<T>(SERIES_MAX_RADIUS);
    if r <= r0 {
        return u_series(n, r, tol);
    }
    let third = tol / lit(3.0);
    let base = u_series(n, r0, third)?;
    let worst_v = Cell::new(T::zero());
    let integral = integrate(
        |s: T| match v_profile(n, s, third) {
            Ok(v) => {
                worst_v.set(worst_v.get().max(v.error_bound));
                v.value
            }
            Err(_) => T::nan(),
        },
        &[r0, r],
        third,
        MAX_PANELS,
    )?;
    Ok(EvalResult::new(
        base.value + integral.value,
        base.error_bound + integral.error_bound + (r - r0) * worst_v.get(),
        base.terms_used + integral.terms_used,
    ))
}

/// `V(r) = ∂_r U(rN)` for `0 <= r <= 1`.
pub fn v_profile<T: Real>(n: usize, r: T, tol: T) -> Result<EvalResult<T>> {
    check_dimension(n)?;
    check_unit_interval(r)?;
    if r == T::zero() {
        return Ok(EvalResult::exact(profile_leading(n)));
    }
    let tol = effective_tol(tol);
    let nn = from_usize::<T>(n);
    let (one, two, three) = (T::one(), lit::<T>(2.0), lit::<T>(3.0));
    let r2 = r * r;
    let scale = v_prefactor::<T>(n) * (one + r2).powf(-half(nn));
    let weight = (nn - two) * r2;
    if weight == T::zero() {
        return Ok(EvalResult::exact(scale * (one + nn)));
    }
    let f = gauss2f1_neg(half(one), one, half(three + nn), -r2, tol / (scale * weight))?;
    Ok(EvalResult::new(
        scale * (one + nn - weight * f.value),
        scale * weight * f.error_bound,
        f.terms_used,
    ))
}

/// `n! / (2^{3n/2} Γ((1+n)/2) Γ((3+n)/2))`.
fn constant_prefactor<T: Real>(n: usize) -> T {
    let nn = from_usize::<T>(n);
    let (one, three) = (T::one(), lit::<T>(3.0));
    let pow2 = lit::<T>(2.0).powf(lit::<T>(1.5) * nn);
    if n <= 100 {
        gamma(nn + one) / (pow2 * gamma(half(one + nn)) * gamma(half(three + nn)))
    } else {
        (ln_gamma(nn + one)
            - lit::<T>(1.5) * nn * lit::<T>(2.0).ln()
            - ln_gamma(half(one + nn))
            - ln_gamma(half(three + nn)))
        .exp()
    }
}

/// The sharp constant `C_n`.
pub fn heinz_constant<T: Real>(n: usize, tol: T) -> Result<EvalResult<T>> {
    check_dimension(n)?;
    let tol = effective_tol(tol);
    let nn = from_usize::<T>(n);
    let (one, two, three) = (T::one(), lit::<T>(2.0), lit::<T>(3.0));
    let prefactor = constant_prefactor::<T>(n);
    let weight = nn - two;
    if weight == T::zero() {
        return Ok(EvalResult::exact(prefactor * (one + nn)));
    }
    let f = gauss2f1_neg(half(one), one, half(three + nn), -one, tol / (prefactor * weight))?;
    Ok(EvalResult::new(
        prefactor * (one + nn - weight * f.value),
        prefactor * weight * f.error_bound,
        f.terms_used,
    ))
}

/// Taylor polynomial of `U` (or `V`) through `r^5` (`r^4`).
fn taylor<T: Real>(n: usize, which: Which, r: T) -> T {
    let c = ProfileCoefficients::<T>::new(n).expect("n >= 2");
    let (c0, c1, c2) = (c.coefficient(0), c.coefficient(1), c.coefficient(2));
    let r2 = r * r;
    match which {
        Which::U => r * (c0 + r2 * (c1 + r2 * c2)),
        Which::V => c0 + r2 * (lit::<T>(3.0) * c1 + r2 * lit::<T>(5.0) * c2),
    }
}

/// Closed forms of `U(rN)` and `V(r)` for `n = 2, 3, 4`, `0 <= r <= 1`.
pub fn closed_form_oracle<T: Real>(n: usize, which: Which, r: T) -> Result<T> {
    if !(2..=4).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    check_unit_interval(r)?;
    let pi = T::PI();
    let (one, two, three, four) = (T::one(), lit::<T>(2.0), lit::<T>(3.0), lit::<T>(4.0));
    let r2 = r * r;
    if n == 2 {
        return Ok(match which {
            Which::U => four * r.atan() / pi,
            Which::V => four / (pi * (one + r2)),
        });
    }
    if r < lit(ORACLE_TAYLOR_RADIUS) {
        return Ok(taylor(n, which, r));
    }
    let s = (one + r2).sqrt();
    Ok(match (n, which) {
        (3, Which::U) => (-one + r2 + s) / (r * s),
        (3, Which::V) => (one - s - r2 * (-three + s)) / (r2 * (one + r2) * s),
        (4, Which::U) => {
            (two * r * (-one + r2) + two * (one + r2) * (one + r2) * r.atan()) / (pi * r2 * (one + r2))
        }
        (_, _) => {
            four * (r + three * r * r2 - (one + r2) * (one + r2) * r.atan())
                / (pi * r * r2 * (one + r2) * (one + r2))
        }
    })
}

/// Checks that `V` is non-increasing along `grid` and that `V >= C_n` at
/// every grid point, each up to `2 tol` plus the evaluation error bounds.
///
/// Pair rows have `x = [r_i, r_{i+1}]`, `lhs = V(r_{i+1})`, `rhs = V(r_i)`;
/// bound rows have `x = [r_i]`, `lhs = C_n`, `rhs = V(r_i)`.
pub fn check_monotone_v<T: Real>(n: usize, grid: &[T], tol: T) -> Result<VerificationReport<T>> {
    check_dimension(n)?;
    if grid.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::InvalidArgument("grid must be sorted increasingly".into()));
    }
    for &r in grid {
        check_unit_interval(r)?;
    }
    let slack = lit::<T>(2.0) * tol;
    let values = grid
        .iter()
        .map(|&r| v_profile(n, r, tol))
        .collect::<Result<Vec<_>>>()?;
    let c = heinz_constant(n, tol)?;
    let mut points = Vec::with_capacity(2 * grid.len());
    for (i, w) in values.windows(2).enumerate() {
        points.push(ReportPoint::inequality(
            vec![grid[i], grid[i + 1]],
            w[1].value,
            w[0].value,
            slack + w[0].error_bound + w[1].error_bound,
        ));
    }
    for (&r, v) in grid.iter().zip(&values) {
        points.push(ReportPoint::inequality(
            vec![r],
            c.value,
            v.value,
            slack + c.error_bound + v.error_bound,
        ));
    }
    Ok(VerificationReport::from_points(points))
}

/// Signed term `sign · exp(log_mag)`.
fn signed_exp<T: Real>(negative: bool, log_mag: T) -> T {
    let v = log_mag.exp();
    if negative {
        -v
    } else {
        v
    }
}

/// Checks, for `k = 1..=k_max`, the split of the `V` series coefficient
///
/// ```text
/// 2(-1)^k (4k+n) Γ(k+n/2) / ((2k+n-1) √π Γ(1+k) Γ((n-1)/2))
///   = (-1)^k 2^n Γ(1+n/2) Γ(k+n/2) / (π k! Γ(n))
///   + 2(-1)^k (n-2) Γ(k+n/2) / ((2k+n-1) √π Γ(k) Γ((1+n)/2))
/// ```
///
/// to relative accuracy [`COEFFICIENT_SPLIT_RTOL`] (identity rows, `x = [k]`).
pub fn check_coefficient_split<T: Real>(n: usize, k_max: usize) -> Result<VerificationReport<T>> {
    check_dimension(n)?;
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    let nn = from_usize::<T>(n);
    let (one, two, four) = (T::one(), lit::<T>(2.0), lit::<T>(4.0));
    let ln_pi = T::PI().ln();
    let ln_sqrt_pi = half(ln_pi);
    let points = (1..=k_max)
        .map(|k| {
            let kk = from_usize::<T>(k);
            let neg = k % 2 == 1;
            let lg_shift = ln_gamma(kk + half(nn));
            let odd = two * kk + nn - one;
            let lhs = signed_exp(
                neg,
                (two * (four * kk + nn) / odd).ln() + lg_shift
                    - ln_sqrt_pi
                    - ln_gamma(one + kk)
                    - ln_gamma(half(nn - one)),
            );
            let first = signed_exp(
                neg,
                nn * two.ln() + ln_gamma(one + half(nn)) + lg_shift
                    - ln_pi
                    - ln_gamma(kk + one)
                    - ln_gamma(nn),
            );
            let second = if n == 2 {
                T::zero()
            } else {
                signed_exp(
                    neg,
                    (two * (nn - two) / odd).ln() + lg_shift
                        - ln_sqrt_pi
                        - ln_gamma(kk)
                        - ln_gamma(half(one + nn)),
                )
            };
            let rhs = first + second;
            ReportPoint::identity(vec![kk], lhs, rhs, lit::<T>(COEFFICIENT_SPLIT_RTOL) * lhs.abs())
        })
        .collect();
    Ok(VerificationReport::from_points(points))
}

/// Positivity behind the monotonicity of `V`:
/// - rows `x = [m]`, `m = 0..=100`: `a(m) / a(m+1)` evaluated from the
///   gamma formula for `a`, required to exceed `lhs = 1`;
/// - rows `x = [y]`: `2F1[1/2, 2; (3+n)/2; -y]` (rhs) must exceed its own
///   error bound (lhs), i.e. be certified positive.
pub fn check_positivity_2f1<T: Real>(n: usize, y_grid: &[T]) -> Result<VerificationReport<T>> {
    check_dimension(n)?;
    let coeffs = MonotoneCoefficients { n };
    let mut points: Vec<ReportPoint<T>> = (0..=100)
        .map(|m| {
            let ratio = coeffs.a::<T>(m) / coeffs.a::<T>(m + 1);
            ReportPoint::inequality(vec![from_usize(m)], T::one(), ratio, T::zero())
        })
        .collect();
    let nn = from_usize::<T>(n);
    let tol = lit::<T>(1e-13).max(lit(T::TOL_FLOOR));
    for &y in y_grid {
        check_unit_interval(y)?;
        let f = gauss2f1_neg(lit(0.5), lit(2.0), half(lit::<T>(3.0) + nn), -y, tol)?;
        points.push(ReportPoint::inequality(vec![y], f.error_bound, f.value, T::zero()));
    }
    Ok(VerificationReport::from_points(points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{PI, SQRT_2};

    #[test]
    fn constants_table() {
        let c2 = heinz_constant(2, 1e-13_f64).unwrap();
        assert!((c2.value - 2.0 / PI).abs() <= 1e-12);
        let c3 = heinz_constant(3, 1e-13_f64).unwrap();
        assert!((c3.value - (SQRT_2 - 1.0)).abs() <= 1e-12);
        let c4 = heinz_constant(4, 1e-13_f64).unwrap();
        assert!((c4.value - (4.0 - PI) / PI).abs() <= 1e-12);
        assert!(heinz_constant(10, 1e-13_f64).unwrap().value > 0.0);
        assert!(heinz_constant(1, 1e-13_f64).is_err());
    }

    #[test]
    fn leading_coefficient_two_ways() {
        for n in 2..20 {
            let a: f64 = profile_leading(n);
            let b = (1.0 + n as f64) * v_prefactor::<f64>(n);
            assert_relative_eq!(a, b, max_relative = 1e-14);
        }
    }

    #[test]
    fn profile_examples() {
        let u = u_profile(2, 0.5, 1e-13_f64).unwrap();
        assert_relative_eq!(u.value, 0.590_334_470_601_733_9, epsilon = 1e-12);
        assert_eq!(u_profile(5, 0.0, 1e-12_f64).unwrap().value, 0.0);
        let u = u_profile(4, 0.5, 1e-13_f64).unwrap();
        assert_relative_eq!(u.value, closed_form_oracle(4, Which::U, 0.5).unwrap(), epsilon = 1e-12);
        assert_relative_eq!(u.value, 0.711_892_449_663_235_1, epsilon = 1e-12);

        assert_relative_eq!(v_profile(2, 0.0, 1e-13_f64).unwrap().value, 4.0 / PI, epsilon = 1e-14);
        assert_relative_eq!(v_profile(3, 1.0, 1e-13_f64).unwrap().value, SQRT_2 - 1.0, epsilon = 1e-12);
        assert_relative_eq!(v_profile(2, 0.5, 1e-13_f64).unwrap().value, 4.0 / (PI * 1.25), epsilon = 1e-14);
    }

    #[test]
    fn boundary_values() {
        for n in 2..=8 {
            let u = u_profile(n, 1.0, 1e-12_f64).unwrap();
            assert!((u.value - 1.0).abs() <= 1e-8, "n={n}: {u:?}");
            let v = v_profile(n, 1.0, 1e-13_f64).unwrap();
            let c = heinz_constant(n, 1e-13_f64).unwrap();
            assert!((v.value - c.value).abs() <= 1e-10);
        }
    }

    #[test]
    fn oracle_examples() {
        assert_relative_eq!(closed_form_oracle(3, Which::U, 0.5_f64).unwrap(), 0.658_359_2, epsilon = 1e-7);
        assert_relative_eq!(closed_form_oracle(4, Which::V, 1.0_f64).unwrap(), (4.0 - PI) / PI, epsilon = 1e-14);
        assert_eq!(closed_form_oracle(2, Which::U, 0.0_f64).unwrap(), 0.0);
        assert_relative_eq!(closed_form_oracle(3, Which::V, 0.0_f64).unwrap(), 1.5, epsilon = 1e-15);
        assert!(matches!(
            closed_form_oracle(5, Which::U, 0.5_f64),
            Err(Error::UnsupportedDimension(5))
        ));
    }

    #[test]
    fn taylor_switch_is_continuous() {
        // Just above and below the switch the two branches agree.
        let r = ORACLE_TAYLOR_RADIUS;
        for n in [3, 4] {
            for which in [Which::U, Which::V] {
                let below = taylor::<f64>(n, which, r);
                let above = closed_form_oracle(n, which, r * (1.0 + 1e-12)).unwrap();
                assert!((below - above).abs() < 1e-10, "n={n} {which}: {below} {above}");
            }
        }
    }

    #[test]
    fn series_coefficients_match_4f3() {
        // Summing the gamma-formula coefficients reproduces the 4F3 route.
        for n in [2usize, 3, 6] {
            let c = ProfileCoefficients::<f64>::new(n).unwrap();
            let r = 0.4_f64;
            let mut sum = c.leading * r;
            for (k, ck) in c.tail().take(60).enumerate() {
                sum += ck * r.powi(2 * (k as i32 + 1) + 1);
            }
            assert_relative_eq!(sum, u_series(n, r, 1e-13).unwrap().value, epsilon = 1e-13);
        }
        let c = ProfileCoefficients::<f64>::new(5).unwrap();
        for (k, ck) in c.tail().take(20).enumerate() {
            assert_eq!(ck < 0.0, k % 2 == 0, "sign of c_{}", k + 1);
        }
    }

    #[test]
    fn monotone_examples() {
        let grid: Vec<f64> = (0..=20).map(|i| i as f64 * 0.05).collect();
        assert!(check_monotone_v(2, &grid, 1e-12).unwrap().pass());
        assert!(check_monotone_v(7, &grid, 1e-12).unwrap().pass());
        let single = check_monotone_v(3, &[0.5], 1e-12).unwrap();
        assert!(single.pass());
        assert_eq!(single.points.len(), 1);
        assert!(check_monotone_v(3, &[0.5, 0.4], 1e-12).is_err());
    }

    #[test]
    fn coefficient_split_examples() {
        for (n, k) in [(3, 30), (2, 30), (6, 50)] {
            let rep = check_coefficient_split::<f64>(n, k).unwrap();
            assert!(rep.pass(), "n={n}: {:?}", rep.summary);
            assert_eq!(rep.points.len(), k);
        }
    }

    #[test]
    fn positivity_examples() {
        let rep = check_positivity_2f1(3, &[1.0_f64]).unwrap();
        assert!(rep.pass());
        assert!(rep.points.last().unwrap().rhs > 0.0);
        assert_relative_eq!(MonotoneCoefficients { n: 2 }.ratio::<f64>(0), 2.5, epsilon = 1e-15);
        let rep = check_positivity_2f1(10, &[0.0_f64]).unwrap();
        assert_eq!(rep.points.last().unwrap().rhs, 1.0);
        let a = MonotoneCoefficients { n: 2 };
        for m in 0..=100 {
            let direct = a.a::<f64>(m) / a.a::<f64>(m + 1);
            assert_relative_eq!(direct, a.ratio::<f64>(m), max_relative = 1e-12);
        }
    }

    #[test]
    fn which_parsing() {
        assert_eq!("U".parse::<Which>().unwrap(), Which::U);
        assert_eq!("v".parse::<Which>().unwrap(), Which::V);
        assert!("W".parse::<Which>().is_err());
    }
}
