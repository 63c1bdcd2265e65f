//! Generalized hypergeometric series with certified truncation bounds.
//!
//! Every evaluation returns an [`EvalResult`] whose `error_bound` covers the
//! truncated tail plus a first-order bound on floating point rounding in the
//! term recurrence and the (compensated) summation.

mod gamma;

pub use gamma::{gamma, gamma_ratio, ln_gamma, ln_gamma_signed};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::{effective_tol, from_usize, lit, Real};

/// Hard budget on the number of series terms.
pub const MAX_TERMS: usize = 100_000;

/// Below this argument `gauss2f1_neg` maps `x` to `x / (x - 1)`.
const PFAFF_SWITCH: f64 = -0.5;

/// Number of consecutive shrinking terms an alternating series must show
/// before its tail is bounded by the next term.
const ALTERNATING_DECREASES: usize = 3;

/// A computed value with an upper bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult<T> {
    pub value: T,
    pub error_bound: T,
    pub terms_used: usize,
}

impl<T: Real> EvalResult<T> {
    pub fn new(value: T, error_bound: T, terms_used: usize) -> Self {
        Self {
            value,
            error_bound,
            terms_used: terms_used.max(1),
        }
    }

    /// A value known without error.
    pub fn exact(value: T) -> Self {
        Self::new(value, T::zero(), 1)
    }

    /// Multiplies value and bound by `factor`.
    pub fn scaled(self, factor: T) -> Self {
        Self {
            value: self.value * factor,
            error_bound: self.error_bound * factor.abs(),
            terms_used: self.terms_used,
        }
    }

    /// True when `other` lies within the sum of both error bounds plus `slack`.
    pub fn agrees_with(&self, other: &Self, slack: T) -> bool {
        (self.value - other.value).abs() <= self.error_bound + other.error_bound + slack
    }
}

/// Parameters `(a_1..a_p; b_1..b_q)` and argument `x` of a `pFq` evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypergeomSpec<T> {
    pub upper: Vec<T>,
    pub lower: Vec<T>,
    pub arg: T,
}

impl<T: Real> HypergeomSpec<T> {
    pub fn new(upper: Vec<T>, lower: Vec<T>, arg: T) -> Result<Self> {
        let spec = Self { upper, lower, arg };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        for &b in &self.lower {
            if is_nonpositive_integer(b) || !b.is_finite() {
                return Err(Error::InvalidLowerParameter {
                    value: b.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        if !self.arg.is_finite() || self.upper.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidArgument("non-finite hypergeometric input".into()));
        }
        Ok(())
    }

    /// Ratio `term_{k+1} / term_k`.
    pub fn term_ratio(&self, k: usize) -> T {
        let kk = from_usize::<T>(k);
        let num = self.upper.iter().fold(T::one(), |acc, &a| acc * (a + kk));
        let den = self.lower.iter().fold(T::one(), |acc, &b| acc * (b + kk));
        num / den * self.arg / (kk + T::one())
    }

    /// Degree of the polynomial when some upper parameter is `0, -1, -2, ...`.
    fn terminating_degree(&self) -> Option<usize> {
        self.upper
            .iter()
            .filter(|&&a| is_nonpositive_integer(a))
            .map(|&a| (-a).to_usize().unwrap_or(0))
            .min()
    }
}

fn is_nonpositive_integer<T: Real>(v: T) -> bool {
    v <= T::zero() && v == v.floor()
}

/// Rising factorial `(y)_k = y (y + 1) ... (y + k - 1)`, with `(y)_0 = 1`.
///
/// Exact product for `k <= 64`; beyond that the log-gamma difference with
/// sign tracking.
pub fn pochhammer<T: Real>(y: T, k: usize) -> T {
    if k <= 64 {
        let mut acc = T::one();
        for j in 0..k {
            acc = acc * (y + from_usize(j));
        }
        return acc;
    }
    if is_nonpositive_integer(y) {
        // One factor of the product is zero.
        return if (-y).to_usize().is_some_and(|m| m < k) {
            T::zero()
        } else {
            let mut acc = T::one();
            for j in 0..k {
                acc = acc * (y + from_usize(j));
            }
            acc
        };
    }
    let top = y + from_usize(k);
    let (l_top, s_top) = ln_gamma_signed(top);
    let (l_y, s_y) = ln_gamma_signed(y);
    s_top * s_y * (l_top - l_y).exp()
}

/// Upper bound on `sup_{j >= k} |term_{j+1} / term_j|`, valid once every
/// parameter shifted by `k` is positive. Upper parameters are paired with the
/// largest denominators (the lower parameters plus the `1` of `k!`); each
/// factor `(a + j) / (d + j)` is monotone in `j`, so its supremum is either its
/// limit 1 or its value at `j = k`.
struct RatioBound<T> {
    pairs: Vec<(T, T)>,
    unpaired: Vec<T>,
    abs_arg: T,
    threshold: T,
}

impl<T: Real> RatioBound<T> {
    fn new(spec: &HypergeomSpec<T>) -> Option<Self> {
        let mut upper = spec.upper.clone();
        let mut denoms = spec.lower.clone();
        denoms.push(T::one());
        if upper.len() > denoms.len() {
            return None;
        }
        upper.sort_by(|a, b| a.partial_cmp(b).expect("finite parameters"));
        denoms.sort_by(|a, b| a.partial_cmp(b).expect("finite parameters"));
        let offset = denoms.len() - upper.len();
        let unpaired = denoms[..offset].to_vec();
        let pairs = upper
            .iter()
            .zip(&denoms[offset..])
            .map(|(&a, &d)| (a, d))
            .collect();
        let threshold = spec
            .upper
            .iter()
            .chain(&denoms)
            .fold(T::zero(), |acc, &v| acc.max(-v));
        Some(Self {
            pairs,
            unpaired,
            abs_arg: spec.arg.abs(),
            threshold,
        })
    }

    fn sup_from(&self, k: usize) -> Option<T> {
        let kk = from_usize::<T>(k);
        if kk <= self.threshold {
            return None;
        }
        let paired = self
            .pairs
            .iter()
            .fold(T::one(), |acc, &(a, d)| acc * ((a + kk) / (d + kk)).max(T::one()));
        let unpaired = self
            .unpaired
            .iter()
            .fold(T::one(), |acc, &d| acc / (d + kk));
        Some(self.abs_arg * paired * unpaired)
    }
}

/// Neumaier-compensated running sum.
#[derive(Default, Clone, Copy)]
struct CompensatedSum<T> {
    sum: T,
    comp: T,
}

impl<T: Real> CompensatedSum<T> {
    fn zero() -> Self {
        Self {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    fn add(&mut self, v: T) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp = self.comp + ((self.sum - t) + v);
        } else {
            self.comp = self.comp + ((v - t) + self.sum);
        }
        self.sum = t;
    }

    fn value(&self) -> T {
        self.sum + self.comp
    }
}

/// Sums `pFq(a; b; x)` term-recursively until the tail is certified below `tol`.
///
/// Truncation rule, applied once all parameters shifted by the term index are
/// positive and the ratio bound `rho` of [`RatioBound`] is available:
/// - `x > 0`: stop when `|t_K| / (1 - rho) <= tol` with `rho < 1`;
/// - `x < 0`: after three consecutive shrinking terms and with `rho <= 1`
///   (so the tail alternates with non-increasing magnitude), stop when the
///   next term satisfies `|t_K| <= tol`.
pub fn pfq<T: Real>(spec: &HypergeomSpec<T>, tol: T) -> Result<EvalResult<T>> {
    spec.validate()?;
    if !(tol > T::zero()) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let tol = effective_tol(tol);
    if spec.arg == T::zero() {
        return Ok(EvalResult::exact(T::one()));
    }
    let eps = T::epsilon();
    let work = from_usize::<T>(spec.upper.len() + spec.lower.len() + 2);

    if let Some(degree) = spec.terminating_degree() {
        let mut sum = CompensatedSum::zero();
        let mut weighted = T::zero();
        let mut term = T::one();
        for k in 0..=degree {
            sum.add(term);
            weighted = weighted + (lit::<T>(2.0) + from_usize::<T>(k) * work) * term.abs();
            term = term * spec.term_ratio(k);
        }
        return Ok(EvalResult::new(sum.value(), eps * weighted, degree + 1));
    }

    let q_plus_one = spec.lower.len() + 1;
    let p = spec.upper.len();
    if p > q_plus_one {
        return Err(Error::NonConvergent { terms: 0 });
    }
    let abs_x = spec.arg.abs();
    if p == q_plus_one {
        if abs_x > T::one() {
            return Err(Error::NonConvergent { terms: 0 });
        }
        if abs_x == T::one() {
            // Terms behave like k^(sum a - sum b - 1).
            let excess = spec.lower.iter().copied().sum::<T>() - spec.upper.iter().copied().sum::<T>();
            let needed = if spec.arg > T::zero() { T::zero() } else { -T::one() };
            if excess <= needed {
                return Err(Error::NonConvergent { terms: 0 });
            }
        }
    }

    let bound = RatioBound::new(spec).ok_or(Error::NonConvergent { terms: 0 })?;
    let negative = spec.arg < T::zero();
    let mut sum = CompensatedSum::zero();
    let mut weighted = T::zero();
    let mut term = T::one();
    let mut decreases = 0usize;

    for k in 0..MAX_TERMS {
        sum.add(term);
        weighted = weighted + (lit::<T>(2.0) + from_usize::<T>(k) * work) * term.abs();
        let next = term * spec.term_ratio(k);
        if next.abs() < term.abs() {
            decreases += 1;
        } else {
            decreases = 0;
        }
        term = next;

        let Some(rho) = bound.sup_from(k + 1) else {
            continue;
        };
        let tail = if negative {
            if decreases < ALTERNATING_DECREASES || rho > T::one() {
                continue;
            }
            term.abs()
        } else {
            if rho >= T::one() {
                continue;
            }
            term.abs() / (T::one() - rho)
        };
        if tail <= tol {
            return Ok(EvalResult::new(sum.value(), tail + eps * weighted, k + 1));
        }
    }
    Err(Error::NonConvergent { terms: MAX_TERMS })
}

/// Gauss `2F1(a, b; c; x)` for `x` in `[-1, 0]`.
///
/// For `x < -1/2` the Pfaff transformation
/// `2F1(a, b; c; x) = (1 - x)^(-a) 2F1(a, c - b; c; x / (x - 1))`
/// moves the argument into `(1/3, 1/2]`, where the series has terms of one
/// sign and geometric decay at rate at most 1/2.
pub fn gauss2f1_neg<T: Real>(a: T, b: T, c: T, x: T, tol: T) -> Result<EvalResult<T>> {
    if !(c > T::zero()) {
        return Err(Error::InvalidLowerParameter {
            value: c.to_f64().unwrap_or(f64::NAN),
        });
    }
    if !(x >= -T::one() && x <= T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "gauss2f1_neg needs x in [-1, 0], got {x}"
        )));
    }
    if x >= lit(PFAFF_SWITCH) {
        return pfq(&HypergeomSpec::new(vec![a, b], vec![c], x)?, tol);
    }
    let z = x / (x - T::one());
    let prefactor = (T::one() - x).powf(-a);
    let inner = pfq(&HypergeomSpec::new(vec![a, c - b], vec![c], z)?, tol / prefactor)?;
    Ok(inner.scaled(prefactor))
}

/// The two sides of a numerically checked identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityCheck<T> {
    pub lhs: EvalResult<T>,
    pub rhs: EvalResult<T>,
    /// `|lhs - rhs|`.
    pub margin: T,
    /// `tol` plus both error bounds.
    pub budget: T,
}

impl<T: Real> IdentityCheck<T> {
    fn new(lhs: EvalResult<T>, rhs: EvalResult<T>, tol: T) -> Self {
        Self {
            lhs,
            rhs,
            margin: (lhs.value - rhs.value).abs(),
            budget: tol + lhs.error_bound + rhs.error_bound,
        }
    }

    pub fn pass(&self) -> bool {
        self.margin <= self.budget
    }

    /// As an identity row of a verification report.
    pub fn to_point(&self, x: Vec<T>) -> crate::report::ReportPoint<T> {
        crate::report::ReportPoint::identity(x, self.lhs.value, self.rhs.value, self.budget)
    }
}

fn check_radius<T: Real>(r: T) -> Result<()> {
    if r > T::zero() && r < T::one() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("radius must lie in (0, 1), got {r}")))
    }
}

fn check_dimension(n: usize) -> Result<()> {
    if n >= 2 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("dimension must be at least 2, got {n}")))
    }
}

/// Checks `G(r) (1 - r^2) = (1 + r^2)^(1 + n/2) 4F3[n/2, (n-1)/2, 1/2, 1 + n/4;
/// n/4, 3/2, (1 + n)/2; -r^2]` where
/// `G(r) = 3F2[1, (2 + n)/4, (4 + n)/4; 3/2, (1 + n)/2; 4r^2 / (1 + r^2)^2]`.
pub fn check_transform_3f2_to_4f3<T: Real>(n: usize, r: T, tol: T) -> Result<IdentityCheck<T>> {
    check_dimension(n)?;
    check_radius(r)?;
    let nn = from_usize::<T>(n);
    let (one, two, four) = (T::one(), lit::<T>(2.0), lit::<T>(4.0));
    let half = lit::<T>(0.5);
    let r2 = r * r;
    let sub_tol = tol / four;

    let z = four * r2 / ((one + r2) * (one + r2));
    let g_spec = HypergeomSpec::new(
        vec![one, (two + nn) / four, (four + nn) / four],
        vec![lit(1.5), (one + nn) / two],
        z,
    )?;
    let lhs = pfq(&g_spec, sub_tol)?.scaled(one - r2);

    let scale = (one + r2).powf(one + nn / two);
    let f_spec = HypergeomSpec::new(
        vec![nn / two, (nn - one) / two, half, one + nn / four],
        vec![nn / four, lit(1.5), (one + nn) / two],
        -r2,
    )?;
    let rhs = pfq(&f_spec, sub_tol / scale)?.scaled(scale);
    Ok(IdentityCheck::new(lhs, rhs, tol))
}

/// Checks the two expressions of the radial derivative of the extremal
/// profile against each other:
/// `K ((1 + r^2)^(-n/2) (1 + n) - (n - 2) r^2 2F1[(1+n)/2, (2+n)/2; (3+n)/2; -r^2])`
/// and `K (1 + r^2)^(-n/2) (1 + n - (n - 2) r^2 2F1[1/2, 1; (3+n)/2; -r^2])`
/// with `K = Γ(1 + n/2) / (√π Γ((3 + n)/2))`. The first series is summed
/// directly, the second through [`gauss2f1_neg`].
pub fn check_kummer_quadratic<T: Real>(n: usize, r: T, tol: T) -> Result<IdentityCheck<T>> {
    check_dimension(n)?;
    check_radius(r)?;
    let nn = from_usize::<T>(n);
    let (one, two, three) = (T::one(), lit::<T>(2.0), lit::<T>(3.0));
    let r2 = r * r;
    let k = gamma_ratio(one + nn / two, (three + nn) / two) / T::PI().sqrt();
    let damp = (one + r2).powf(-nn / two);
    let weight = (nn - two) * r2;
    let sub_tol = tol / (lit::<T>(4.0) * (k * weight).max(one));

    let direct = pfq(
        &HypergeomSpec::new(vec![(one + nn) / two, (two + nn) / two], vec![(three + nn) / two], -r2)?,
        sub_tol,
    )?;
    let lhs = EvalResult::new(
        k * (damp * (one + nn) - weight * direct.value),
        k * weight * direct.error_bound,
        direct.terms_used,
    );

    let transformed = gauss2f1_neg(lit(0.5), one, (three + nn) / two, -r2, sub_tol)?;
    let rhs = EvalResult::new(
        k * damp * (one + nn - weight * transformed.value),
        k * damp * weight * transformed.error_bound,
        transformed.terms_used,
    );
    Ok(IdentityCheck::new(lhs, rhs, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spec(upper: &[f64], lower: &[f64], x: f64) -> HypergeomSpec<f64> {
        HypergeomSpec::new(upper.to_vec(), lower.to_vec(), x).unwrap()
    }

    #[test]
    fn pochhammer_small_cases() {
        assert_eq!(pochhammer(1.0_f64, 5), 120.0);
        assert_eq!(pochhammer(3.7_f64, 0), 1.0);
        assert_eq!(pochhammer(0.5_f64, 3), 1.875);
        assert_eq!(pochhammer(-3.0_f64, 2), 6.0);
        assert_eq!(pochhammer(-3.0_f64, 4), 0.0);
    }

    #[test]
    fn pochhammer_log_path_matches_product() {
        let y = 1.25_f64;
        let product: f64 = (0..90).map(|j| y + j as f64).product();
        assert_relative_eq!(pochhammer(y, 90), product, max_relative = 1e-12);
        let y = -2.5_f64;
        let product: f64 = (0..70).map(|j| y + j as f64).product();
        assert_relative_eq!(pochhammer(y, 70), product, max_relative = 1e-12);
        assert_eq!(pochhammer(-5.0_f64, 70), 0.0);
    }

    #[test]
    fn zero_argument_is_exact() {
        let r = pfq(&spec(&[0.5, 1.0], &[2.5], 0.0), 1e-12).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.error_bound, 0.0);
        assert_eq!(r.terms_used, 1);
    }

    #[test]
    fn alternating_at_minus_one() {
        let expected = (16.0 * 2.0_f64.sqrt() - 20.0) / 3.0;
        let r = pfq(&spec(&[0.5, 1.0], &[3.0], -1.0), 1e-12).unwrap();
        assert!(r.error_bound <= 1e-12 + 1e-14);
        assert!((r.value - expected).abs() <= 1e-12, "{} vs {}", r.value, expected);
        assert_relative_eq!(r.value, 0.875_805_7, epsilon = 1e-7);
    }

    #[test]
    fn positive_argument_log() {
        let expected = -(1.0_f64 - 0.5).ln() / 0.5;
        let r = pfq(&spec(&[1.0, 1.0], &[2.0], 0.5), 1e-13).unwrap();
        assert!((r.value - expected).abs() <= r.error_bound.max(1e-15));
        assert_relative_eq!(r.value, 2.0 * 2.0_f64.ln(), epsilon = 1e-13);
    }

    #[test]
    fn terminating_series_is_polynomial() {
        // 2F1(-3, b; c; x) is a cubic.
        let (b, c, x) = (1.5, 2.5, 0.7_f64);
        let mut expected = 0.0;
        let mut t = 1.0;
        for k in 0..=3 {
            expected += t;
            t *= (-3.0 + k as f64) * (b + k as f64) / ((c + k as f64) * (k as f64 + 1.0)) * x;
        }
        let r = pfq(&spec(&[-3.0, b], &[c], x), 1e-12).unwrap();
        assert_relative_eq!(r.value, expected, max_relative = 1e-15);
        assert_eq!(r.terms_used, 4);
    }

    #[test]
    fn entire_series_exp() {
        let r = pfq(&spec(&[], &[], -3.0), 1e-13).unwrap();
        assert_relative_eq!(r.value, (-3.0_f64).exp(), epsilon = 1e-13);
        let r = pfq(&spec(&[], &[1.5], 2.0), 1e-13).unwrap();
        // 0F1(;3/2; x^2/4) = sinh(x)/x at x = 2 sqrt(2)
        let s = 8.0_f64.sqrt();
        assert_relative_eq!(r.value, s.sinh() / s, max_relative = 1e-13);
    }

    #[test]
    fn error_paths() {
        assert_eq!(
            HypergeomSpec::new(vec![1.0], vec![-2.0], 0.5).unwrap_err(),
            Error::InvalidLowerParameter { value: -2.0 }
        );
        assert!(matches!(
            pfq(&spec(&[1.0, 1.0], &[1.5], 1.2), 1e-10),
            Err(Error::NonConvergent { .. })
        ));
        // 2F1(1, 1; 5/2; -1): terms decay like k^{-3/2}. Convergent, but
        // 1e-10 needs millions of terms.
        assert!(pfq(&spec(&[1.0, 1.0], &[2.5], -1.0), 1e-6).is_ok());
        assert_eq!(
            pfq(&spec(&[1.0, 1.0], &[2.5], -1.0), 1e-10),
            Err(Error::NonConvergent { terms: MAX_TERMS })
        );
        // 2F1(2, 2; 1; -1) diverges.
        assert!(matches!(
            pfq(&spec(&[2.0, 2.0], &[1.0], -1.0), 1e-10),
            Err(Error::NonConvergent { .. })
        ));
        // 3F1 is nowhere convergent.
        assert!(matches!(
            pfq(&spec(&[1.0, 1.0, 1.0], &[2.0], 0.1), 1e-10),
            Err(Error::NonConvergent { .. })
        ));
        assert!(pfq(&spec(&[1.0], &[2.0], 0.1), 0.0).is_err());
    }

    #[test]
    fn gauss2f1_neg_examples() {
        let r = gauss2f1_neg(0.5, 1.0, 3.0, 0.0, 1e-12).unwrap();
        assert_eq!(r.value, 1.0);
        let r = gauss2f1_neg(0.5, 1.0, 3.0, -1.0, 1e-13).unwrap();
        let direct = pfq(&spec(&[0.5, 1.0], &[3.0], -1.0), 1e-12).unwrap();
        assert!(r.agrees_with(&direct, 1e-15));
        assert!(r.terms_used < 100);
        let r = gauss2f1_neg(0.5, 2.0, 3.0, -0.25, 1e-13).unwrap();
        assert!(r.value > 0.0);
        assert!(gauss2f1_neg(0.5, 1.0, 3.0, 0.5, 1e-12).is_err());
        assert!(gauss2f1_neg(0.5, 1.0, -1.0, -0.5, 1e-12).is_err());
    }

    #[test]
    fn identity_examples() {
        for (n, r) in [(3, 0.5), (2, 0.1), (4, 1e-6)] {
            let c = check_transform_3f2_to_4f3(n, r, 1e-12).unwrap();
            assert!(c.pass() && c.margin <= 1e-10, "n={n} r={r}: {c:?}");
        }
        let c = check_transform_3f2_to_4f3(4, 1e-6, 1e-12).unwrap();
        assert_relative_eq!(c.lhs.value, 1.0, epsilon = 1e-10);
        for (n, r) in [(3, 0.5), (2, 0.9), (5, 1e-6)] {
            let c = check_kummer_quadratic(n, r, 1e-12).unwrap();
            assert!(c.pass() && c.margin <= 1e-10, "n={n} r={r}: {c:?}");
        }
        assert!(check_kummer_quadratic(3, 1.0, 1e-12).is_err());
        assert!(check_transform_3f2_to_4f3(1, 0.5, 1e-12).is_err());
    }

    #[test]
    fn single_precision_series() {
        let r = pfq(&HypergeomSpec::new(vec![1.0_f32, 1.0], vec![2.0], 0.5).unwrap(), 1e-6).unwrap();
        assert!((r.value - 2.0 * 2.0_f32.ln()).abs() < 1e-5);
    }
}
