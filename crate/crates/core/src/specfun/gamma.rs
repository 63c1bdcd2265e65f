//! Log-gamma and gamma for real arguments.
//!
//! `ln_gamma` uses the Lanczos approximation with `g = 7` and nine
//! coefficients, extended to `x < 1/2` by reflection. Relative accuracy of the
//! logarithm is about `1e-15` over `[0.5, 200]` in double precision. Integer
//! and half-integer arguments up to 170, which cover every gamma factor in the
//! profile formulas, are evaluated as exact products instead.

use crate::{lit, Real};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest argument handled by the exact integer/half-integer product.
const EXACT_PRODUCT_MAX: f64 = 170.0;

fn lanczos_ln_gamma<T: Real>(x: T) -> T {
    // x >= 1/2
    let z = x - T::one();
    let mut acc = lit::<T>(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc = acc + lit::<T>(c) / (z + lit(i as f64));
    }
    let t = z + lit(LANCZOS_G + 0.5);
    let half_ln_two_pi = lit::<T>(0.918_938_533_204_672_8);
    half_ln_two_pi + (z + lit(0.5)) * t.ln() - t + acc.ln()
}

/// Returns `(ln |Γ(x)|, sign Γ(x))`. Poles return `(+inf, 1)`.
pub fn ln_gamma_signed<T: Real>(x: T) -> (T, T) {
    if x <= T::zero() && x == x.floor() {
        return (T::infinity(), T::one());
    }
    if x < lit(0.5) {
        // Γ(x) Γ(1-x) = π / sin(πx)
        let s = (T::PI() * x).sin();
        let (lg, _) = ln_gamma_signed(T::one() - x);
        let sign = if s < T::zero() { -T::one() } else { T::one() };
        return ((T::PI() / s.abs()).ln() - lg, sign);
    }
    (lanczos_ln_gamma(x), T::one())
}

/// `ln |Γ(x)|`.
pub fn ln_gamma<T: Real>(x: T) -> T {
    ln_gamma_signed(x).0
}

/// `Γ(x)` as an exact product when `2x` is a positive integer no larger than
/// 340, `None` otherwise.
fn gamma_half_integer<T: Real>(x: T) -> Option<T> {
    let twice = x + x;
    if x <= T::zero() || twice != twice.floor() || x > lit(EXACT_PRODUCT_MAX) {
        return None;
    }
    let half = lit::<T>(0.5);
    let (mut acc, mut y) = if twice.to_i64()? % 2 == 0 {
        (T::one(), T::one())
    } else {
        (T::PI().sqrt(), half)
    };
    while y < x {
        acc = acc * y;
        y = y + T::one();
    }
    Some(acc)
}

/// `Γ(x)` for real `x`; NaN at the poles.
pub fn gamma<T: Real>(x: T) -> T {
    if let Some(v) = gamma_half_integer(x) {
        return v;
    }
    let (lg, sign) = ln_gamma_signed(x);
    if lg.is_infinite() {
        return T::nan();
    }
    sign * lg.exp()
}

/// `Γ(a) / Γ(b)`; exact products when both arguments are (half-)integers or
/// their difference is a small integer.
pub fn gamma_ratio<T: Real>(a: T, b: T) -> T {
    if let (Some(ga), Some(gb)) = (gamma_half_integer(a), gamma_half_integer(b)) {
        if ga.is_finite() && gb.is_finite() {
            return ga / gb;
        }
    }
    let diff = a - b;
    if diff == diff.floor() && diff.abs() <= lit(64.0) && a > T::zero() && b > T::zero() {
        // Rising product from the smaller argument.
        let (lo, hi, invert) = if a >= b { (b, a, false) } else { (a, b, true) };
        let mut acc = T::one();
        let mut y = lo;
        while y < hi {
            acc = acc * y;
            y = y + T::one();
        }
        return if invert { acc.recip() } else { acc };
    }
    let (la, sa) = ln_gamma_signed(a);
    let (lb, sb) = ln_gamma_signed(b);
    sa * sb * (la - lb).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn factorials() {
        let mut f = 1.0_f64;
        for k in 1..30 {
            assert_relative_eq!(gamma(k as f64), f, max_relative = 1e-15);
            assert_relative_eq!(
                ln_gamma(k as f64),
                f.ln(),
                epsilon = 1e-14,
                max_relative = 1e-14
            );
            f *= k as f64;
        }
    }

    #[test]
    fn half_integers() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert_relative_eq!(gamma(0.5), sqrt_pi, max_relative = 1e-15);
        assert_relative_eq!(gamma(1.5), sqrt_pi / 2.0, max_relative = 1e-15);
        assert_relative_eq!(gamma(2.5), 0.75 * sqrt_pi, max_relative = 1e-15);
        assert_relative_eq!(ln_gamma(2.5_f64), (0.75 * sqrt_pi).ln(), max_relative = 1e-14);
    }

    #[test]
    fn ln_gamma_matches_independent_lanczos() {
        // statrs uses Godfrey's g = 10.9 coefficient set, independent of ours.
        let mut x = 0.5_f64;
        while x <= 200.0 {
            let expected = statrs::function::gamma::ln_gamma(x);
            let got = ln_gamma(x);
            let scale = expected.abs().max(1.0);
            assert!(
                (got - expected).abs() <= 1e-14 * scale,
                "x = {x}: {got} vs {expected}"
            );
            x += 0.37;
        }
    }

    #[test]
    fn reflection_and_poles() {
        assert_relative_eq!(gamma(-0.5), -2.0 * std::f64::consts::PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma(-1.5), 4.0 / 3.0 * std::f64::consts::PI.sqrt(), max_relative = 1e-14);
        assert!(gamma(-2.0_f64).is_nan());
        assert!(gamma(0.0_f64).is_nan());
        let (_, s) = ln_gamma_signed(-2.5_f64);
        assert_eq!(s, -1.0);
    }

    #[test]
    fn ratio_paths_agree() {
        // Integer-offset path against the log path.
        let exact = gamma_ratio(7.5_f64, 2.5);
        let via_logs = (ln_gamma(7.5_f64) - ln_gamma(2.5_f64)).exp();
        assert_relative_eq!(exact, via_logs, max_relative = 1e-14);
        assert_relative_eq!(gamma_ratio(2.5_f64, 7.5), 1.0 / exact, max_relative = 1e-15);
        assert_relative_eq!(gamma_ratio(3.3_f64, 1.1), gamma(3.3) / gamma(1.1), max_relative = 1e-14);
    }

    #[test]
    fn single_precision() {
        assert!((gamma(5.0_f32) - 24.0).abs() < 1e-5);
        assert!((ln_gamma(10.5_f32) - statrs::function::gamma::ln_gamma(10.5) as f32).abs() < 1e-4);
    }
}
