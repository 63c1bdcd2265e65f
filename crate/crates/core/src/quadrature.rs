//! Globally adaptive Gauss-Kronrod quadrature on finite intervals.
//!
//! Each panel is integrated with the 15-point Kronrod rule; the embedded
//! 7-point Gauss rule gives the error estimate `|K15 - G7|`. The panel with
//! the largest estimate is bisected until the summed estimate drops below the
//! tolerance or the panel budget runs out.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::specfun::EvalResult;
use crate::{lit, Real};

/// Default panel budget.
pub const MAX_PANELS: usize = 20_000;

// Kronrod abscissae, positive half, largest first; odd indices are the G7 nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Real> Eq for Panel<T> {}
impl<T: Real> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        // Larger error first; ties broken by position for determinism.
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.a.partial_cmp(&self.a).unwrap_or(Ordering::Equal))
    }
}

/// Applies the G7/K15 pair on `[a, b]`, returning `(K15, |K15 - G7|)`.
pub fn gauss_kronrod_15<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, T) {
    let half = lit::<T>(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let fc = f(center);
    let mut kronrod = fc * lit(WGK[7]);
    let mut gauss = fc * lit(WG[3]);
    for i in 0..7 {
        let dx = half_len * lit(XGK[i]);
        let pair = f(center - dx) + f(center + dx);
        kronrod = kronrod + lit::<T>(WGK[i]) * pair;
        if i % 2 == 1 {
            gauss = gauss + lit::<T>(WG[i / 2]) * pair;
        }
    }
    let value = kronrod * half_len;
    let error = ((kronrod - gauss) * half_len).abs();
    (value, error)
}

/// Integrates `f` over `[points[0], points.last()]`, with `points` giving
/// the initial panel boundaries (sorted, at least two entries).
pub fn integrate<T: Real, F: Fn(T) -> T>(
    f: F,
    points: &[T],
    tol: T,
    max_panels: usize,
) -> Result<EvalResult<T>> {
    if points.len() < 2 || points.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::InvalidArgument("quadrature needs sorted breakpoints".into()));
    }
    let mut heap = BinaryHeap::new();
    for w in points.windows(2) {
        if w[1] > w[0] {
            let (value, error) = gauss_kronrod_15(&f, w[0], w[1]);
            heap.push(Panel {
                a: w[0],
                b: w[1],
                value,
                error,
            });
        }
    }
    let total_error = |h: &BinaryHeap<Panel<T>>| h.iter().map(|p| p.error).fold(T::zero(), |s, e| s + e);
    let mut err = total_error(&heap);
    // `!(err <= tol)` so that a NaN estimate keeps refining and then fails.
    while !(err <= tol) {
        if !err.is_finite() {
            return Err(failure(tol, err, heap.len()));
        }
        if heap.len() >= max_panels {
            return Err(failure(tol, err, heap.len()));
        }
        let worst = heap.pop().expect("non-empty panel set");
        let mid = lit::<T>(0.5) * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            return Err(failure(tol, err, heap.len() + 1));
        }
        for (a, b) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = gauss_kronrod_15(&f, a, b);
            heap.push(Panel { a, b, value, error });
        }
        // Recompute rather than update incrementally to avoid drift.
        err = total_error(&heap);
    }
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.partial_cmp(&q.a).unwrap_or(Ordering::Equal));
    let value = panels.iter().fold(T::zero(), |s, p| s + p.value);
    if !value.is_finite() {
        return Err(failure(tol, err, panels.len()));
    }
    Ok(EvalResult::new(value, err, panels.len()))
}

fn failure<T: Real>(tol: T, err: T, panels: usize) -> Error {
    Error::QuadratureFailure {
        tol: tol.to_f64().unwrap_or(f64::NAN),
        estimate: err.to_f64().unwrap_or(f64::NAN),
        intervals: panels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomials_exact_on_one_panel() {
        // K15 integrates degree 22 exactly; G7 degree 13.
        let (v, e) = gauss_kronrod_15(&|x: f64| x.powi(12), -1.0, 1.0);
        assert_relative_eq!(v, 2.0 / 13.0, max_relative = 1e-14);
        assert!(e < 1e-14);
    }

    #[test]
    fn smooth_integrands() {
        let r = integrate(|x: f64| x.sin(), &[0.0, std::f64::consts::PI], 1e-13, MAX_PANELS).unwrap();
        assert_relative_eq!(r.value, 2.0, epsilon = 1e-13);
        let r = integrate(|x: f64| (-x * x).exp(), &[-6.0, 6.0], 1e-13, MAX_PANELS).unwrap();
        assert_relative_eq!(r.value, std::f64::consts::PI.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn sharp_peak_and_kink() {
        let d = 1e-3_f64;
        let r = integrate(|x: f64| d / (x * x + d * d), &[-1.0, 1.0], 1e-11, MAX_PANELS).unwrap();
        assert_relative_eq!(r.value, 2.0 * (1.0 / d).atan(), epsilon = 1e-10);
        let r = integrate(|x: f64| x.abs().sqrt(), &[-1.0, 1.0], 1e-10, MAX_PANELS).unwrap();
        assert_relative_eq!(r.value, 4.0 / 3.0, epsilon = 1e-9);
    }

    #[test]
    fn budget_exhaustion_reports_failure() {
        let r = integrate(|x: f64| (1.0 / x).sin() / x, &[1e-8, 1.0], 1e-13, 50);
        assert!(matches!(r, Err(Error::QuadratureFailure { .. })));
        assert!(integrate(|x: f64| x, &[1.0, 0.0], 1e-10, 50).is_err());
    }

    #[test]
    fn single_precision() {
        let r = integrate(|x: f32| x * x, &[0.0, 1.0], 1e-6, 100).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn non_finite_integrands_fail() {
        let r = integrate(|x: f64| if x > 0.5 { f64::NAN } else { x }, &[0.0, 1.0], 1e-10, 100);
        assert!(matches!(r, Err(Error::QuadratureFailure { .. })));
        let r = integrate(|x: f64| 1.0 / x, &[0.0, 1.0], 1e-10, MAX_PANELS);
        assert!(r.is_err());
    }
}
