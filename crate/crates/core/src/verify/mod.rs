//! Numerical checks of the harmonic Schwarz lemma, the boundary ratio bound
//! and the sharpness of `C_n`.
//!
//! For a map `f: S^{n-1} → closed unit ball` with extension `u = P[f]`:
//!
//! ```text
//! ‖u(x) - (1 - ‖x‖²)/(1 + ‖x‖²)^{n/2} u(0)‖ <= U(‖x‖N),
//! (1 - ‖u(rζ)‖) / (1 - r) >= C_n            when u(0) = 0,
//! ‖∂_r u(rζ)‖ >= ∂_r ‖u(rζ)‖.
//! ```

mod maps;
mod sharpness;
mod suite;

pub use maps::{derive_seed, random_map_family, FmMap, HmProfile, TrigMap, SUP_GRID_POINTS, SUP_TARGET};
pub use sharpness::{
    sharpness_sweep, SharpnessRow, SharpnessTable, EXTRAPOLATION_TOLERANCE, LOWER_BOUND_SLACK,
    MONOTONE_FROM_M,
};
pub use suite::{ratio_suite, schwarz_suite, NamedReport, SCHWARZ_DIRECTIONS};

use crate::ballharmonic::{
    axisym_extension, axisym_radial_derivative, norm, BallPoint, BoundaryMap,
    SphereSample, ZonalMap,
};
use crate::error::{Error, Result};
use crate::heinz::{heinz_constant, u_profile};
use crate::report::{ReportPoint, VerificationReport};
use crate::specfun::EvalResult;
use crate::{effective_tol, from_usize, lit, Real};

/// Accuracy requested from deterministic profile evaluations inside the
/// Monte Carlo checks; negligible next to the sampling error.
pub const PROFILE_TOL: f64 = 1e-12;

/// Step of the finite difference in [`verify_norm_derivative_inequality`].
pub const FD_STEP: f64 = 1e-4;

/// `(1 - r²) / (1 + r²)^{n/2}`, the weight of `u(0)` in the Schwarz bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CenteringFactor {
    pub n: usize,
}

impl CenteringFactor {
    pub fn eval<T: Real>(&self, r: T) -> T {
        let r2 = r * r;
        (T::one() - r2) / (T::one() + r2).powf(from_usize::<T>(self.n) * lit(0.5))
    }
}

fn check_map_dim<T: Real, M: BoundaryMap<T> + ?Sized>(map: &M, n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("dimension must be >= 2, got {n}")));
    }
    if map.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: map.dim(),
        });
    }
    Ok(())
}

/// Norm of a Monte Carlo vector estimate and a bound on its error
/// (`|‖a‖ - ‖b‖| <= ‖a - b‖ <= sqrt(Σ e_i²)`).
fn norm_with_bound<T: Real>(v: &[EvalResult<T>]) -> (T, T) {
    let values: Vec<T> = v.iter().map(|e| e.value).collect();
    let errors: Vec<T> = v.iter().map(|e| e.error_bound).collect();
    (norm(&values), norm(&errors))
}

/// Points `r ζ` for every radius and every direction: `N` first, then
/// `directions - 1` seeded random unit vectors.
pub fn schwarz_grid<T: Real>(
    n: usize,
    radii: &[T],
    directions: usize,
    seed: u64,
) -> Result<Vec<BallPoint<T>>> {
    let mut dirs = Vec::with_capacity(directions);
    let mut axis = vec![T::zero(); n];
    axis[n - 1] = T::one();
    if directions > 0 {
        dirs.push(axis);
    }
    if directions > 1 {
        dirs.extend(crate::ballharmonic::uniform_on_sphere::<T>(n, directions - 1, seed));
    }
    let mut grid = Vec::with_capacity(dirs.len() * radii.len());
    for d in &dirs {
        for &r in radii {
            grid.push(BallPoint::along(d, r)?);
        }
    }
    Ok(grid)
}

/// `f(x / |x|)`, the value where the Poisson kernel at `x` peaks.
fn peak_value<T: Real, M: BoundaryMap<T> + ?Sized>(map: &M, x: &BallPoint<T>) -> Vec<T> {
    let r = x.norm();
    if r > T::zero() {
        let dir: Vec<T> = x.coords().iter().map(|&c| c / r).collect();
        map.eval_vec(&dir)
    } else {
        vec![T::zero(); map.dim()]
    }
}

/// Checks `‖u(x) - c(‖x‖) u(0)‖ <= U(‖x‖N)` at each grid point, with
/// `u(x) - c u(0)` estimated as one Monte Carlo mean of `(P(x, ζ) - c) f(ζ)`
/// (peak-subtracted, see [`SphereSample::anchored_extension`]).
///
/// Rows: `x` = the grid point, `lhs` = the estimated norm, `rhs = U`,
/// budget = 3-sigma sampling bound plus the error of `U`.
pub fn verify_generalized_schwarz<T: Real, M: BoundaryMap<T> + ?Sized>(
    map: &M,
    n: usize,
    grid: &[BallPoint<T>],
    samples: usize,
    seed: u64,
) -> Result<VerificationReport<T>> {
    check_map_dim(map, n)?;
    let sample = SphereSample::draw(map, samples, seed)?;
    let factor = CenteringFactor { n };
    let tol = lit::<T>(PROFILE_TOL);
    let points = grid
        .iter()
        .map(|x| {
            let r = x.norm();
            let est = sample.anchored_extension(x, factor.eval(r), &peak_value(map, x))?;
            let (lhs, lhs_err) = norm_with_bound(&est);
            let u = u_profile(n, r, tol)?;
            Ok(ReportPoint::inequality(
                x.coords().to_vec(),
                lhs,
                u.value,
                lhs_err + u.error_bound,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::from_points(points))
}

/// Checks `(1 - ‖u(rζ)‖) / (1 - r) >= C_n` along `direction` for a map with
/// `u(0) = 0`, using antithetic samples so that odd maps are centred exactly.
///
/// Rows: `x = [r]`, `lhs = C_n`, `rhs` = the estimated ratio.
pub fn verify_ratio_bound<T: Real, M: BoundaryMap<T> + ?Sized>(
    map: &M,
    n: usize,
    r_grid: &[T],
    direction: &[T],
    samples: usize,
    seed: u64,
) -> Result<VerificationReport<T>> {
    check_map_dim(map, n)?;
    if direction.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: direction.len(),
        });
    }
    let samples = samples + samples % 2;
    let sample = SphereSample::draw_antithetic(map, samples, seed)?;
    let (center, center_budget) = norm_with_bound(&sample.center());
    if center > center_budget {
        return Err(Error::CenterNotZero {
            norm: center.to_f64().unwrap_or(f64::NAN),
            budget: center_budget.to_f64().unwrap_or(f64::NAN),
        });
    }
    let c = heinz_constant(n, lit(PROFILE_TOL))?;
    let points = r_grid
        .iter()
        .map(|&r| {
            let x = BallPoint::along(direction, r)?;
            let est = sample.anchored_extension(&x, T::zero(), &peak_value(map, &x))?;
            let (len, err) = norm_with_bound(&est);
            let gap = T::one() - r;
            Ok(ReportPoint::inequality(
                vec![r],
                c.value,
                (T::one() - len) / gap,
                err / gap + c.error_bound,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::from_points(points))
}

fn ray_values<T: Real>(map: &ZonalMap<T>, n: usize, r: T, tol: T) -> Result<Vec<T>> {
    map.components()
        .iter()
        .map(|h| axisym_extension(h, n, r, tol).map(|e| e.value))
        .collect()
}

/// Compares `‖∂_r u(rN)‖` (quadrature of the differentiated kernel) with
/// `∂_r ‖u(rN)‖` (fourth-order central difference, step [`FD_STEP`]).
///
/// The returned row has `x = [r]`, `lhs = ∂_r ‖u‖`, `rhs = ‖∂_r u‖` and
/// budget `tol`.
pub fn verify_norm_derivative_inequality<T: Real>(
    map: &ZonalMap<T>,
    n: usize,
    r: T,
    tol: T,
) -> Result<ReportPoint<T>> {
    check_map_dim(map, n)?;
    if !(r > T::zero() && r <= lit(crate::ballharmonic::MC_GUARD_RADIUS)) {
        return Err(Error::InvalidArgument(format!("radius must lie in (0, 0.95], got {r}")));
    }
    let inner = effective_tol(lit::<T>(1e-13).min(tol));
    let h = lit::<T>(FD_STEP);
    let grad: Vec<T> = map
        .components()
        .iter()
        .map(|p| axisym_radial_derivative(p, n, r, inner).map(|e| e.value))
        .collect::<Result<_>>()?;
    let len_at = |s: T| ray_values(map, n, s, inner).map(|v| norm(&v));
    let two = lit::<T>(2.0);
    let fd = (len_at(r - two * h)? - lit::<T>(8.0) * len_at(r - h)? + lit::<T>(8.0) * len_at(r + h)?
        - len_at(r + two * h)?)
        / (lit::<T>(12.0) * h);
    Ok(ReportPoint::inequality(vec![r], fd, norm(&grad), tol))
}
