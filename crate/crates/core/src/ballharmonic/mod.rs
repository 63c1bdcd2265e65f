//! Poisson kernel and harmonic extension on the unit ball `B^n`.
//!
//! For boundary data depending only on the last coordinate `t = ζ_n = cos θ`
//! the Poisson integral at `rN` reduces to
//!
//! ```text
//! c_n ∫_0^π (1 - r²) sin^{n-2}θ h(cos θ) / (1 + r² - 2r cos θ)^{n/2} dθ,
//! c_n = Γ(n/2) / (√π Γ((n-1)/2)),
//! ```
//!
//! evaluated here by adaptive Gauss-Kronrod quadrature. General boundary maps
//! go through the seeded Monte Carlo estimator in [`SphereSample`].

mod maps;
mod sampling;

pub use maps::{
    Antisymmetrized, BoundaryMap, ConstantMap, FnMap, IdentityMap, Rotated, SignMap, ZonalMap,
};
pub use sampling::{
    mc_extension, random_orthogonal, uniform_on_sphere, SphereRng, SphereSample, CHUNK_SIZE,
    MC_GUARD_RADIUS, MIN_SAMPLES,
};

use crate::error::{Error, Result};
use crate::quadrature::{integrate, MAX_PANELS};
use crate::specfun::{gamma_ratio, EvalResult};
use crate::{effective_tol, from_usize, lit, Real};

/// A point of `R^n`, `n >= 2`, used as an evaluation point in the ball.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPoint<T> {
    coords: Vec<T>,
}

impl<T: Real> BallPoint<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "ball points need dimension >= 2, got {}",
                coords.len()
            )));
        }
        Ok(Self { coords })
    }

    /// `r N` with `N = (0, ..., 0, 1)`.
    pub fn on_axis(n: usize, r: T) -> Result<Self> {
        let mut coords = vec![T::zero(); n];
        if let Some(last) = coords.last_mut() {
            *last = r;
        }
        Self::new(coords)
    }

    /// `r ζ` for a direction `ζ` (normalized here).
    pub fn along(direction: &[T], r: T) -> Result<Self> {
        let norm = norm(direction);
        if !(norm > T::zero()) {
            return Err(Error::InvalidArgument("zero direction".into()));
        }
        Self::new(direction.iter().map(|&d| d / norm * r).collect())
    }

    pub fn origin(n: usize) -> Result<Self> {
        Self::new(vec![T::zero(); n])
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn norm(&self) -> T {
        norm(&self.coords)
    }
}

pub(crate) fn norm<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |s, &c| s + c * c).sqrt()
}

/// `d^(n/2)` for `d >= 0`.
#[inline]
pub(crate) fn half_power<T: Real>(d: T, n: usize) -> T {
    let p = d.powi((n / 2) as i32);
    if n % 2 == 0 {
        p
    } else {
        p * d.sqrt()
    }
}

/// Poisson kernel in the form used by the sampler; `x_norm2 = |x|²`, `ζ` on
/// the unit sphere.
#[inline]
pub(crate) fn kernel_unit<T: Real>(x: &[T], x_norm2: T, zeta: &[T]) -> T {
    let d2 = x
        .iter()
        .zip(zeta)
        .fold(T::zero(), |s, (&a, &b)| s + (a - b) * (a - b));
    (T::one() - x_norm2) / half_power(d2, x.len())
}

/// `P(x, ζ) = (1 - |x|²) / |x - ζ|^n`; `ζ` is rescaled to unit length.
pub fn poisson_kernel<T: Real>(x: &BallPoint<T>, zeta: &[T]) -> Result<T> {
    if zeta.len() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: zeta.len(),
        });
    }
    let r = x.norm();
    if r >= T::one() {
        return Err(Error::PointOnBoundary {
            norm: r.to_f64().unwrap_or(f64::NAN),
        });
    }
    let zn = norm(zeta);
    if !(zn > T::zero()) {
        return Err(Error::InvalidArgument("zero boundary direction".into()));
    }
    let unit: Vec<T> = zeta.iter().map(|&z| z / zn).collect();
    Ok(kernel_unit(x.coords(), r * r, &unit))
}

/// `c_n = Γ(n/2) / (√π Γ((n-1)/2))`, the density of `ζ_n = cos θ` in `θ`.
pub fn theta_weight<T: Real>(n: usize) -> T {
    let nn = from_usize::<T>(n);
    let two = lit::<T>(2.0);
    gamma_ratio(nn / two, (nn - T::one()) / two) / T::PI().sqrt()
}

/// Boundary data depending only on the last coordinate `t = ζ_n`.
pub trait AxisymProfile<T: Real>: Sync {
    fn value(&self, t: T) -> T;

    /// Points of `(-1, 1)` where the profile is not smooth.
    fn breakpoints(&self) -> Vec<T> {
        Vec::new()
    }
}

impl<T: Real, P: AxisymProfile<T> + ?Sized> AxisymProfile<T> for &P {
    fn value(&self, t: T) -> T {
        (**self).value(t)
    }
    fn breakpoints(&self) -> Vec<T> {
        (**self).breakpoints()
    }
}

impl<T: Real, P: AxisymProfile<T> + ?Sized + Send> AxisymProfile<T> for Box<P> {
    fn value(&self, t: T) -> T {
        (**self).value(t)
    }
    fn breakpoints(&self) -> Vec<T> {
        (**self).breakpoints()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ConstantProfile<T>(pub T);

impl<T: Real> AxisymProfile<T> for ConstantProfile<T> {
    fn value(&self, _t: T) -> T {
        self.0
    }
}

/// `sign(t)` with `sign(0) = 0`: the hemisphere data `χ_{S+} - χ_{S-}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SignProfile;

impl<T: Real> AxisymProfile<T> for SignProfile {
    fn value(&self, t: T) -> T {
        sign(t)
    }
    fn breakpoints(&self) -> Vec<T> {
        vec![T::zero()]
    }
}

pub(crate) fn sign<T: Real>(t: T) -> T {
    if t > T::zero() {
        T::one()
    } else if t < T::zero() {
        -T::one()
    } else {
        T::zero()
    }
}

/// A profile given by a closure plus its non-smooth points.
pub struct FnProfile<F> {
    f: F,
    breaks: Vec<f64>,
}

impl<F> FnProfile<F> {
    pub fn new(f: F, breaks: Vec<f64>) -> Self {
        Self { f, breaks }
    }
}

impl<T: Real, F: Fn(T) -> T + Sync> AxisymProfile<T> for FnProfile<F> {
    fn value(&self, t: T) -> T {
        (self.f)(t)
    }
    fn breakpoints(&self) -> Vec<T> {
        self.breaks.iter().map(|&b| lit(b)).collect()
    }
}

fn check_extension_args<T: Real>(n: usize, r: T) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("dimension must be >= 2, got {n}")));
    }
    if !(r >= T::zero()) {
        return Err(Error::InvalidArgument(format!("radius must be >= 0, got {r}")));
    }
    if r >= T::one() {
        return Err(Error::PointOnBoundary {
            norm: r.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Initial θ panels: profile breakpoints plus a geometric ladder
/// `(1 - r) 4^j` resolving the kernel peak at `θ = 0` as `r → 1`.
fn theta_breakpoints<T: Real, P: AxisymProfile<T> + ?Sized>(profile: &P, r: T) -> Vec<T> {
    let pi = T::PI();
    let mut pts = vec![T::zero(), pi];
    for t in profile.breakpoints() {
        if t > -T::one() && t < T::one() {
            pts.push(t.acos());
        }
    }
    if r > lit(0.5) {
        let mut theta = T::one() - r;
        while theta < pi {
            pts.push(theta);
            theta = theta * lit(4.0);
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    pts.dedup();
    pts
}

/// `D = 1 + r² - 2r cos θ`, written to avoid cancellation near `θ = 0, r = 1`.
#[inline]
fn kernel_denominator<T: Real>(r: T, theta: T) -> T {
    let s = (theta * lit(0.5)).sin();
    (T::one() - r) * (T::one() - r) + lit::<T>(4.0) * r * s * s
}

/// `sin^{n-2} θ / D^{(n-2)/2}`, bounded even where both factors under- or
/// overflow separately (large `n`, `r → 1`).
#[inline]
fn sin_weight<T: Real>(s: T, d: T, n: usize) -> T {
    half_power(s * s / d, n - 2)
}

/// Poisson extension `P[h(ζ_n)](rN)` of an axially symmetric profile.
///
/// The constant `h(1)` is extracted exactly (`P[1] = 1`), so the quadrature
/// only sees `h(cos θ) - h(1)`, which vanishes where the kernel peaks.
pub fn axisym_extension<T: Real, P: AxisymProfile<T> + ?Sized>(
    profile: &P,
    n: usize,
    r: T,
    tol: T,
) -> Result<EvalResult<T>> {
    check_extension_args(n, r)?;
    let tol = effective_tol(tol);
    let cn = theta_weight::<T>(n);
    let base = profile.value(T::one());
    let one_minus_r2 = T::one() - r * r;
    let integrand = |theta: T| {
        let (s, c) = theta.sin_cos();
        let dh = profile.value(c) - base;
        if dh == T::zero() {
            return T::zero();
        }
        let d = kernel_denominator(r, theta);
        cn * one_minus_r2 * dh * sin_weight(s, d, n) / d
    };
    let pts = theta_breakpoints(profile, r);
    let integral = integrate(integrand, &pts, tol, MAX_PANELS)?;
    Ok(EvalResult::new(base + integral.value, integral.error_bound, integral.terms_used))
}

/// Radial derivative `∂_r P[h(ζ_n)](rN)`, differentiating the kernel under
/// the integral sign:
/// `∂_r [(1 - r²) / D^{n/2}] = (-2rD - n(1 - r²)(r - cos θ)) / D^{n/2 + 1}`.
pub fn axisym_radial_derivative<T: Real, P: AxisymProfile<T> + ?Sized>(
    profile: &P,
    n: usize,
    r: T,
    tol: T,
) -> Result<EvalResult<T>> {
    check_extension_args(n, r)?;
    let tol = effective_tol(tol);
    let cn = theta_weight::<T>(n);
    let nn = from_usize::<T>(n);
    let two = lit::<T>(2.0);
    let base = profile.value(T::one());
    let one_minus_r2 = T::one() - r * r;
    let integrand = |theta: T| {
        let (s, c) = theta.sin_cos();
        let dh = profile.value(c) - base;
        if dh == T::zero() {
            return T::zero();
        }
        let half = (theta * lit(0.5)).sin();
        let r_minus_cos = (r - T::one()) + two * half * half;
        let d = kernel_denominator(r, theta);
        let dk = (-two * r * d - nn * one_minus_r2 * r_minus_cos) / (d * d);
        cn * dh * dk * sin_weight(s, d, n)
    };
    let pts = theta_breakpoints(profile, r);
    let integral = integrate(integrand, &pts, tol, MAX_PANELS)?;
    Ok(integral)
}
