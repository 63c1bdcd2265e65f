//! Seeded uniform sampling of the unit sphere and Monte Carlo harmonic
//! extension.
//!
//! Generator: xoshiro256** seeded with `seed_from_u64(seed)` (SplitMix64 state
//! expansion, as in `rand_xoshiro`). Uniforms are `(next_u64 >> 11) * 2^-53`.
//! Normals come from Box-Muller, `ρ = sqrt(-2 ln(1 - u1))`, emitting
//! `ρ cos(2π u2)` then `ρ sin(2π u2)`. A sphere point is `n` consecutive
//! normals divided by their norm.
//!
//! Samples are drawn in chunks of [`CHUNK_SIZE`]; chunk `c` uses the base
//! generator advanced by `c` xoshiro jumps (`2^128` steps each). Chunks may be
//! processed in parallel; partial sums are always combined in chunk order,
//! so results do not depend on the number of worker threads.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use rayon::prelude::*;

use super::{kernel_unit, BallPoint, BoundaryMap};
use crate::error::{Error, Result};
use crate::specfun::EvalResult;
use crate::{from_usize, lit, Real};

pub const CHUNK_SIZE: usize = 4096;

/// Largest `|x|` at which Monte Carlo extension is attempted; the estimator's
/// variance grows like `(1 - |x|)^(1 - n)`.
pub const MC_GUARD_RADIUS: f64 = 0.95;

pub const MIN_SAMPLES: usize = 1000;

/// Width of the reported statistical error, in standard errors.
const SIGMAS: f64 = 3.0;

#[derive(Debug, Clone)]
pub struct SphereRng {
    rng: Xoshiro256StarStar,
    spare: Option<f64>,
}

impl SphereRng {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: Xoshiro256StarStar::seed_from_u64(seed),
            spare: None,
        }
    }

    /// Advances by `2^128` steps and drops any cached normal.
    pub fn jump(&mut self) {
        self.rng.jump();
        self.spare = None;
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.uniform();
        let u2 = self.uniform();
        let rho = (-2.0 * (1.0 - u1).ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        self.spare = Some(rho * s);
        rho * c
    }

    /// A uniformly distributed point of `S^{n-1}`.
    pub fn point_on_sphere(&mut self, n: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..n).map(|_| self.normal()).collect();
            let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm > 1e-300 {
                return v.into_iter().map(|c| c / norm).collect();
            }
        }
    }
}

/// `count` uniform points of `S^{n-1}` from a single stream.
pub fn uniform_on_sphere<T: Real>(n: usize, count: usize, seed: u64) -> Vec<Vec<T>> {
    let mut rng = SphereRng::new(seed);
    (0..count)
        .map(|_| rng.point_on_sphere(n).into_iter().map(lit).collect())
        .collect()
}

/// A Haar-random orthogonal `n × n` matrix (row-major), by Gram-Schmidt on
/// Gaussian columns.
pub fn random_orthogonal<T: Real>(n: usize, seed: u64) -> Vec<T> {
    let mut rng = SphereRng::new(seed);
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
        for _ in 0..2 {
            for c in &cols {
                let d: f64 = v.iter().zip(c).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(c).for_each(|(a, b)| *a -= d * b);
            }
        }
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|c| c / norm).collect());
        }
    }
    let mut m = vec![T::zero(); n * n];
    for (j, c) in cols.iter().enumerate() {
        for (i, &v) in c.iter().enumerate() {
            m[i * n + j] = lit(v);
        }
    }
    m
}

/// Sphere points `ζ_i` with stored map values `f(ζ_i)`; reused across
/// evaluation points so every estimate shares the same random numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereSample<T> {
    n: usize,
    len: usize,
    antithetic: bool,
    points: Vec<T>,
    values: Vec<T>,
}

fn chunk_bounds(len: usize) -> Vec<(usize, usize)> {
    (0..len.div_ceil(CHUNK_SIZE))
        .map(|c| (c * CHUNK_SIZE, ((c + 1) * CHUNK_SIZE).min(len)))
        .collect()
}

impl<T: Real> SphereSample<T> {
    /// `samples` independent uniform points.
    pub fn draw<M: BoundaryMap<T> + ?Sized>(map: &M, samples: usize, seed: u64) -> Result<Self> {
        Self::draw_impl(map, samples, seed, false)
    }

    /// `samples / 2` antipodal pairs `(ζ, -ζ)`. Odd maps then have a sample
    /// mean of zero up to rounding; bounds are computed from pair averages.
    pub fn draw_antithetic<M: BoundaryMap<T> + ?Sized>(
        map: &M,
        samples: usize,
        seed: u64,
    ) -> Result<Self> {
        if samples % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "antithetic sampling needs an even sample count, got {samples}"
            )));
        }
        Self::draw_impl(map, samples, seed, true)
    }

    fn draw_impl<M: BoundaryMap<T> + ?Sized>(
        map: &M,
        samples: usize,
        seed: u64,
        antithetic: bool,
    ) -> Result<Self> {
        if samples < MIN_SAMPLES {
            return Err(Error::InsufficientSamples {
                got: samples,
                min: MIN_SAMPLES,
            });
        }
        let n = map.dim();
        if n < 2 {
            return Err(Error::InvalidArgument(format!("dimension must be >= 2, got {n}")));
        }
        let bounds = chunk_bounds(samples);
        let mut streams = Vec::with_capacity(bounds.len());
        let mut rng = SphereRng::new(seed);
        for _ in &bounds {
            streams.push(rng.clone());
            rng.jump();
        }
        let chunks: Vec<(Vec<T>, Vec<T>)> = bounds
            .par_iter()
            .zip(streams)
            .map(|(&(lo, hi), mut rng)| {
                let mut pts: Vec<T> = Vec::with_capacity((hi - lo) * n);
                let mut vals = vec![T::zero(); (hi - lo) * n];
                for (i, out) in vals.chunks_exact_mut(n).enumerate() {
                    let start = pts.len();
                    if antithetic && i % 2 == 1 {
                        for j in start - n..start {
                            pts.push(-pts[j]);
                        }
                    } else {
                        pts.extend(rng.point_on_sphere(n).into_iter().map(lit::<T>));
                    }
                    map.eval(&pts[start..start + n], out);
                }
                (pts, vals)
            })
            .collect();
        let mut points = Vec::with_capacity(samples * n);
        let mut values = Vec::with_capacity(samples * n);
        for (p, v) in chunks {
            points.extend(p);
            values.extend(v);
        }
        Ok(Self {
            n,
            len: samples,
            antithetic,
            points,
            values,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_antithetic(&self) -> bool {
        self.antithetic
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.points[i * self.n..(i + 1) * self.n]
    }

    pub fn value(&self, i: usize) -> &[T] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    /// Componentwise sample mean of `w(ζ) f(ζ)` with a 3-sigma bound.
    pub fn weighted_mean<W: Fn(&[T]) -> T + Sync>(&self, weight: W) -> Vec<EvalResult<T>> {
        self.weighted_mean_shifted(weight, &vec![T::zero(); self.n])
    }

    /// Componentwise sample mean of `w(ζ) (f(ζ) - shift)` with a 3-sigma bound.
    pub fn weighted_mean_shifted<W: Fn(&[T]) -> T + Sync>(
        &self,
        weight: W,
        shift: &[T],
    ) -> Vec<EvalResult<T>> {
        let n = self.n;
        assert_eq!(shift.len(), n, "shift has the wrong dimension");
        let bounds = chunk_bounds(self.len);
        let first: Vec<(Vec<T>, Vec<T>)> = bounds
            .par_iter()
            .map(|&(lo, hi)| {
                let mut sums = vec![T::zero(); n];
                let weights: Vec<T> = (lo..hi)
                    .map(|i| {
                        let w = weight(self.point(i));
                        for ((s, &f), &a) in sums.iter_mut().zip(self.value(i)).zip(shift) {
                            *s = *s + w * (f - a);
                        }
                        w
                    })
                    .collect();
                (weights, sums)
            })
            .collect();
        let count = from_usize::<T>(self.len);
        let mut mean = vec![T::zero(); n];
        for (_, sums) in &first {
            for (m, &s) in mean.iter_mut().zip(sums) {
                *m = *m + s;
            }
        }
        mean.iter_mut().for_each(|m| *m = *m / count);

        // Antithetic pairs are averaged first; the pair means are i.i.d.
        let group = if self.antithetic { 2 } else { 1 };
        let inv = T::one() / from_usize::<T>(group);
        let second: Vec<Vec<T>> = bounds
            .par_iter()
            .zip(&first)
            .map(|(&(lo, _), (weights, _))| {
                let mut sq = vec![T::zero(); n];
                for (g, ws) in weights.chunks(group).enumerate() {
                    for (c, (s, &m)) in sq.iter_mut().zip(&mean).enumerate() {
                        let avg = ws
                            .iter()
                            .enumerate()
                            .fold(T::zero(), |acc, (k, &w)| {
                                acc + w * (self.value(lo + g * group + k)[c] - shift[c])
                            })
                            * inv;
                        let d = avg - m;
                        *s = *s + d * d;
                    }
                }
                sq
            })
            .collect();
        let mut var = vec![T::zero(); n];
        for sq in &second {
            for (v, &s) in var.iter_mut().zip(sq) {
                *v = *v + s;
            }
        }
        let groups = self.len / group;
        let dof = from_usize::<T>(groups - 1);
        let count = from_usize::<T>(groups);
        mean.into_iter()
            .zip(var)
            .map(|(m, v)| EvalResult::new(m, lit::<T>(SIGMAS) * (v / dof / count).sqrt(), self.len))
            .collect()
    }

    fn check_point(&self, x: &BallPoint<T>) -> Result<()> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.dim(),
            });
        }
        let r = x.norm();
        // Tolerate rounding in points constructed at exactly the guard radius.
        if r > lit::<T>(MC_GUARD_RADIUS) * (T::one() + lit(1e-12)) {
            return Err(Error::TooCloseToBoundary {
                norm: r.to_f64().unwrap_or(f64::NAN),
                guard: MC_GUARD_RADIUS,
            });
        }
        Ok(())
    }

    /// Estimate of `u(x) = P[f](x)`.
    pub fn extension(&self, x: &BallPoint<T>) -> Result<Vec<EvalResult<T>>> {
        self.check_point(x)?;
        let r2 = x.norm() * x.norm();
        Ok(self.weighted_mean(|z| kernel_unit(x.coords(), r2, z)))
    }

    /// Estimate of `u(x) - c u(0)` as the single mean of `(P(x, ζ) - c) f(ζ)`.
    pub fn centered_extension(&self, x: &BallPoint<T>, c: T) -> Result<Vec<EvalResult<T>>> {
        self.check_point(x)?;
        let r2 = x.norm() * x.norm();
        Ok(self.weighted_mean(|z| kernel_unit(x.coords(), r2, z) - c))
    }

    /// Estimate of `u(x) - c u(0)` with the kernel peak removed:
    /// `(1 - c) a + mean((P(x, ζ) - c)(f(ζ) - a))`. Unbiased for any `a`;
    /// `a = f(x / |x|)` makes the integrand vanish where `P` is largest.
    pub fn anchored_extension(&self, x: &BallPoint<T>, c: T, anchor: &[T]) -> Result<Vec<EvalResult<T>>> {
        self.check_point(x)?;
        if anchor.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: anchor.len(),
            });
        }
        let r2 = x.norm() * x.norm();
        let mean = self.weighted_mean_shifted(|z| kernel_unit(x.coords(), r2, z) - c, anchor);
        Ok(mean
            .into_iter()
            .zip(anchor)
            .map(|(m, &a)| EvalResult::new(m.value + (T::one() - c) * a, m.error_bound, m.terms_used))
            .collect())
    }

    /// Estimate of `u(0)`, the spherical mean of `f`.
    pub fn center(&self) -> Vec<EvalResult<T>> {
        self.weighted_mean(|_| T::one())
    }
}

/// Monte Carlo estimate of `P[f](x)`, componentwise with 3-sigma bounds.
pub fn mc_extension<T: Real, M: BoundaryMap<T> + ?Sized>(
    map: &M,
    x: &BallPoint<T>,
    samples: usize,
    seed: u64,
) -> Result<Vec<EvalResult<T>>> {
    if x.dim() != map.dim() {
        return Err(Error::DimensionMismatch {
            expected: map.dim(),
            got: x.dim(),
        });
    }
    let r = x.norm();
    if r > lit::<T>(MC_GUARD_RADIUS) * (T::one() + lit(1e-12)) {
        return Err(Error::TooCloseToBoundary {
            norm: r.to_f64().unwrap_or(f64::NAN),
            guard: MC_GUARD_RADIUS,
        });
    }
    SphereSample::draw(map, samples, seed)?.extension(x)
}
