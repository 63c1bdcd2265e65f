//! Test maps: the sharpness sequence `f_m` and seeded random trigonometric maps.

use crate::ballharmonic::{norm, AxisymProfile, BoundaryMap, SphereRng};
use crate::{lit, Real};

/// Points used to estimate the sup-norm of a random map.
pub const SUP_GRID_POINTS: usize = 4096;

/// Target sup-norm of a random map after scaling (5% safety margin).
pub const SUP_TARGET: f64 = 0.95;

/// The odd, increasing, piecewise linear profile
///
/// ```text
/// h_m(t) = (m - 1) t                 for |t| <= 1/m,
/// h_m(t) = ±(1 - (1 - |t|)/(m - 1))  for 1/m < |t| <= 1,
/// ```
///
/// so that `h_m(±1/m) = ±(1 - 1/m)`, `h_m(±1) = ±1`, `h_2(t) = t` and
/// `h_m → sign` pointwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HmProfile {
    pub m: usize,
}

impl HmProfile {
    pub fn new(m: usize) -> crate::Result<Self> {
        if m < 2 {
            return Err(crate::Error::InvalidArgument(format!("m must be at least 2, got {m}")));
        }
        Ok(Self { m })
    }
}

impl<T: Real> AxisymProfile<T> for HmProfile {
    fn value(&self, t: T) -> T {
        let m = lit::<T>(self.m as f64);
        let one = T::one();
        let a = t.abs();
        let mag = if a * m <= one {
            (m - one) * a
        } else {
            one - (one - a) / (m - one)
        };
        if t < T::zero() {
            -mag
        } else {
            mag
        }
    }

    fn breakpoints(&self) -> Vec<T> {
        let b = T::one() / lit::<T>(self.m as f64);
        vec![-b, b]
    }
}

/// `f_m(ζ) = sqrt(1 - h_m(ζ_n)²) / sqrt(1 - ζ_n²) (ζ_1, ..., ζ_{n-1}, 0) + (0, ..., 0, h_m(ζ_n))`,
/// a homeomorphism of the sphere.
#[derive(Debug, Clone, Copy)]
pub struct FmMap {
    pub n: usize,
    pub profile: HmProfile,
}

impl FmMap {
    pub fn new(n: usize, m: usize) -> crate::Result<Self> {
        if n < 2 {
            return Err(crate::Error::InvalidArgument(format!("dimension must be >= 2, got {n}")));
        }
        Ok(Self {
            n,
            profile: HmProfile::new(m)?,
        })
    }
}

impl<T: Real> BoundaryMap<T> for FmMap {
    fn dim(&self) -> usize {
        self.n
    }

    fn eval(&self, zeta: &[T], out: &mut [T]) {
        let k = self.n - 1;
        let h: T = self.profile.value(zeta[k]);
        // |ζ'| equals sqrt(1 - ζ_n²) on the sphere and is accurate near the poles.
        let tangential = norm(&zeta[..k]);
        let factor = if tangential > T::zero() {
            (T::one() - h * h).max(T::zero()).sqrt() / tangential
        } else {
            T::zero()
        };
        for (o, &z) in out[..k].iter_mut().zip(&zeta[..k]) {
            *o = factor * z;
        }
        out[k] = h;
    }
}

/// A random map `f_i(ζ) = s Σ_j a_ij sin(ω_j · ζ + φ_ij)`, optionally
/// antisymmetrized, with `s` chosen so that the estimated sup-norm is
/// [`SUP_TARGET`]. Values are finally clamped radially into the closed ball,
/// which keeps the map odd when it is odd.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigMap<T> {
    n: usize,
    terms: usize,
    odd: bool,
    freq: Vec<T>,
    amp: Vec<T>,
    phase: Vec<T>,
    scale: T,
}

impl<T: Real> TrigMap<T> {
    pub const DEFAULT_TERMS: usize = 3;

    pub fn random(n: usize, seed: u64) -> Self {
        Self::with_terms(n, Self::DEFAULT_TERMS, seed, false)
    }

    /// Antisymmetrized variant: `f(-ζ) = -f(ζ)`, hence `P[f](0) = 0`.
    pub fn random_odd(n: usize, seed: u64) -> Self {
        Self::with_terms(n, Self::DEFAULT_TERMS, seed, true)
    }

    pub fn with_terms(n: usize, terms: usize, seed: u64, odd: bool) -> Self {
        assert!(n >= 2 && terms >= 1, "need n >= 2 and at least one term");
        let mut rng = SphereRng::new(seed);
        let freq = (0..terms * n).map(|_| lit(2.0 * rng.normal())).collect();
        let amp = (0..n * terms).map(|_| lit(rng.normal())).collect();
        let phase = (0..n * terms)
            .map(|_| lit(std::f64::consts::TAU * rng.uniform()))
            .collect();
        let mut map = Self {
            n,
            terms,
            odd,
            freq,
            amp,
            phase,
            scale: T::one(),
        };
        let mut sup = T::zero();
        let mut buf = vec![T::zero(); n];
        let mut probe = |z: &[T], buf: &mut [T]| {
            map.raw(z, buf);
            sup = sup.max(norm(buf));
        };
        for _ in 0..SUP_GRID_POINTS {
            let z: Vec<T> = rng.point_on_sphere(n).into_iter().map(lit).collect();
            probe(&z, &mut buf);
        }
        for i in 0..n {
            for s in [T::one(), -T::one()] {
                let mut z = vec![T::zero(); n];
                z[i] = s;
                probe(&z, &mut buf);
            }
        }
        if sup > T::zero() {
            map.scale = lit::<T>(SUP_TARGET) / sup;
        }
        map
    }

    pub fn is_odd(&self) -> bool {
        self.odd
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    fn plain(&self, zeta: &[T], out: &mut [T]) {
        let n = self.n;
        let dots: Vec<T> = (0..self.terms)
            .map(|j| {
                self.freq[j * n..(j + 1) * n]
                    .iter()
                    .zip(zeta)
                    .fold(T::zero(), |s, (&w, &z)| s + w * z)
            })
            .collect();
        for (i, o) in out.iter_mut().enumerate() {
            *o = dots.iter().enumerate().fold(T::zero(), |s, (j, &d)| {
                let k = i * self.terms + j;
                s + self.amp[k] * (d + self.phase[k]).sin()
            });
        }
    }

    /// Unscaled values.
    fn raw(&self, zeta: &[T], out: &mut [T]) {
        self.plain(zeta, out);
        if self.odd {
            let minus: Vec<T> = zeta.iter().map(|&z| -z).collect();
            let mut back = vec![T::zero(); self.n];
            self.plain(&minus, &mut back);
            for (o, b) in out.iter_mut().zip(back) {
                *o = (*o - b) * lit(0.5);
            }
        }
    }
}

impl<T: Real> BoundaryMap<T> for TrigMap<T> {
    fn dim(&self) -> usize {
        self.n
    }

    fn eval(&self, zeta: &[T], out: &mut [T]) {
        self.raw(zeta, out);
        for o in out.iter_mut() {
            *o = *o * self.scale;
        }
        let len = norm(out);
        if len > T::one() {
            for o in out.iter_mut() {
                *o = *o / len;
            }
        }
    }
}

/// Seed of substream `stream` of `seed` (SplitMix64 finalizer).
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `count` random maps; map `i` uses `derive_seed(seed, i)`.
pub fn random_map_family<T: Real>(n: usize, count: usize, seed: u64, odd: bool) -> Vec<TrigMap<T>> {
    (0..count as u64)
        .map(|i| TrigMap::with_terms(n, TrigMap::<T>::DEFAULT_TERMS, derive_seed(seed, i), odd))
        .collect()
}
