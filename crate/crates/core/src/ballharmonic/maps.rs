//! Boundary maps `S^{n-1} → closed unit ball of R^n`.

use super::{sign, AxisymProfile};
use crate::Real;

/// A map from the unit sphere of `R^n` into `R^n`, evaluated pointwise.
pub trait BoundaryMap<T: Real>: Sync {
    fn dim(&self) -> usize;

    /// Writes `f(ζ)` into `out` (both of length `dim()`).
    fn eval(&self, zeta: &[T], out: &mut [T]);

    fn eval_vec(&self, zeta: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim()];
        self.eval(zeta, &mut out);
        out
    }
}

impl<T: Real, M: BoundaryMap<T> + ?Sized> BoundaryMap<T> for &M {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn eval(&self, zeta: &[T], out: &mut [T]) {
        (**self).eval(zeta, out)
    }
}

impl<T: Real, M: BoundaryMap<T> + ?Sized + Send> BoundaryMap<T> for Box<M> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn eval(&self, zeta: &[T], out: &mut [T]) {
        (**self).eval(zeta, out)
    }
}

#[derive(Debug, Clone)]
pub struct ConstantMap<T> {
    value: Vec<T>,
}

impl<T: Real> ConstantMap<T> {
    pub fn new(value: Vec<T>) -> Self {
        Self { value }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![T::zero(); n])
    }
}

impl<T: Real> BoundaryMap<T> for ConstantMap<T> {
    fn dim(&self) -> usize {
        self.value.len()
    }
    fn eval(&self, _zeta: &[T], out: &mut [T]) {
        out.copy_from_slice(&self.value);
    }
}

/// `f(ζ) = ζ`; its extension is `u(x) = x`.
#[derive(Debug, Clone, Copy)]
pub struct IdentityMap {
    pub n: usize,
}

impl<T: Real> BoundaryMap<T> for IdentityMap {
    fn dim(&self) -> usize {
        self.n
    }
    fn eval(&self, zeta: &[T], out: &mut [T]) {
        out.copy_from_slice(zeta);
    }
}

/// The extremal map `(0, ..., 0, sign ζ_n)`.
#[derive(Debug, Clone, Copy)]
pub struct SignMap {
    pub n: usize,
}

impl<T: Real> BoundaryMap<T> for SignMap {
    fn dim(&self) -> usize {
        self.n
    }
    fn eval(&self, zeta: &[T], out: &mut [T]) {
        out.fill(T::zero());
        out[self.n - 1] = sign(zeta[self.n - 1]);
    }
}

/// `f(ζ)_i = h_i(ζ_n)`: every component is an axially symmetric profile.
pub struct ZonalMap<T: Real> {
    components: Vec<Box<dyn AxisymProfile<T> + Send>>,
}

impl<T: Real> ZonalMap<T> {
    pub fn new(components: Vec<Box<dyn AxisymProfile<T> + Send>>) -> Self {
        Self { components }
    }

    pub fn components(&self) -> &[Box<dyn AxisymProfile<T> + Send>] {
        &self.components
    }
}

impl<T: Real> BoundaryMap<T> for ZonalMap<T> {
    fn dim(&self) -> usize {
        self.components.len()
    }
    fn eval(&self, zeta: &[T], out: &mut [T]) {
        let t = zeta[zeta.len() - 1];
        for (o, h) in out.iter_mut().zip(&self.components) {
            *o = h.value(t);
        }
    }
}

/// `(f(ζ) - f(-ζ)) / 2`: an odd map, whose extension vanishes at the origin.
pub struct Antisymmetrized<M> {
    inner: M,
}

impl<M> Antisymmetrized<M> {
    pub fn new(inner: M) -> Self {
        Self { inner }
    }
}

impl<T: Real, M: BoundaryMap<T>> BoundaryMap<T> for Antisymmetrized<M> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn eval(&self, zeta: &[T], out: &mut [T]) {
        let minus: Vec<T> = zeta.iter().map(|&z| -z).collect();
        let mut back = vec![T::zero(); out.len()];
        self.inner.eval(zeta, out);
        self.inner.eval(&minus, &mut back);
        let half = T::from_f64(0.5).expect("0.5");
        for (o, b) in out.iter_mut().zip(back) {
            *o = (*o - b) * half;
        }
    }
}

/// `f ∘ O` for an orthogonal matrix `O` (row-major, `n × n`).
pub struct Rotated<M, T> {
    inner: M,
    matrix: Vec<T>,
}

impl<M, T: Real> Rotated<M, T> {
    pub fn new(inner: M, matrix: Vec<T>) -> Self {
        Self { inner, matrix }
    }
}

/// Row-major `n × n` matrix times vector.
pub(crate) fn mat_vec<T: Real>(matrix: &[T], v: &[T]) -> Vec<T> {
    let n = v.len();
    (0..n)
        .map(|i| (0..n).fold(T::zero(), |s, j| s + matrix[i * n + j] * v[j]))
        .collect()
}

impl<T: Real, M: BoundaryMap<T>> BoundaryMap<T> for Rotated<M, T> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn eval(&self, zeta: &[T], out: &mut [T]) {
        self.inner.eval(&mat_vec(&self.matrix, zeta), out);
    }
}

/// A boundary map given by a closure.
pub struct FnMap<F> {
    n: usize,
    f: F,
}

impl<F> FnMap<F> {
    pub fn new(n: usize, f: F) -> Self {
        Self { n, f }
    }
}

impl<T: Real, F: Fn(&[T], &mut [T]) + Sync> BoundaryMap<T> for FnMap<F> {
    fn dim(&self) -> usize {
        self.n
    }
    fn eval(&self, zeta: &[T], out: &mut [T]) {
        (self.f)(zeta, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballharmonic::{ConstantProfile, SignProfile};

    #[test]
    fn sign_map_equator() {
        let m = SignMap { n: 3 };
        assert_eq!(m.eval_vec(&[1.0_f64, 0.0, 0.0]), vec![0.0, 0.0, 0.0]);
        assert_eq!(m.eval_vec(&[0.0_f64, 0.6, -0.8]), vec![0.0, 0.0, -1.0]);
    }

    #[test]
    fn antisymmetrized_is_odd() {
        let m = Antisymmetrized::new(FnMap::new(2, |z: &[f64], out: &mut [f64]| {
            out[0] = 0.3 + z[0] * z[1];
            out[1] = z[0] + 0.2 * z[1] * z[1];
        }));
        let a = m.eval_vec(&[0.6, 0.8]);
        let b = m.eval_vec(&[-0.6, -0.8]);
        assert_eq!(a[0], -b[0]);
        assert_eq!(a[1], -b[1]);
        assert!((a[1] - 0.6).abs() < 1e-15);
        assert_eq!(a[0], 0.0);
    }

    #[test]
    fn zonal_and_rotation() {
        let z = ZonalMap::<f64>::new(vec![Box::new(ConstantProfile(0.5)), Box::new(SignProfile)]);
        assert_eq!(z.eval_vec(&[0.6, -0.8]), vec![0.5, -1.0]);
        // Quarter turn: (x, y) -> (-y, x).
        let rot = Rotated::new(IdentityMap { n: 2 }, vec![0.0, -1.0, 1.0, 0.0]);
        assert_eq!(BoundaryMap::<f64>::eval_vec(&rot, &[1.0, 0.0]), vec![0.0, 1.0]);
    }
}
