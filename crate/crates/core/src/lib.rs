//! Sharp Heinz constants for harmonic self-maps of the unit ball.
//!
//! The crate evaluates the extremal harmonic profile `U(rN)` (the Poisson
//! extension of the hemisphere data `+1 / -1`), its radial derivative `V(r)`,
//! and the sharp constant `C_n = V(1)`. Around those it provides numerical
//! checks of the harmonic Schwarz inequality, the ratio bound
//! `(1 - |u(x)|) / (1 - |x|) >= C_n` and the boundary derivative bound, by
//! quadrature, certified series summation and seeded Monte Carlo.
//!
//! All numerical code is generic over [`Real`], implemented for `f32` and
//! `f64`. The `*64` aliases at the crate root name the double-precision types
//! the CLI and the acceptance suite work with; every tolerance in the docs
//! assumes `f64`.
//!
//! Modules:
//! - [`specfun`]: log-gamma, Pochhammer symbols, `pFq` series with certified
//!   truncation bounds and the two transformations the profile formulas need.
//! - [`quadrature`]: adaptive Gauss-Kronrod (G7/K15) on finite intervals.
//! - [`ballharmonic`]: Poisson kernel, axially symmetric extension by
//!   quadrature, seeded Monte Carlo extension of general boundary maps.
//! - [`heinz`]: `U`, `V`, `C_n` and the closed forms for `n = 2, 3, 4`.
//! - [`verify`]: inequality harnesses and the extremal boundary-map sequence.

pub mod ballharmonic;
pub mod error;
pub mod heinz;
pub mod quadrature;
pub mod report;
pub mod specfun;
pub mod verify;

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

pub use error::{Error, Result};
pub use report::{ReportPoint, ReportSummary, VerificationReport};
pub use specfun::{EvalResult, HypergeomSpec};

/// Floating point scalar used throughout the crate: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + serde::Serialize
    + 'static
{
    /// Smallest tolerance a caller may request; smaller values are raised to it.
    const TOL_FLOOR: f64;
}

impl Real for f32 {
    const TOL_FLOOR: f64 = 1e-5;
}

impl Real for f64 {
    const TOL_FLOOR: f64 = 1e-13;
}

/// Converts an `f64` literal into `T`.
#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

#[inline]
pub(crate) fn from_usize<T: Real>(k: usize) -> T {
    T::from_usize(k).expect("count representable in scalar type")
}

/// Clamps a requested tolerance to the scalar type's floor.
#[inline]
pub(crate) fn effective_tol<T: Real>(tol: T) -> T {
    tol.max(lit(T::TOL_FLOOR))
}

pub type EvalResult64 = EvalResult<f64>;
pub type EvalResult32 = EvalResult<f32>;
pub type HypergeomSpec64 = HypergeomSpec<f64>;
pub type HypergeomSpec32 = HypergeomSpec<f32>;
pub type VerificationReport64 = VerificationReport<f64>;
pub type ReportPoint64 = ReportPoint<f64>;
pub type BallPoint64 = ballharmonic::BallPoint<f64>;
pub type SphereSample64 = ballharmonic::SphereSample<f64>;
pub type SharpnessTable64 = verify::SharpnessTable<f64>;
pub type TrigMap64 = verify::TrigMap<f64>;
pub type NamedReport64 = verify::NamedReport<f64>;
