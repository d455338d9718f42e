use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real scalar backing every amplitude and measure: `f32` or `f64`.
///
/// The tolerances are per-type because the stepping and measure contracts
/// are stated for double precision; single precision gets looser but
/// still meaningful bounds.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Allowed change of the squared norm across one step.
    fn step_norm_tol() -> Self;

    /// Amplitudes at or below this magnitude may be dropped at the lattice edge.
    fn edge_zero_tol() -> Self;

    /// Tolerance for density-matrix validity (Hermiticity, trace, eigenvalue sign).
    fn density_tol() -> Self;

    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    fn from_usize_lossy(v: usize) -> Self {
        Self::from_usize(v).expect("usize representable in scalar type")
    }
}

impl Scalar for f64 {
    fn step_norm_tol() -> Self {
        1e-12
    }
    fn edge_zero_tol() -> Self {
        1e-14
    }
    fn density_tol() -> Self {
        1e-10
    }
}

impl Scalar for f32 {
    fn step_norm_tol() -> Self {
        1e-5
    }
    fn edge_zero_tol() -> Self {
        1e-7
    }
    fn density_tol() -> Self {
        1e-4
    }
}

pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn czero<T: Scalar>() -> C<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub(crate) fn creal<T: Scalar>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}
