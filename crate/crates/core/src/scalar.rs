//! Real scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FromPrimitive, ToPrimitive};

/// A real floating-point field usable as the base of complex matrices.
///
/// Implemented for `f32` and `f64`. All structure maps are permutation or
/// identity matrices in the finite model, so the only inexact operations
/// are square roots of weights and the random-unitary construction.
pub trait Real: Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + Sum + 'static {
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite real converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex scalar over a [`Real`] field.
pub type Scalar<T> = Complex<T>;

#[inline]
pub(crate) fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub(crate) fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

#[inline]
pub(crate) fn creal<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}
