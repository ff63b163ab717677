//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point type usable as a probability.
///
/// Besides the arithmetic from [`Float`], each implementation fixes the
/// tolerances used by the LP engine and the fitting loops, since a bound that
/// is tight for `f64` is below the resolution of `f32`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Feasibility and optimality tolerance.
    fn feasibility_tol() -> Self;
    /// Smallest pivot magnitude accepted by the simplex ratio test.
    fn pivot_tol() -> Self;
    /// Convergence threshold for iterative proportional fitting.
    fn ipf_tol() -> Self;

    /// Lossy conversion from an `f64` literal.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable as scalar")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn feasibility_tol() -> Self {
        1e-9
    }
    fn pivot_tol() -> Self {
        1e-11
    }
    fn ipf_tol() -> Self {
        1e-10
    }
}

impl Scalar for f32 {
    fn feasibility_tol() -> Self {
        1e-5
    }
    fn pivot_tol() -> Self {
        1e-6
    }
    fn ipf_tol() -> Self {
        1e-6
    }
}

/// `x * log2(x)` with the `0 log 0 = 0` convention.
pub(crate) fn xlog2x<T: Scalar>(x: T) -> T {
    if x <= T::zero() {
        T::zero()
    } else {
        x * x.log2()
    }
}
