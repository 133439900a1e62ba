//! Scalar abstraction for the numeric core.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, Signed};

/// Real scalar the feature, alignment and averaging code is generic over.
///
/// The bounds are exactly what `f32` and `f64` provide; they also satisfy
/// `rustfft::FftNum`, so one type parameter carries through the whole
/// pipeline from waveform to ranking.
pub trait Scalar:
    Float + Signed + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Cast a finite `f64` constant into the working scalar type.
pub(crate) fn scalar<S: Scalar>(x: f64) -> S {
    S::from_f64(x).expect("finite f64 converts to any Scalar")
}
