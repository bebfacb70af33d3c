//! Floating-point scalar abstraction.
//!
//! All core math is generic over [`Scalar`] (f32 or f64). The stated
//! accuracy targets throughout the crate assume binary64; f32 instantiations
//! are supported but reach correspondingly lower precision.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
}

/// Convert an f64 literal into the working scalar type.
#[inline]
pub fn lit<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("literal conversion")
}

/// Convert a small integer into the working scalar type.
#[inline]
pub fn int<T: Scalar>(n: i64) -> T {
    T::from_i64(n).expect("integer conversion")
}
