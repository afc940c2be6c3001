// SPDX-License-Identifier: MIT OR Apache-2.0

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point type the solvers are generic over: `f32` or `f64`.
pub trait Scalar: Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static {
    fn from_usize_exact(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable as float")
    }

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
