//! Scalar abstraction for the geometry and bounds code.
//!
//! Everything numeric is generic over [`Real`] so the same algorithms run at
//! `f32` or `f64`; the crate root exports `f64` aliases, which is what the
//! harness and CLI use.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar with the constants and conversions the crate needs.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Send + Sync + 'static
{
}

/// Converts an `f64` constant into the working scalar.
///
/// Panics only if `T` cannot represent any `f64` at all, which no `Real`
/// implementation of interest does.
#[inline]
pub fn cst<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("constant not representable in scalar type")
}

/// Default absolute tolerance for geometric predicates.
pub const DEFAULT_TOL: f64 = 1e-9;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cst_round_trips_in_both_widths() {
        let a: f64 = cst(1.5);
        let b: f32 = cst(1.5);
        assert_eq!(a, 1.5);
        assert_eq!(b, 1.5f32);
    }
}
