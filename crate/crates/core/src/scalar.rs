//! Coefficient fields.
//!
//! Everything in this crate is generic over a [`Scalar`]. Exact work uses
//! [`crate::Rational`]; the floating-point types are accepted for quick
//! numeric experiments, where zero tests are only as good as the rounding.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed};

/// A field of characteristic zero usable as polynomial coefficients.
pub trait Scalar:
    Num + Signed + FromPrimitive + Clone + PartialEq + Debug + Display + Send + Sync + 'static
{
    /// The scalar `n` as an element of the field.
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every field of characteristic zero contains the integers")
    }

    /// The scalar `num / den`.
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }
}

impl<T> Scalar for T where
    T: Num + Signed + FromPrimitive + Clone + PartialEq + Debug + Display + Send + Sync + 'static
{
}
