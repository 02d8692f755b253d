//! Floating-point scalar abstraction shared by every measure.
//!
//! All of the algebra is written against [`Scalar`], so the same code runs
//! over `f32` and `f64`. Integer counts stay exact (`u64`); only rates and
//! derived measures are generic.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// f32 or f64.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance for rate identities (cells summing to one, margins
    /// matching their cells).
    fn identity_tolerance() -> Self;

    /// Converts an exact count. Counts above 2^53 (f64) or 2^24 (f32) round.
    fn from_count(count: u64) -> Self {
        Self::from_u64(count).expect("count representable as float")
    }

    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("literal representable as float")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::lit(0.5)
    }
}

impl Scalar for f64 {
    fn identity_tolerance() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn identity_tolerance() -> Self {
        1e-5
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_convert_exactly_below_mantissa_limit() {
        assert_eq!(f64::from_count(9_007_199_254_740_992), 9_007_199_254_740_992.0);
        assert_eq!(f32::from_count(16_777_216), 16_777_216.0);
    }

    #[test]
    fn tolerance_scales_with_precision() {
        assert!(f32::identity_tolerance() as f64 > f64::identity_tolerance());
    }
}
