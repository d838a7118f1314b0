//! Scalar abstraction for the geometry and landscape code.
//!
//! Everything in this crate is generic over a floating-point scalar so the
//! same algorithms run in `f64` (the default throughout the CLI and tests)
//! or `f32`. The crate root exposes concrete aliases for both.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable by every algorithm in this crate.
///
/// This is a blanket trait: `f32` and `f64` satisfy it out of the box, and
/// so does any third-party float that implements the `num-traits` core.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + FromStr + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FromPrimitive + ToPrimitive + FromStr + Debug + Display + Send + Sync + 'static
{
}

/// Convert an `f64` constant into the working scalar type.
///
/// Panics if the constant is not representable, which cannot happen for the
/// finite literals this crate feeds it.
pub(crate) fn cast<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("finite constant must be representable in the scalar type")
}

/// Round to 12 significant decimal digits.
///
/// Distances that are equal in exact arithmetic come out of the floating
/// pipeline a few ulps apart (`1.0 - 2.0/3.0 != 1.0/3.0`). Merge deaths are
/// compared at this resolution when aggregating diagram multiplicities, and
/// threshold comparisons treat such near-ties as the equalities they are.
/// Rounded values serve only as comparison keys — stored deaths keep their
/// raw precision. The rounding itself runs in `f64`, which is exact enough
/// for both supported scalar widths.
pub fn round_sig12<T: Real>(x: T) -> T {
    let v = x.to_f64().expect("scalar convertible to f64");
    if v == 0.0 || !v.is_finite() {
        return x;
    }
    let exponent = v.abs().log10().floor() as i32;
    let factor = 10f64.powi(11 - exponent);
    cast((v * factor).round() / factor)
}
