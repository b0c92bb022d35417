use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Scalar type the whole crate is generic over.
///
/// Everything numeric in the library works for any `Real`; `f64` is the
/// working type for the catalogs and the CLI, `f32` is exercised in tests
/// at correspondingly loose tolerances.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Sum + Send + Sync + 'static
{
    /// Inject an `f64` constant. Exact for `f64`, rounds once for `f32`.
    fn cst(v: f64) -> Self;

    /// Back to `f64` for reporting.
    fn to_f64(self) -> f64;
}

impl Real for f64 {
    #[inline]
    fn cst(v: f64) -> Self {
        v
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
}

impl Real for f32 {
    #[inline]
    fn cst(v: f64) -> Self {
        v as f32
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }
}
