//! Numerical library for a family of integral transforms on the half line:
//! the exponential-quadratic transform `L2`, the Laplace transform, the
//! Stieltjes-type transforms `P` and `P_{nu,2}`, the inverse-square-root
//! kernel transform `G`, and the Bessel-kernel transforms `H_nu` and `K_nu`.
//!
//! On top of the transforms sit a catalog of closed-form evaluations
//! ([`identities`]) and a harness for the exchange relations that connect
//! pairs of transforms ([`parseval`]). Both are checked by comparing adaptive
//! quadrature of the defining integrals against direct special-function
//! evaluation.

pub mod error;
pub mod real;

pub mod specfun;

pub mod quad;

pub mod transforms;

pub mod identities;

pub mod parseval;

pub mod report;

pub use error::{Error, Result};
pub use real::Real;

/// Concrete aliases for the common case. The library is generic over
/// [`Real`]; these pin `f64`, which is what the catalogs and the CLI use.
pub type QuadConfig = quad::QuadConfig<f64>;
pub type QuadResult = quad::QuadResult<f64>;
pub type RealFunction = transforms::RealFunction<f64>;
