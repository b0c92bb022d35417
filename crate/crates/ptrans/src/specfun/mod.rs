//! Special functions backing the transform kernels and closed forms.
//!
//! Everything is evaluated in the scalar type `T: Real`; accuracy targets
//! are relative ~1e-13 for the gamma family and Bessel functions away from
//! zeros, and ~1e-10 for the confluent hypergeometric layer.

mod besselj;
mod besselk;
mod cheb;
mod expint;
mod gamma;
mod gammainc;
mod hyper;

pub use besselj::{bessel_j, bessel_j_zeros};
pub use besselk::{bessel_k, bessel_k_scaled};
pub use expint::exp_integral_e1;
pub use gamma::{beta, gamma, ln_gamma, rgamma};
pub use gammainc::{erfc, upper_gamma, upper_gamma_scaled};
pub use hyper::{kummer_m, tricomi_psi, whittaker_w, PsiEval};

pub(crate) use expint::exp_integral_e1_scaled;
