//! Exponential integral E1.

use crate::error::{Error, Result};
use crate::real::Real;

pub(crate) const EULER_GAMMA: f64 = 0.5772156649015329;

const MAX_ITER: usize = 400;

/// E1(x) = integral of exp(-t)/t from x to infinity, x > 0.
///
/// Series for x <= 1, Lentz continued fraction above. `x = +inf` maps to 0,
/// which the transform layer relies on when kernels push the argument there.
pub fn exp_integral_e1<T: Real>(x: T) -> Result<T> {
    e1_impl(x, false)
}

/// exp(x) * E1(x), safe from underflow for large x.
pub(crate) fn exp_integral_e1_scaled<T: Real>(x: T) -> Result<T> {
    e1_impl(x, true)
}

fn e1_impl<T: Real>(x: T, scaled: bool) -> Result<T> {
    if x.is_nan() || x <= T::zero() {
        return Err(Error::Domain(format!("e1: need x > 0, got {x}")));
    }
    if x == T::infinity() {
        // exp(x)E1(x) ~ 1/x -> 0 as well
        return Ok(T::zero());
    }
    if x <= T::one() {
        // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
        let mut p = T::one(); // (-x)^k / k!
        let mut sum = T::zero();
        for k in 1..=MAX_ITER {
            let kf = T::cst(k as f64);
            p = p * (-x) / kf;
            let term = p / kf;
            sum = sum - term;
            if term.abs() < sum.abs().max(T::one()) * T::epsilon() {
                let v = -T::cst(EULER_GAMMA) - x.ln() + sum;
                return Ok(if scaled { x.exp() * v } else { v });
            }
        }
        return Err(Error::NonConvergence(format!("e1 series at x={x}")));
    }
    // E1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...)))) via Lentz
    let tiny = T::cst(1e-300).max(T::min_positive_value());
    let mut b = x + T::one();
    let mut c = T::one() / tiny;
    let mut d = T::one() / b;
    let mut h = d;
    for k in 1..=MAX_ITER {
        let a = -T::cst((k * k) as f64);
        b = b + T::cst(2.0);
        d = T::one() / (a * d + b);
        c = b + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        let del = c * d;
        h = h * del;
        if (del - T::one()).abs() < T::epsilon() {
            let v = if scaled { h } else { (-x).exp() * h };
            return Ok(v);
        }
    }
    Err(Error::NonConvergence(format!("e1 continued fraction at x={x}")))
}
