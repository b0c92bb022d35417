//! Upper incomplete gamma function, its exp-scaled variant, and erfc.

use crate::error::{Error, Result};
use crate::real::Real;

use super::expint::{exp_integral_e1, exp_integral_e1_scaled};
use super::gamma::gamma;

const MAX_ITER: usize = 600;

/// Gamma(a, x) = integral of t^{a-1} e^{-t} from x to infinity.
///
/// `x >= 0`; any real `a` is accepted when `x > 0`, while `x = 0` requires
/// `a > 0` (where the value is Gamma(a)).
pub fn upper_gamma<T: Real>(a: T, x: T) -> Result<T> {
    gamma_inc_impl(a, x, false)
}

/// exp(x) * Gamma(a, x). For large x the unscaled value underflows while
/// this stays O(x^{a-1}); kernels built from incomplete gamma at arguments
/// like t^2 y^2 need the scaled form to stay in range.
pub fn upper_gamma_scaled<T: Real>(a: T, x: T) -> Result<T> {
    gamma_inc_impl(a, x, true)
}

fn gamma_inc_impl<T: Real>(a: T, x: T, scaled: bool) -> Result<T> {
    if x.is_nan() || a.is_nan() || x < T::zero() {
        return Err(Error::Domain(format!("upper_gamma: need x >= 0, got a={a}, x={x}")));
    }
    if x == T::infinity() {
        if scaled {
            return Err(Error::Domain("upper_gamma: scaled form at infinite x".into()));
        }
        return Ok(T::zero());
    }
    if x == T::zero() {
        if a > T::zero() {
            return gamma(a); // scaled factor e^0 = 1
        }
        return Err(Error::Domain(format!(
            "upper_gamma: diverges at x = 0 for a = {a} <= 0"
        )));
    }
    if a > T::zero() {
        return positive_a(a, x, scaled);
    }
    // a <= 0: walk down from a starting order in (0, 1], or from
    // Gamma(0, x) = E1(x) when a is a nonpositive integer. The recurrence is
    // Gamma(s - 1, x) = (Gamma(s, x) - x^{s-1} e^{-x}) / (s - 1).
    let (mut s, mut g) = if a.fract() == T::zero() {
        let g0 = if scaled {
            exp_integral_e1_scaled(x)?
        } else {
            exp_integral_e1(x)?
        };
        (T::zero(), g0)
    } else {
        let s0 = a - a.floor(); // in (0, 1)
        (s0, positive_a(s0, x, scaled)?)
    };
    let weight = if scaled { T::one() } else { (-x).exp() };
    while s > a + T::cst(0.5) {
        let sm1 = s - T::one();
        g = (g - x.powf(sm1) * weight) / sm1;
        s = sm1;
    }
    if !g.is_finite() {
        return Err(Error::Overflow(format!("upper_gamma({a}, {x}) out of range")));
    }
    Ok(g)
}

fn positive_a<T: Real>(a: T, x: T, scaled: bool) -> Result<T> {
    if x < a + T::one() {
        // Gamma(a,x) = Gamma(a) - x^a e^{-x} sum_n x^n / (a (a+1) ... (a+n))
        let mut term = T::one() / a;
        let mut sum = term;
        for n in 1..=MAX_ITER {
            term = term * x / (a + T::cst(n as f64));
            sum = sum + term;
            if term.abs() < sum.abs() * T::epsilon() {
                let g = gamma(a)?;
                let v = if scaled {
                    x.exp() * g - x.powf(a) * sum
                } else {
                    g - x.powf(a) * (-x).exp() * sum
                };
                if !v.is_finite() {
                    return Err(Error::Overflow(format!(
                        "upper_gamma({a}, {x}) out of range"
                    )));
                }
                return Ok(v);
            }
        }
        return Err(Error::NonConvergence(format!("upper_gamma series a={a} x={x}")));
    }
    // Lentz for Gamma(a,x) = e^{-x} x^a / (x + 1 - a - 1(1-a)/(x + 3 - a - ...))
    let tiny = T::cst(1e-300).max(T::min_positive_value());
    let mut b = x + T::one() - a;
    let mut c = T::one() / tiny;
    let mut d = T::one() / b;
    let mut h = d;
    for i in 1..=MAX_ITER {
        let fi = T::cst(i as f64);
        let an = -fi * (fi - a);
        b = b + T::cst(2.0);
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = T::one() / d;
        let del = d * c;
        h = h * del;
        if (del - T::one()).abs() < T::epsilon() {
            let v = if scaled {
                x.powf(a) * h
            } else {
                x.powf(a) * (-x).exp() * h
            };
            if !v.is_finite() {
                return Err(Error::Overflow(format!("upper_gamma({a}, {x}) out of range")));
            }
            return Ok(v);
        }
    }
    Err(Error::NonConvergence(format!(
        "upper_gamma continued fraction a={a} x={x}"
    )))
}

/// Complementary error function, total over the reals.
pub fn erfc<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if x == T::zero() {
        return T::one();
    }
    if x < T::zero() {
        return T::cst(2.0) - erfc(-x);
    }
    if x == T::infinity() {
        return T::zero();
    }
    // erfc(x) = Gamma(1/2, x^2) / sqrt(pi); underflows to 0 near x ~ 27
    // through the e^{-x^2} factor, which is the honest limit.
    let g = upper_gamma(T::cst(0.5), x * x)
        .expect("erfc: incomplete gamma converges for all finite arguments");
    g / T::PI().sqrt()
}
