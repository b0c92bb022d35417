//! Modified Bessel function of the second kind, real order.
//!
//! Order is reduced to |mu| <= 1/2, the base pair K_mu, K_{mu+1} comes from
//! a Temme series (x <= 2) or a Steed continued fraction (x > 2), both in
//! exp(x)-scaled form, and the forward recurrence climbs to the target.

use crate::error::{Error, Result};
use crate::real::Real;

use super::cheb::temme_gamma;

const MAX_ITER: usize = 15_000;

/// K_nu(x) for x > 0. Even in nu. Underflows to 0 for x beyond ~705.
pub fn bessel_k<T: Real>(nu: T, x: T) -> Result<T> {
    let scaled = bessel_k_scaled(nu, x)?;
    Ok(scaled * (-x).exp())
}

/// exp(x) * K_nu(x), which stays O(sqrt(pi/2x)) for large x. The
/// exponentially-weighted quadrature routes need this form.
pub fn bessel_k_scaled<T: Real>(nu: T, x: T) -> Result<T> {
    if !(x > T::zero()) || nu.is_nan() {
        return Err(Error::Domain(format!("bessel_k: need x > 0, got nu={nu}, x={x}")));
    }
    let nu = nu.abs();
    let bn = (nu + T::cst(0.5)).floor().to_f64() as i32;
    let mu = nu - T::cst(bn as f64); // in [-1/2, 1/2)

    let (k_mu, k_mup1) = if x <= T::cst(2.0) {
        k_scaled_temme(mu, x)?
    } else {
        k_scaled_cf2(mu, x)?
    };

    let mut k_lo = k_mu;
    let mut k_hi = k_mup1;
    if bn == 0 {
        return Ok(k_lo);
    }
    let big = T::max_value().sqrt();
    for n in 1..bn {
        let next = k_lo + T::cst(2.0) * (mu + T::cst(n as f64)) / x * k_hi;
        if next > big {
            return Err(Error::Overflow(format!("bessel_k({nu}, {x}) out of range")));
        }
        k_lo = k_hi;
        k_hi = next;
    }
    Ok(k_hi)
}

/// Scaled pair (K_mu, K_{mu+1}) by Temme's series, |mu| <= 1/2, 0 < x <= 2.
fn k_scaled_temme<T: Real>(mu: T, x: T) -> Result<(T, T)> {
    let eps = T::epsilon();
    let half_x = T::cst(0.5) * x;
    let ln_half_x = half_x.ln();
    let half_x_mu = (mu * ln_half_x).exp();
    let pi_mu = T::PI() * mu;
    let sigma = -mu * ln_half_x;
    let sinrat = if pi_mu.abs() < eps {
        T::one()
    } else {
        pi_mu / pi_mu.sin()
    };
    let sinhrat = if sigma.abs() < eps {
        T::one()
    } else {
        sigma.sinh() / sigma
    };
    let ex = x.exp();

    let tg = temme_gamma(mu);
    // the series wants Gamma(1 +/- mu) themselves
    let gamma_1p = T::one() / tg.inv_gamma_1p;
    let gamma_1m = T::one() / tg.inv_gamma_1m;

    let mut fk = sinrat * (sigma.cosh() * tg.g1 - sinhrat * ln_half_x * tg.g2);
    let mut pk = T::cst(0.5) / half_x_mu * gamma_1p;
    let mut qk = T::cst(0.5) * half_x_mu * gamma_1m;
    let mut hk = pk;
    let mut ck = T::one();
    let mut sum0 = fk;
    let mut sum1 = hk;
    let mut ok = false;
    for k in 1..=MAX_ITER {
        let kf = T::cst(k as f64);
        fk = (kf * fk + pk + qk) / (kf * kf - mu * mu);
        ck = ck * half_x * half_x / kf;
        pk = pk / (kf - mu);
        qk = qk / (kf + mu);
        hk = -kf * fk + pk;
        let del0 = ck * fk;
        let del1 = ck * hk;
        sum0 = sum0 + del0;
        sum1 = sum1 + del1;
        if del0.abs() < T::cst(0.5) * sum0.abs() * eps {
            ok = true;
            break;
        }
    }
    if !ok {
        return Err(Error::NonConvergence(format!("bessel_k Temme series mu={mu} x={x}")));
    }
    Ok((sum0 * ex, sum1 * (T::cst(2.0) / x) * ex))
}

/// Scaled pair by the Steed-Temme continued fraction, |mu| <= 1/2, x > 2.
fn k_scaled_cf2<T: Real>(mu: T, x: T) -> Result<(T, T)> {
    let eps = T::epsilon();
    let one = T::one();
    let two = T::cst(2.0);

    let mut bi = two * (one + x);
    let mut di = one / bi;
    let mut delhi = di;
    let mut hi = di;

    let mut qi = T::zero();
    let mut qip1 = one;

    let mut ai = -(T::cst(0.25) - mu * mu);
    let a1 = ai;
    let mut ci = -ai;
    let mut qsum = -ai;

    let mut s = one + qsum * delhi;

    let mut ok = false;
    for i in 2..=MAX_ITER {
        let fi = T::cst(i as f64);
        ai = ai - two * (fi - one);
        ci = -ai * ci / fi;
        let tmp = (qi - bi * qip1) / ai;
        qi = qip1;
        qip1 = tmp;
        qsum = qsum + ci * qip1;
        bi = bi + two;
        di = one / (bi + ai * di);
        delhi = (bi * di - one) * delhi;
        hi = hi + delhi;
        let dels = qsum * delhi;
        s = s + dels;
        if (dels / s).abs() < eps {
            ok = true;
            break;
        }
    }
    if !ok {
        return Err(Error::NonConvergence(format!("bessel_k CF2 mu={mu} x={x}")));
    }
    let hi = hi * (-a1);

    let k_mu = (T::PI() / (two * x)).sqrt() / s;
    let k_mup1 = k_mu * (mu + x + T::cst(0.5) - hi) / x;
    Ok((k_mu, k_mup1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_reference_values() {
        // mpmath besselk
        let cases = [
            (0.0f64, 1.0, 0.42102443824070834),
            (0.0, 0.1, 2.4270690247020166),
            (1.0, 1.0, 0.6019072301972346),
            (0.5, 2.0, 0.11993777196806145),
            (2.0, 3.0, 0.06151045847174205),
            (2.5, 0.5, 20.425904466498485),
            (1.5, 10.0, 1.9792825903075698e-5),
            (0.25, 4.0, 0.011238375536958104),
        ];
        for (nu, x, want) in cases {
            let got = bessel_k(nu, x).unwrap();
            assert!(
                ((got - want) / want).abs() < 1e-12,
                "K_{nu}({x}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn k_half_order_closed_form() {
        // K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}
        for &x in &[0.2f64, 1.0, 3.0, 15.0] {
            let want = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp();
            let got = bessel_k(0.5f64, x).unwrap();
            assert!(((got - want) / want).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn k_is_even_in_order() {
        for &nu in &[0.3f64, 0.5, 1.7, 2.5] {
            for &x in &[0.4f64, 1.5, 6.0] {
                let a = bessel_k(nu, x).unwrap();
                let b = bessel_k(-nu, x).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn k_scaled_tracks_plain() {
        for &(nu, x) in &[(0.0f64, 0.5), (1.5, 2.5), (0.75, 40.0)] {
            let s = bessel_k_scaled(nu, x).unwrap();
            let p = bessel_k(nu, x).unwrap();
            assert!((s - p * x.exp()).abs() < 1e-11 * s.abs());
        }
        // far beyond the underflow point of the plain value
        let s = bessel_k_scaled(1.0f64, 800.0).unwrap();
        let asym = (std::f64::consts::PI / 1600.0f64).sqrt();
        assert!((s - asym).abs() < 1e-3 * asym);
        assert_eq!(bessel_k(1.0f64, 800.0).unwrap(), 0.0);
    }

    #[test]
    fn k_domain() {
        assert!(bessel_k(1.0f64, 0.0).is_err());
        assert!(bessel_k(1.0f64, -2.0).is_err());
    }
}
