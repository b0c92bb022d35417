//! Bessel functions of the first kind for real order, plus their positive
//! zeros. Continued-fraction (Steed) evaluation with a Temme series for the
//! reflection part at small argument.

use crate::error::{Error, Result};
use crate::real::Real;

use super::cheb::temme_gamma;

const MAX_ITER: usize = 30_000;

/// J and Y of order `xnu >= 0` at `x > 0`, with derivatives.
/// Port of the classic Steed-method routine; accurate to ~1e-13 relative
/// away from zeros for moderate order and argument.
pub(crate) struct Bessjy<T> {
    pub j: T,
    pub jp: T,
    pub y: T,
    #[allow(dead_code)]
    pub yp: T,
}

pub(crate) fn bessjy<T: Real>(xnu: T, x: T) -> Result<Bessjy<T>> {
    if !(x > T::zero()) || !(xnu >= T::zero()) {
        return Err(Error::Domain(format!("bessjy: need x > 0, nu >= 0, got nu={xnu}, x={x}")));
    }
    let eps = T::epsilon();
    let fpmin = T::min_positive_value() / eps;
    let xmin = T::cst(2.0);
    let two = T::cst(2.0);

    let nl: i32 = if x < xmin {
        (xnu + T::cst(0.5)).to_f64() as i32
    } else {
        ((xnu - x + T::cst(1.5)).to_f64() as i32).max(0)
    };
    let xmu = xnu - T::cst(nl as f64);
    let xmu2 = xmu * xmu;
    let xi = T::one() / x;
    let xi2 = two * xi;
    let w = xi2 / T::PI(); // Wronskian

    // CF1: h = J'_nu / J_nu, isign tracks the sign of J_nu
    let mut isign = T::one();
    let mut h = xnu * xi;
    if h < fpmin {
        h = fpmin;
    }
    let mut b = xi2 * xnu;
    let mut d = T::zero();
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAX_ITER {
        b = b + xi2;
        d = b - d;
        if d.abs() < fpmin {
            d = fpmin;
        }
        c = b - T::one() / c;
        if c.abs() < fpmin {
            c = fpmin;
        }
        d = T::one() / d;
        let del = c * d;
        h = del * h;
        if d < T::zero() {
            isign = -isign;
        }
        if (del - T::one()).abs() < eps {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence(format!("bessjy CF1 nu={xnu} x={x}")));
    }

    // downward recurrence from nu to xmu
    let mut rjl = isign * fpmin;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = xnu * xi;
    for _ in (1..=nl).rev() {
        let rjtemp = fact * rjl + rjpl;
        fact = fact - xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == T::zero() {
        rjl = eps;
    }
    let f = rjpl / rjl;

    let (rjmu, rymu, rymup, ry1);
    if x < xmin {
        // Temme series for Y_xmu and Y_{xmu+1}
        let x2 = T::cst(0.5) * x;
        let pimu = T::PI() * xmu;
        let fact = if pimu.abs() < eps {
            T::one()
        } else {
            pimu / pimu.sin()
        };
        let lnx2 = x2.ln();
        let e = xmu * (-lnx2);
        let fact2 = if e.abs() < eps {
            T::one()
        } else {
            e.sinh() / e
        };
        let tg = temme_gamma(xmu);
        let (gam1, gam2, gampl, gammi) = (tg.g1, tg.g2, tg.inv_gamma_1p, tg.inv_gamma_1m);
        let mut ff = two / T::PI() * fact * (gam1 * e.cosh() + gam2 * fact2 * (-lnx2));
        let e = e.exp();
        let mut p = e / (gampl * T::PI());
        let mut q = T::one() / (e * T::PI() * gammi);
        let pimu2 = T::cst(0.5) * pimu;
        let fact3 = if pimu2.abs() < eps {
            T::one()
        } else {
            pimu2.sin() / pimu2
        };
        let r = T::PI() * pimu2 * fact3 * fact3;
        let mut cc = T::one();
        let dd = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut ok = false;
        for i in 1..=MAX_ITER {
            let fi = T::cst(i as f64);
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            cc = cc * dd / fi;
            p = p / (fi - xmu);
            q = q / (fi + xmu);
            let del = cc * (ff + r * q);
            sum = sum + del;
            let del1 = cc * p - fi * del;
            sum1 = sum1 + del1;
            if del.abs() < (T::one() + sum.abs()) * eps {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::NonConvergence(format!("bessjy Temme series nu={xnu} x={x}")));
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2 via complex Lentz
        let a = T::cst(0.25) - xmu2;
        let mut p = -T::cst(0.5) * xi;
        let mut q = T::one();
        let br = two * x;
        let mut bi = two;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut a_run = a;
        let mut ok = false;
        for i in 2..=MAX_ITER {
            a_run = a_run + T::cst((2 * (i - 1)) as f64);
            bi = bi + two;
            dr = a_run * dr + br;
            di = a_run * di + bi;
            if dr.abs() + di.abs() < fpmin {
                dr = fpmin;
            }
            fact = a_run / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < fpmin {
                cr = fpmin;
            }
            den = dr * dr + di * di;
            dr = dr / den;
            di = -di / den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            let temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - T::one()).abs() + dli.abs() < eps {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::NonConvergence(format!("bessjy CF2 nu={xnu} x={x}")));
        }
        let gam = (p - f) / q;
        let mut rjmu_v = (w / ((p - f) * gam + q)).sqrt();
        if rjl < T::zero() {
            rjmu_v = -rjmu_v.abs();
        } else {
            rjmu_v = rjmu_v.abs();
        }
        rjmu = rjmu_v;
        rymu = rjmu * gam;
        rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    let fact = rjmu / rjl;
    let j = rjl1 * fact;
    let jp = rjp1 * fact;
    let mut rymu_r = rymu;
    let mut ry1_r = ry1;
    for i in 1..=nl {
        let rytemp = (xmu + T::cst(i as f64)) * xi2 * ry1_r - rymu_r;
        rymu_r = ry1_r;
        ry1_r = rytemp;
    }
    let y = rymu_r;
    let yp = xnu * xi * rymu_r - ry1_r;
    Ok(Bessjy { j, jp, y, yp })
}

/// J_nu(x) for any real order, x >= 0.
///
/// Negative non-integer order diverges at x = 0; negative order away from 0
/// goes through the reflection J_{-r} = cos(pi r) J_r - sin(pi r) Y_r, with
/// integer orders short-circuited to (-1)^n J_n to avoid the Y cancellation.
pub fn bessel_j<T: Real>(nu: T, x: T) -> Result<T> {
    if x.is_nan() || nu.is_nan() || x < T::zero() {
        return Err(Error::Domain(format!("bessel_j: need x >= 0, got nu={nu}, x={x}")));
    }
    if x == T::zero() {
        if nu == T::zero() {
            return Ok(T::one());
        }
        if nu > T::zero() || nu.fract() == T::zero() {
            return Ok(T::zero());
        }
        return Err(Error::Domain(format!(
            "bessel_j: J_nu diverges at x = 0 for negative non-integer nu = {nu}"
        )));
    }
    if nu >= T::zero() {
        return Ok(bessjy(nu, x)?.j);
    }
    let rho = -nu;
    if rho.fract() == T::zero() {
        let j = bessjy(rho, x)?.j;
        let n = rho.to_f64() as i64;
        return Ok(if n % 2 == 0 { j } else { -j });
    }
    let bj = bessjy(rho, x)?;
    let ang = T::PI() * rho;
    Ok(ang.cos() * bj.j - ang.sin() * bj.y)
}

/// First `count` positive zeros of J_nu, nu > -1.
///
/// McMahon asymptotic seed polished by Newton; each zero is accurate to a
/// few ulps, which the oscillatory integrator's panel splitting relies on.
pub fn bessel_j_zeros<T: Real>(nu: T, count: usize) -> Result<Vec<T>> {
    if !(nu > -T::one()) {
        return Err(Error::Domain(format!("bessel_j_zeros: need nu > -1, got {nu}")));
    }
    let mut zeros = Vec::with_capacity(count);
    let mu4 = T::cst(4.0) * nu * nu;
    let mut prev = T::zero();
    for k in 1..=count {
        let beta = (T::cst(k as f64) + T::cst(0.5) * nu - T::cst(0.25)) * T::PI();
        let b8 = T::cst(8.0) * beta;
        let mut x = beta - (mu4 - T::one()) / b8
            - T::cst(4.0) * (mu4 - T::one()) * (T::cst(7.0) * mu4 - T::cst(31.0))
                / (T::cst(3.0) * b8 * b8 * b8);
        if x <= prev {
            x = prev + T::cst(0.5);
        }
        let lo = prev + T::cst(1e-3);
        let hi = x + T::PI();
        let mut refined = false;
        for _ in 0..60 {
            let (j, jp) = j_with_derivative(nu, x)?;
            let step = j / jp;
            let mut xn = x - step;
            if xn <= lo || xn >= hi {
                xn = T::cst(0.5) * (x + if step > T::zero() { lo } else { hi });
            }
            // 64 ulp absorbs the evaluation noise of J near its zeros at
            // large x, which otherwise makes Newton ping-pong forever
            let done = (xn - x).abs() <= T::cst(64.0) * T::epsilon() * xn;
            x = xn;
            if done {
                refined = true;
                break;
            }
        }
        if !refined {
            return Err(Error::NonConvergence(format!(
                "bessel_j_zeros: Newton stalled at nu={nu}, k={k}"
            )));
        }
        zeros.push(x);
        prev = x;
    }
    Ok(zeros)
}

fn j_with_derivative<T: Real>(nu: T, x: T) -> Result<(T, T)> {
    if nu >= T::zero() {
        let b = bessjy(nu, x)?;
        return Ok((b.j, b.jp));
    }
    // J'_nu = -J_{nu+1} + (nu/x) J_nu keeps every order evaluated >= -1
    let j = bessel_j(nu, x)?;
    let j1 = bessel_j(nu + T::one(), x)?;
    Ok((j, -j1 + nu / x * j))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_reference_values() {
        // mpmath besselj
        let cases = [
            (0.0f64, 1.0, 0.7651976865579666),
            (0.0, 5.0, -0.1775967713143383),
            (1.0, 1.0, 0.4400505857449335),
            (0.5, 2.0, 0.5130161365618278),
            (2.5, 7.5, -0.29910405245731305),
            (3.0, 0.3, 0.0005593430477488461),
            (-0.5, 1.0, 0.4310988680183761),
            (-1.5, 2.0, -0.3956232813587035),
            (-2.0, 3.0, 0.4860912605858911),
            (0.75, 10.0, -0.04968928974751508),
        ];
        for (nu, x, want) in cases {
            let got = bessel_j(nu, x).unwrap();
            assert!(
                (got - want).abs() < 2e-13 * (1.0 + want.abs()),
                "J_{nu}({x}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn j_at_origin() {
        assert_eq!(bessel_j(0.0f64, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1.5f64, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j(-3.0f64, 0.0).unwrap(), 0.0);
        assert!(bessel_j(-0.5f64, 0.0).is_err());
    }

    #[test]
    fn half_order_closed_forms() {
        // J_{1/2} = sqrt(2/(pi x)) sin x, J_{-1/2} = sqrt(2/(pi x)) cos x
        for &x in &[0.3f64, 1.0, 2.0, 7.0, 20.0] {
            let amp = (2.0 / (std::f64::consts::PI * x)).sqrt();
            let jp = bessel_j(0.5f64, x).unwrap();
            let jm = bessel_j(-0.5f64, x).unwrap();
            assert!((jp - amp * x.sin()).abs() < 1e-12, "x={x}");
            assert!((jm - amp * x.cos()).abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn zeros_are_zeros_and_interlace() {
        for &nu in &[0.0f64, 0.5, 1.0, 2.5, -0.5] {
            let zs = bessel_j_zeros(nu, 12).unwrap();
            let mut prev = 0.0;
            for &z in &zs {
                assert!(z > prev, "ordered, nu={nu}");
                let j = bessel_j(nu, z).unwrap();
                // |J'| at a zero is ~ sqrt(2/(pi z)); residual scaled by that
                assert!(
                    j.abs() < 1e-10 / z.sqrt(),
                    "residual J_{nu}({z}) = {j}"
                );
                prev = z;
            }
            // spacing tends to pi
            let gap = zs[11] - zs[10];
            assert!((gap - std::f64::consts::PI).abs() < 0.1, "nu={nu}, gap={gap}");
        }
    }

    #[test]
    fn first_zero_of_j0() {
        let z = bessel_j_zeros(0.0f64, 1).unwrap()[0];
        assert!((z - 2.404825557695773).abs() < 1e-12);
    }
}
