//! Semi-infinite and truncated-decay integration strategies.

use crate::error::{Error, Result};
use crate::real::Real;

use super::adaptive::integrate_segmented;
use super::{QuadConfig, QuadResult, Strategy};

/// Integrate f over (a, infinity) through the map x = a + t/(1-t).
///
/// The integrand must decay faster than 1/x^2 for the transformed integrand
/// to stay bounded; dyadic probes of x*f(x) catch the divergent case before
/// any quadrature money is spent.
pub fn integrate_semi_infinite<T, F>(
    mut f: F,
    a: T,
    cfg: &QuadConfig<T>,
) -> Result<QuadResult<T>>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    if !a.is_finite() {
        return Err(Error::Domain(format!("integrate_semi_infinite: bad lower limit {a}")));
    }
    let mut evals: u64 = 0;

    // Probe x|f(x)| at x - a = 2^8 and 2^16. Integrability over (a, inf)
    // needs this magnitude to head to zero; if eight octaves shave less
    // than half off it, the tail is divergent or too marginal to trust.
    let mut mag = [T::zero(); 2];
    for (i, k) in [8, 16].into_iter().enumerate() {
        let x = a + T::cst(f64::powi(2.0, k));
        let v = f(x)?;
        evals += 1;
        mag[i] = v.abs() * (x - a);
    }
    if mag[1] > T::cst(0.5) * mag[0] && mag[1] > T::cst(1e-8) {
        return Err(Error::Tail(format!(
            "integrand does not decay: x*f(x) is {} at x-a=256 and {} at x-a=65536",
            mag[0], mag[1]
        )));
    }

    let one = T::one();
    let eps = T::cst(f64::EPSILON);
    // x = a + (t/(1-t))^2. Squaring the usual rational map doubles the decay
    // the endpoint sees: a tail f ~ x^-p lands at (1-t)^(2p-3), so every
    // p >= 1.5 transforms to a bounded (at worst logarithmic) integrand and
    // the panels next to t = 1 hold only O(eps log eps) mass. Under the
    // linear map the same tail keeps a (1-t)^(p-2) spike whose sub-eps mass
    // (~eps^(p-1), e.g. 1e-6 at p = 1.5) is silently lost below the guard.
    let mut g = |t: T| -> Result<T> {
        let omt = one - t;
        // Below machine resolution of the endpoint the map overflows; with
        // the tails this strategy accepts, the mass out there is O(eps) or
        // logarithmically close to it, so zero is exact to working precision.
        if omt <= eps {
            return Ok(T::zero());
        }
        let ratio = t / omt;
        let x = a + ratio * ratio;
        let v = f(x)?;
        Ok(v * T::cst(2.0) * ratio / (omt * omt))
    };
    // seed panels crowd toward t = 1 where all the large-x structure lands
    let bp: Vec<T> = [0.0, 0.25, 0.5, 0.75, 0.9, 0.97, 0.99, 0.997, 0.999, 1.0 - 1e-4, 1.0]
        .iter()
        .map(|&t| T::cst(t))
        .collect();
    let mut r = integrate_segmented(&mut g, &bp, cfg)?;
    r.evals += evals;
    r.strategy = Strategy::SemiInfiniteTransformed;
    Ok(r)
}

/// Integrate f over (0, infinity) where |f(x)| <= M exp(-rate x^2) up to
/// polynomial factors. The rate is metadata for picking the truncation
/// point, not a weight: f is evaluated as given, and the discarded tail
/// enters the error estimate analytically.
pub fn integrate_gaussian_decay<T, F>(f: F, rate: T, cfg: &QuadConfig<T>) -> Result<QuadResult<T>>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    truncated_decay(f, rate, cfg, DecayKind::Gaussian)
}

/// Integrate f over (0, infinity) where |f(x)| <= M exp(-rate x) up to
/// polynomial factors, same scheme.
pub fn integrate_exponential_decay<T, F>(
    f: F,
    rate: T,
    cfg: &QuadConfig<T>,
) -> Result<QuadResult<T>>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    truncated_decay(f, rate, cfg, DecayKind::Exponential)
}

#[derive(Clone, Copy, PartialEq)]
enum DecayKind {
    Gaussian,
    Exponential,
}

fn truncated_decay<T, F>(
    mut f: F,
    rate: T,
    cfg: &QuadConfig<T>,
    kind: DecayKind,
) -> Result<QuadResult<T>>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    if !(rate > T::zero()) || !rate.is_finite() {
        return Err(Error::Domain(format!("decay integration: need rate > 0, got {rate}")));
    }
    let one = T::one();
    let tail_tol = cfg.truncation_tail_tol;
    let ln_inv_tol = (one / tail_tol).ln();
    let x_scale = match kind {
        DecayKind::Gaussian => (ln_inv_tol / rate).sqrt(),
        DecayKind::Exponential => ln_inv_tol / rate,
    };
    let ln_comp = |x: T| match kind {
        DecayKind::Gaussian => rate * x * x,
        DecayKind::Exponential => rate * x,
    };

    // Probe ln|f| + rate x^2 (the decay-compensated magnitude, all in log
    // space so the compensation cannot overflow) at dyadic points reaching
    // past the nominal truncation point. Its max bounds the polynomial
    // prefactor; growth steeper than x^60 means the declared decay is a lie.
    let mut evals: u64 = 0;
    let mut probes: Vec<(T, Option<T>)> = Vec::new();
    let mut ln_m_max: Option<T> = None;
    for k in -6..=2 {
        let x = x_scale * T::cst(f64::powi(2.0, k));
        let v = f(x)?;
        evals += 1;
        if !v.is_finite() {
            return Err(Error::Eval(format!("integrand non-finite at probe x = {x}")));
        }
        let lm = if v == T::zero() {
            None
        } else {
            Some(v.abs().ln() + ln_comp(x))
        };
        if let Some(l) = lm {
            ln_m_max = Some(match ln_m_max {
                Some(c) => c.max(l),
                None => l,
            });
        }
        probes.push((x, lm));
    }
    for w in probes.windows(2) {
        if let ((x0, Some(l0)), (x1, Some(l1))) = (w[0], w[1]) {
            // Only the windows at or past the nominal truncation point can
            // testify that the declared decay is a lie; below it, a function
            // that is flat to all orders at the origin (e.g. exp(-1/x^2))
            // climbs out of underflow with an arbitrarily steep log-slope.
            if x0 < x_scale {
                continue;
            }
            let p = (l1 - l0) / (x1 / x0).ln();
            if p > T::cst(60.0) {
                return Err(Error::Tail(format!(
                    "integrand grows like x^{p:.1} on top of the declared decay near x = {x1}"
                )));
            }
        }
    }
    let ln_m_max = ln_m_max.unwrap_or_else(T::zero);

    // A large prefactor pushes the truncation point out; a uniformly tiny
    // integrand must NOT pull it in. Truncation is a relative-accuracy
    // decision: when this integral is the inner stage of a nested transform,
    // the caller divides away the overall scale, and a tail discarded for
    // being absolutely small comes back as a systematic relative bias.
    let ln_m_tol = (ln_m_max.max(T::zero()) + ln_inv_tol).max(one);
    let x_max = match kind {
        DecayKind::Gaussian => (ln_m_tol / rate).sqrt(),
        DecayKind::Exponential => ln_m_tol / rate,
    };
    let tail_bound = match kind {
        // int_X^inf M e^{-r x^2} dx <= M e^{-r X^2} / (2 r X)
        DecayKind::Gaussian => (ln_m_max - rate * x_max * x_max).exp() / ((rate + rate) * x_max),
        // int_X^inf M e^{-r x} dx = M e^{-r X} / r
        DecayKind::Exponential => (ln_m_max - rate * x_max).exp() / rate,
    };

    // Log-spaced initial partition: the integrand may live at scales far
    // below x_max (for instance a sharp inner transform under a slow outer
    // weight), and a single panel would alias right over it.
    let first = match kind {
        DecayKind::Gaussian => one.min(one / rate.sqrt()) / T::cst(64.0),
        DecayKind::Exponential => one.min(one / rate) / T::cst(64.0),
    };
    let mut bp = vec![T::zero()];
    let mut x = first.min(x_max * T::cst(0.5));
    while x < x_max {
        bp.push(x);
        x = x + x;
    }
    bp.push(x_max);

    let mut r = integrate_segmented(&mut f, &bp, cfg)?;
    r.evals += evals;
    r.error_estimate = r.error_estimate + tail_bound;
    r.strategy = Strategy::DecayingTruncated;
    Ok(r.finalize(cfg))
}
