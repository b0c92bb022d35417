//! Oscillatory Bessel-kernel integrals over (0, infinity): panels between
//! consecutive kernel zeros, partial sums accelerated by Aitken with a
//! Levin-u fallback when Aitken stalls.

use crate::error::{Error, Result};
use crate::real::Real;
use crate::specfun::{bessel_j, bessel_j_zeros};

use super::accel::{iterated_aitken, levin_u};
use super::adaptive::integrate_segmented;
use super::{QuadConfig, QuadResult, Strategy};

/// Integrate envelope(x) * J_order(freq * x) over (0, infinity).
///
/// The envelope carries everything smooth (and any algebraic growth or
/// integrable singularity at 0); the kernel's sign structure comes from its
/// zeros, so panel sums alternate once the envelope decays monotonically.
/// Envelopes with exponential decay simply converge absolutely and are
/// summed directly; an envelope that neither decays nor alternates within
/// the block budget is an acceleration failure.
pub fn integrate_oscillatory_bessel<T, F>(
    mut envelope: F,
    order: T,
    freq: T,
    cfg: &QuadConfig<T>,
) -> Result<QuadResult<T>>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    if !(freq > T::zero()) || !freq.is_finite() {
        return Err(Error::Domain(format!(
            "oscillatory integration: need freq > 0, got {freq}"
        )));
    }
    // absolutely convergent series may run past the nominal block budget
    let max_panels = (cfg.oscillatory_blocks as usize) * 4;
    let zeros = bessel_j_zeros(order, max_panels + 1)?;

    let mut panel_cfg = cfg.clone();
    panel_cfg.abs_tol = cfg.abs_tol / T::cst(cfg.oscillatory_blocks.max(8) as f64);
    panel_cfg.max_subdivisions = 200;

    let mut g = |x: T| -> Result<T> { Ok(envelope(x)? * bessel_j(order, freq * x)?) };

    let mut evals: u64 = 0;
    let mut terms: Vec<T> = Vec::new();
    let mut partials: Vec<T> = Vec::new();
    let mut quad_err_sum = T::zero();
    let mut sum = T::zero();

    let mut best_val: Option<T> = None;
    let mut best_res = T::infinity();
    let mut stall = 0u32;
    let mut lo = T::zero();

    for (k, &z) in zeros.iter().enumerate() {
        let hi = z / freq;
        let p = integrate_segmented(&mut g, &[lo, hi], &panel_cfg)?;
        lo = hi;
        evals += p.evals;
        quad_err_sum = quad_err_sum + p.error_estimate;
        sum = sum + p.value;
        terms.push(p.value);
        partials.push(sum);

        let tol = cfg.tolerance_for(sum);

        // direct-sum convergence: the panel terms themselves are dead
        let n = terms.len();
        if n >= 2 {
            let last_two = terms[n - 1].abs() + terms[n - 2].abs();
            if last_two < tol * T::cst(0.5) {
                let err = quad_err_sum + terms[n - 1].abs();
                return Ok(QuadResult {
                    value: sum,
                    error_estimate: err,
                    evals,
                    converged: false,
                    strategy: Strategy::OscillatoryAccelerated,
                }
                .finalize(cfg));
            }
        }

        // a growing term magnitude means the integral diverges (in-range
        // envelopes always decay against the kernel's 1/sqrt(x) amplitude)
        if n >= 8 {
            let growing = terms[n - 5..].windows(2).all(|w| w[1].abs() > w[0].abs());
            if growing && terms[n - 1].abs() > tol * T::cst(10.0) {
                return Err(Error::Acceleration(format!(
                    "panel terms growing after {n} kernel-zero panels: |{}| > |{}|",
                    terms[n - 1],
                    terms[n - 5]
                )));
            }
        }

        let alternating = n >= 6
            && terms[n - 4..]
                .windows(2)
                .all(|w| w[0] * w[1] < T::zero());
        if alternating {
            if let Some((v, res)) = iterated_aitken(&partials) {
                if res < best_res {
                    if res < best_res * T::cst(0.7) {
                        stall = 0;
                    }
                    best_res = res;
                    best_val = Some(v);
                } else {
                    stall += 1;
                }
            }
            if stall >= 3 || n as u32 >= cfg.oscillatory_blocks {
                // Aitken has stopped contracting: Levin-u over a trailing
                // window, added onto the directly-summed prefix
                let window = n.min(16);
                let prefix = if n > window {
                    partials[n - window - 1]
                } else {
                    T::zero()
                };
                if let Some((tail, res)) = levin_u(&terms[n - window..]) {
                    let v = prefix + tail;
                    if res < best_res {
                        best_res = res;
                        best_val = Some(v);
                    }
                }
            }
            if let Some(v) = best_val {
                if best_res + quad_err_sum <= cfg.tolerance_for(v) {
                    return Ok(QuadResult {
                        value: v,
                        error_estimate: best_res + quad_err_sum,
                        evals,
                        converged: false,
                        strategy: Strategy::OscillatoryAccelerated,
                    }
                    .finalize(cfg));
                }
            }
        }

        // non-alternating series get the extended budget only while their
        // terms are shrinking (absolute convergence in progress)
        if k + 1 >= cfg.oscillatory_blocks as usize && !alternating {
            let shrinking = n >= 3 && terms[n - 1].abs() < terms[n - 3].abs();
            if !shrinking {
                return Err(Error::Acceleration(format!(
                    "no alternating decay after {} kernel-zero panels (last term {})",
                    n,
                    terms[n - 1]
                )));
            }
        }
        if evals + 64 > cfg.max_evals {
            break;
        }
    }

    // budget exhausted: report the best extrapolation we have, honestly
    // flagged against the tolerance
    let (value, error_estimate) = match best_val {
        Some(v) => (v, best_res + quad_err_sum),
        None => (sum, quad_err_sum + terms.last().map(|t| t.abs()).unwrap_or(T::zero())),
    };
    Ok(QuadResult {
        value,
        error_estimate,
        evals,
        converged: false,
        strategy: Strategy::OscillatoryAccelerated,
    }
    .finalize(cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadConfig<f64> {
        QuadConfig::default()
    }

    #[test]
    fn j0_with_gaussian_envelope() {
        // int_0^inf x e^{-x^2} J_0(x) dx = e^{-1/4}/2
        let r = integrate_oscillatory_bessel(|x: f64| Ok(x * (-x * x).exp()), 0.0, 1.0, &cfg())
            .unwrap();
        let exact = (-0.25f64).exp() / 2.0;
        assert!(
            ((r.value - exact) / exact).abs() < 1e-9,
            "got {}, want {exact}",
            r.value
        );
    }

    #[test]
    fn slowly_decaying_envelope_needs_acceleration() {
        // int_0^inf J_0(x) x/(x^2+1) dx = K_0(1)
        let r = integrate_oscillatory_bessel(|x: f64| Ok(x / (x * x + 1.0)), 0.0, 1.0, &cfg())
            .unwrap();
        let exact = 0.42102443824070834;
        assert!(
            ((r.value - exact) / exact).abs() < 1e-7,
            "got {}, err est {}",
            r.value,
            r.error_estimate
        );
        assert!(((r.value - exact) / exact).abs() < 3.0 * (r.error_estimate / exact).abs() + 1e-9);
    }

    #[test]
    fn sine_integral_via_half_order() {
        // int_0^inf sin(x)/x dx = pi/2, as sqrt(pi x/2) J_{1/2}(x) / x envelope
        let r = integrate_oscillatory_bessel(
            |x: f64| Ok((std::f64::consts::PI * x / 2.0).sqrt() / x),
            0.5,
            1.0,
            &cfg(),
        )
        .unwrap();
        assert!(
            (r.value - std::f64::consts::FRAC_PI_2).abs() < 1e-6,
            "got {}",
            r.value
        );
    }

    #[test]
    fn non_decaying_envelope_fails() {
        let r = integrate_oscillatory_bessel(|x: f64| Ok(1.0 + x), 0.0, 1.0, &cfg());
        assert!(matches!(r, Err(Error::Acceleration(_))));
    }

    #[test]
    fn frequency_scaling() {
        // int_0^inf x e^{-x^2} J_0(3x) dx = e^{-9/4}/2
        let r = integrate_oscillatory_bessel(|x: f64| Ok(x * (-x * x).exp()), 0.0, 3.0, &cfg())
            .unwrap();
        let exact = (-2.25f64).exp() / 2.0;
        assert!(((r.value - exact) / exact).abs() < 1e-8);
    }
}
