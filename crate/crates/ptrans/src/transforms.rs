//! The seven integral transforms and the iterated composition, routed to
//! quadrature strategies by declared integrand decay, never by sniffing.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quad::{
    integrate_exponential_decay, integrate_gaussian_decay, integrate_oscillatory_bessel,
    integrate_semi_infinite, QuadConfig, QuadResult,
};
use crate::real::Real;
use crate::specfun::{bessel_j, bessel_k_scaled};

/// How an input function behaves for large x. The transform router keys on
/// this declaration; there is no runtime guessing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GrowthClass<T> {
    /// |f(x)| <= C exp(-rate x^2) up to polynomial factors.
    GaussianDecay { rate: T },
    /// |f(x)| <= C exp(-rate x) up to polynomial factors.
    ExponentialDecay { rate: T },
    /// f(x) ~ x^{-exponent} (times slowly varying factors) as x -> inf.
    AlgebraicDecay { exponent: T },
    /// envelope(x) * J_order(freq x); the envelope must itself be smooth.
    OscillatoryBessel { order: T, freq: T },
    /// Bounded with no useful decay.
    Bounded,
}

type EvalFn<T> = Arc<dyn Fn(T) -> Result<T> + Send + Sync>;

/// A function on (0, infinity) paired with the decay metadata the
/// transforms need to pick an integration strategy.
#[derive(Clone)]
pub struct RealFunction<T: Real> {
    pub name: String,
    eval: EvalFn<T>,
    /// For `OscillatoryBessel` inputs: the smooth envelope alone.
    envelope: Option<EvalFn<T>>,
    pub growth: GrowthClass<T>,
}

impl<T: Real> std::fmt::Debug for RealFunction<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RealFunction")
            .field("name", &self.name)
            .field("growth", &self.growth)
            .finish()
    }
}

impl<T: Real> RealFunction<T> {
    /// Wrap a plain closure. Non-finite outputs become `Error::Eval` when
    /// the quadrature hits them.
    pub fn new(
        name: impl Into<String>,
        growth: GrowthClass<T>,
        f: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        RealFunction {
            name: name.into(),
            eval: Arc::new(move |x| Ok(f(x))),
            envelope: None,
            growth,
        }
    }

    /// Wrap a closure that can fail (kernels built on special functions).
    pub fn new_fallible(
        name: impl Into<String>,
        growth: GrowthClass<T>,
        f: impl Fn(T) -> Result<T> + Send + Sync + 'static,
    ) -> Self {
        RealFunction {
            name: name.into(),
            eval: Arc::new(f),
            envelope: None,
            growth,
        }
    }

    /// envelope(x) * J_order(freq x), with the envelope kept separate so the
    /// oscillatory integrator can pair it with kernel-zero panels.
    pub fn oscillatory(
        name: impl Into<String>,
        order: T,
        freq: T,
        envelope: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        let env: EvalFn<T> = Arc::new(move |x| Ok(envelope(x)));
        let env2 = env.clone();
        RealFunction {
            name: name.into(),
            eval: Arc::new(move |x| Ok(env2(x)? * bessel_j(order, freq * x)?)),
            envelope: Some(env),
            growth: GrowthClass::OscillatoryBessel { order, freq },
        }
    }

    pub fn eval(&self, x: T) -> Result<T> {
        (self.eval)(x)
    }

    pub(crate) fn envelope_fn(&self) -> Option<EvalFn<T>> {
        self.envelope.clone()
    }

    /// f(sqrt(x)), with the growth class transported along.
    pub fn precompose_sqrt(&self) -> RealFunction<T> {
        let f = self.eval.clone();
        let growth = match self.growth {
            GrowthClass::GaussianDecay { rate } => GrowthClass::ExponentialDecay { rate },
            GrowthClass::ExponentialDecay { .. } => GrowthClass::AlgebraicDecay {
                // e^{-r sqrt(x)} beats any power; calling it algebraic with a
                // large exponent keeps the tail checks honest without a
                // dedicated sub-exponential class.
                exponent: T::cst(40.0),
            },
            GrowthClass::AlgebraicDecay { exponent } => GrowthClass::AlgebraicDecay {
                exponent: exponent * T::cst(0.5),
            },
            _ => GrowthClass::Bounded,
        };
        RealFunction {
            name: format!("{}(sqrt(x))", self.name),
            eval: Arc::new(move |x: T| f(x.sqrt())),
            envelope: None,
            growth,
        }
    }

    /// f(x^2), with the growth class transported along.
    pub fn precompose_square(&self) -> RealFunction<T> {
        let f = self.eval.clone();
        let growth = match self.growth {
            // e^{-r x^4} <= e^{-r x^2} for x >= 1, so the declared rate
            // stays a valid bound
            GrowthClass::GaussianDecay { rate } => GrowthClass::GaussianDecay { rate },
            GrowthClass::ExponentialDecay { rate } => GrowthClass::GaussianDecay { rate },
            GrowthClass::AlgebraicDecay { exponent } => GrowthClass::AlgebraicDecay {
                exponent: exponent + exponent,
            },
            _ => GrowthClass::Bounded,
        };
        RealFunction {
            name: format!("{}(x^2)", self.name),
            eval: Arc::new(move |x: T| f(x * x)),
            envelope: None,
            growth,
        }
    }
}

fn require_positive<T: Real>(v: T, what: &str) -> Result<()> {
    if !(v > T::zero()) || !v.is_finite() {
        return Err(Error::Domain(format!("{what} must be positive and finite, got {v}")));
    }
    Ok(())
}

/// L2{f; y} = int_0^inf x f(x) exp(-x^2 y^2) dx.
pub fn l2_transform<T: Real>(f: &RealFunction<T>, y: T, cfg: &QuadConfig<T>) -> Result<QuadResult<T>> {
    require_positive(y, "l2 point y")?;
    let g = f.clone();
    // the kernel guarantees rate y^2 whatever f does; gaussian decay of f
    // itself tightens the truncation point
    let rate = y * y
        + match f.growth {
            GrowthClass::GaussianDecay { rate } => rate,
            _ => T::zero(),
        };
    integrate_gaussian_decay(move |x: T| Ok(x * g.eval(x)? * (-x * x * y * y).exp()), rate, cfg)
}

/// Laplace transform int_0^inf e^{-xy} f(x) dx.
pub fn laplace_transform<T: Real>(
    f: &RealFunction<T>,
    y: T,
    cfg: &QuadConfig<T>,
) -> Result<QuadResult<T>> {
    require_positive(y, "laplace point y")?;
    let g = f.clone();
    let rate = y
        + match f.growth {
            GrowthClass::ExponentialDecay { rate } => rate,
            _ => T::zero(),
        };
    integrate_exponential_decay(move |x: T| Ok(g.eval(x)? * (-x * y).exp()), rate, cfg)
}

/// P{f; y} = int_0^inf x f(x) / (x^2 + y^2) dx.
pub fn widder_transform<T: Real>(
    f: &RealFunction<T>,
    y: T,
    cfg: &QuadConfig<T>,
) -> Result<QuadResult<T>> {
    p_nu2_transform(f, T::one(), y, cfg)
}

/// P_{nu,2}{f; y} = int_0^inf x f(x) / (x^2 + y^2)^nu dx.
pub fn p_nu2_transform<T: Real>(
    f: &RealFunction<T>,
    nu: T,
    y: T,
    cfg: &QuadConfig<T>,
) -> Result<QuadResult<T>> {
    require_positive(y, "p_nu2 point y")?;
    require_positive(nu, "p_nu2 order nu")?;
    let y2 = y * y;
    let two = T::cst(2.0);
    match f.growth {
        GrowthClass::GaussianDecay { rate } => {
            let g = f.clone();
            integrate_gaussian_decay(
                move |x: T| Ok(x * g.eval(x)? / (x * x + y2).powf(nu)),
                rate,
                cfg,
            )
        }
        GrowthClass::ExponentialDecay { rate } => {
            let g = f.clone();
            integrate_exponential_decay(
                move |x: T| Ok(x * g.eval(x)? / (x * x + y2).powf(nu)),
                rate,
                cfg,
            )
        }
        GrowthClass::AlgebraicDecay { exponent } => {
            if !(exponent + two * nu > two) {
                return Err(Error::Tail(format!(
                    "p_nu2 tail ~ x^{} is not integrable (decay exponent {}, nu {nu})",
                    T::one() - exponent - two * nu,
                    exponent
                )));
            }
            let g = f.clone();
            integrate_semi_infinite(
                move |x: T| Ok(x * g.eval(x)? / (x * x + y2).powf(nu)),
                T::zero(),
                cfg,
            )
        }
        GrowthClass::OscillatoryBessel { order, freq } => {
            let env = f.envelope_fn().ok_or_else(|| {
                Error::Usage("oscillatory input lacks an envelope".into())
            })?;
            integrate_oscillatory_bessel(
                move |x: T| Ok(x * env(x)? / (x * x + y2).powf(nu)),
                order,
                freq,
                cfg,
            )
        }
        GrowthClass::Bounded => {
            if !(nu > T::one()) {
                return Err(Error::Tail(format!(
                    "p_nu2 of a bounded function needs nu > 1, got {nu}"
                )));
            }
            let g = f.clone();
            integrate_semi_infinite(
                move |x: T| Ok(x * g.eval(x)? / (x * x + y2).powf(nu)),
                T::zero(),
                cfg,
            )
        }
    }
}

/// G{f; y} = int_0^inf f(x) / sqrt(x^2 + y^2) dx.
pub fn glasser_transform<T: Real>(
    f: &RealFunction<T>,
    y: T,
    cfg: &QuadConfig<T>,
) -> Result<QuadResult<T>> {
    require_positive(y, "glasser point y")?;
    let y2 = y * y;
    match f.growth {
        GrowthClass::GaussianDecay { rate } => {
            let g = f.clone();
            integrate_gaussian_decay(move |x: T| Ok(g.eval(x)? / (x * x + y2).sqrt()), rate, cfg)
        }
        GrowthClass::ExponentialDecay { rate } => {
            let g = f.clone();
            integrate_exponential_decay(move |x: T| Ok(g.eval(x)? / (x * x + y2).sqrt()), rate, cfg)
        }
        GrowthClass::AlgebraicDecay { exponent } => {
            if !(exponent > T::zero()) {
                return Err(Error::Tail(format!(
                    "glasser tail ~ x^{} is not integrable",
                    -T::one() - exponent
                )));
            }
            let g = f.clone();
            integrate_semi_infinite(move |x: T| Ok(g.eval(x)? / (x * x + y2).sqrt()), T::zero(), cfg)
        }
        GrowthClass::OscillatoryBessel { order, freq } => {
            let env = f.envelope_fn().ok_or_else(|| {
                Error::Usage("oscillatory input lacks an envelope".into())
            })?;
            integrate_oscillatory_bessel(
                move |x: T| Ok(env(x)? / (x * x + y2).sqrt()),
                order,
                freq,
                cfg,
            )
        }
        GrowthClass::Bounded => Err(Error::Tail(
            "glasser transform of a bounded, non-decaying function diverges".into(),
        )),
    }
}

/// Hankel transform int_0^inf sqrt(xy) J_nu(xy) f(x) dx, nu > -1.
pub fn hankel_transform<T: Real>(
    f: &RealFunction<T>,
    nu: T,
    y: T,
    cfg: &QuadConfig<T>,
) -> Result<QuadResult<T>> {
    require_positive(y, "hankel point y")?;
    if !(nu > -T::one()) {
        return Err(Error::Domain(format!("hankel order must be > -1, got {nu}")));
    }
    if matches!(f.growth, GrowthClass::OscillatoryBessel { .. }) {
        return Err(Error::Domain(
            "hankel transform of a Bessel-kernel input is not supported: the product \
             of two oscillations has no single zero lattice to panel on"
                .into(),
        ));
    }
    let g = f.clone();
    integrate_oscillatory_bessel(
        move |x: T| Ok((x * y).sqrt() * g.eval(x)?),
        nu,
        y,
        cfg,
    )
}

/// K-transform int_0^inf sqrt(xy) K_nu(xy) f(x) dx, |nu| < 3/2 for an
/// integrable kernel singularity at 0 when f(0) is finite.
pub fn k_transform<T: Real>(
    f: &RealFunction<T>,
    nu: T,
    y: T,
    cfg: &QuadConfig<T>,
) -> Result<QuadResult<T>> {
    require_positive(y, "k-transform point y")?;
    let g = f.clone();
    let rate = y
        + match f.growth {
            GrowthClass::ExponentialDecay { rate } => rate,
            _ => T::zero(),
        };
    // scaled K times an explicit e^{-xy} keeps the kernel finite at every
    // evaluation point and underflows gracefully past the truncation cutoff
    integrate_exponential_decay(
        move |x: T| {
            if x == T::zero() {
                return Ok(T::zero()); // measure-zero endpoint, kernel integrable
            }
            Ok((x * y).sqrt() * bessel_k_scaled(nu, x * y)? * (-x * y).exp() * g.eval(x)?)
        },
        rate,
        cfg,
    )
}

/// The composed transform L2{u^{2 nu - 1} L2{g; u}; y}, evaluated as a
/// genuinely nested quadrature. The inner transform runs 10x tighter and
/// its values are memoized per outer abscissa; `evals` reports total calls
/// to `g` plus outer-integrand evaluations, and the shared budget comes
/// from `cfg.max_evals`.
pub fn iterated_l2<T: Real>(
    g: &RealFunction<T>,
    nu: T,
    y: T,
    cfg: &QuadConfig<T>,
) -> Result<QuadResult<T>> {
    require_positive(y, "iterated_l2 point y")?;
    require_positive(nu, "iterated_l2 order nu")?;
    let inner_cfg = cfg.inner();
    let memo: std::sync::Mutex<HashMap<u64, (T, u64)>> = std::sync::Mutex::new(HashMap::new());
    let spent = Arc::new(std::sync::atomic::AtomicU64::new(0));
    let spent_in = spent.clone();
    let budget = cfg.max_evals;
    let gf = g.clone();
    let two = T::cst(2.0);

    let outer = integrate_gaussian_decay(
        move |u: T| -> Result<T> {
            if u == T::zero() {
                return Ok(T::zero());
            }
            let key = u.to_f64().to_bits();
            let mut map = memo.lock().expect("memo lock");
            let (inner_value, _) = match map.get(&key) {
                Some(&hit) => hit,
                None => {
                    let r = l2_transform(&gf, u, &inner_cfg)?;
                    if !r.converged {
                        return Err(Error::NonConvergence(format!(
                            "inner transform did not converge at u = {u}"
                        )));
                    }
                    let used = spent_in.fetch_add(r.evals, std::sync::atomic::Ordering::Relaxed)
                        + r.evals;
                    if used > budget {
                        return Err(Error::NonConvergence(
                            "iterated transform exhausted the shared evaluation budget".into(),
                        ));
                    }
                    map.insert(key, (r.value, r.evals));
                    (r.value, r.evals)
                }
            };
            Ok(u.powf(two * nu - T::one()) * inner_value * (-u * u * y * y).exp())
        },
        y * y,
        cfg,
    )?;

    Ok(QuadResult {
        evals: outer.evals + spent.load(std::sync::atomic::Ordering::Relaxed),
        ..outer
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadConfig<f64> {
        QuadConfig::default()
    }

    fn gauss() -> RealFunction<f64> {
        RealFunction::new("exp(-x^2)", GrowthClass::GaussianDecay { rate: 1.0 }, |x| {
            (-x * x).exp()
        })
    }

    fn one() -> RealFunction<f64> {
        RealFunction::new("1", GrowthClass::Bounded, |_| 1.0)
    }

    #[test]
    fn l2_of_one() {
        // L2{1; y} = 1/(2 y^2)
        for &y in &[0.5f64, 1.0, 2.0] {
            let r = l2_transform(&one(), y, &cfg()).unwrap();
            assert!(r.converged);
            assert!(((r.value - 0.5 / (y * y)) * 2.0 * y * y).abs() < 1e-10, "y={y}");
        }
    }

    #[test]
    fn l2_of_gaussian() {
        // L2{e^{-x^2}; y} = 1/(2(1+y^2))
        let r = l2_transform(&gauss(), 1.5, &cfg()).unwrap();
        let exact = 0.5 / (1.0 + 2.25);
        assert!(((r.value - exact) / exact).abs() < 1e-10);
    }

    #[test]
    fn laplace_of_power() {
        // int_0^inf x e^{-2x} dx = 1/4
        let f = RealFunction::new("x", GrowthClass::Bounded, |x| x);
        // bounded growth is fine for laplace: the weight itself decays
        let r = laplace_transform(&f, 2.0, &cfg()).unwrap();
        assert!((r.value - 0.25).abs() < 1e-11);
    }

    #[test]
    fn widder_of_gaussian_matches_closed_form() {
        // P{e^{-x^2}; y} = -e^{y^2} Ei(-y^2)/2 = e^{y^2} E1(y^2)/2
        let y = 1.0f64;
        let r = widder_transform(&gauss(), y, &cfg()).unwrap();
        let exact = 0.5
            * (y * y).exp()
            * crate::specfun::exp_integral_e1(y * y).unwrap();
        assert!(((r.value - exact) / exact).abs() < 1e-9, "got {}", r.value);
    }

    #[test]
    fn p_nu2_strip_violations_error() {
        // bounded input needs nu > 1
        assert!(matches!(
            p_nu2_transform(&one(), 1.0, 1.0, &cfg()),
            Err(Error::Tail(_))
        ));
        // algebraic decay x^{-1} with nu = 0.5: 1 + 2*0.5 = 2, marginal
        let slow = RealFunction::new(
            "1/(1+x)",
            GrowthClass::AlgebraicDecay { exponent: 1.0 },
            |x| 1.0 / (1.0 + x),
        );
        assert!(matches!(
            p_nu2_transform(&slow, 0.5, 1.0, &cfg()),
            Err(Error::Tail(_))
        ));
    }

    #[test]
    fn p_nu2_of_bounded_large_nu() {
        // P_{nu,2}{1; y} = y^{2-2nu} / (2(nu-1))
        let r = p_nu2_transform(&one(), 2.0, 2.0, &cfg()).unwrap();
        let exact = 2.0f64.powf(-2.0) / 2.0;
        assert!(((r.value - exact) / exact).abs() < 1e-9);
    }

    #[test]
    fn glasser_of_gaussian() {
        // G{e^{-x^2}; y} = (1/2) e^{y^2/2} K_0(y^2/2)
        let y = 1.0f64;
        let r = glasser_transform(&gauss(), y, &cfg()).unwrap();
        let exact = 0.5 * (0.5f64).exp() * crate::specfun::bessel_k(0.0, 0.5).unwrap();
        assert!(((r.value - exact) / exact).abs() < 1e-10, "got {}", r.value);
    }

    #[test]
    fn hankel_self_reciprocal_gaussian() {
        // x^{nu+1/2} e^{-x^2/2} is its own transform; nu = 0:
        // int sqrt(xy) J_0(xy) * sqrt(x) e^{-x^2/2} dx = sqrt(y) e^{-y^2/2}
        let f = RealFunction::new(
            "sqrt(x) exp(-x^2/2)",
            GrowthClass::GaussianDecay { rate: 0.5 },
            |x: f64| x.sqrt() * (-x * x / 2.0).exp(),
        );
        let y = 1.3f64;
        let r = hankel_transform(&f, 0.0, y, &cfg()).unwrap();
        let exact = y.sqrt() * (-y * y / 2.0).exp();
        assert!(
            ((r.value - exact) / exact).abs() < 1e-8,
            "got {}, want {exact}",
            r.value
        );
    }

    #[test]
    fn k_transform_spot() {
        // int_0^inf sqrt(xy) K_0(xy) dx = (pi/2) sqrt(y)/y ... check against
        // int_0^inf K_0(u) du = pi/2 after substitution, with f = 1/sqrt(x):
        // int sqrt(xy) K_0(xy) x^{-1/2} dx = y^{-1/2} int K_0(u) du = (pi/2)/sqrt(y)
        let f = RealFunction::new(
            "x^{-1/2}",
            GrowthClass::AlgebraicDecay { exponent: 0.5 },
            |x: f64| 1.0 / x.sqrt(),
        );
        let y = 2.0f64;
        let r = k_transform(&f, 0.0, y, &cfg()).unwrap();
        let exact = std::f64::consts::FRAC_PI_2 / y.sqrt();
        assert!(
            ((r.value - exact) / exact).abs() < 1e-9,
            "got {}, want {exact}",
            r.value
        );
    }

    #[test]
    fn iterated_l2_is_widder_at_nu_one() {
        // L2{u L2{g; u}; y} = (1/2) P{g; y} for g = e^{-x^2}
        let y = 1.0f64;
        let nested = iterated_l2(&gauss(), 1.0, y, &cfg()).unwrap();
        let direct = widder_transform(&gauss(), y, &cfg()).unwrap();
        assert!(
            ((2.0 * nested.value - direct.value) / direct.value).abs() < 1e-7,
            "nested {} vs direct {}",
            nested.value,
            direct.value
        );
        // evals must account for the inner g calls
        assert!(nested.evals > direct.evals);
    }

    #[test]
    fn domain_checks() {
        assert!(l2_transform(&gauss(), 0.0, &cfg()).is_err());
        assert!(l2_transform(&gauss(), -1.0, &cfg()).is_err());
        assert!(hankel_transform(&gauss(), -1.5, 1.0, &cfg()).is_err());
        let osc = RealFunction::oscillatory("J_0", 0.0, 1.0, |_| 1.0);
        assert!(hankel_transform(&osc, 0.0, 1.0, &cfg()).is_err());
    }
}
