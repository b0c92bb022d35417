//! The built-in input-function catalog the exchange-relation harness and
//! the CLI draw from.
//!
//! Each entry couples a concrete function on (0, inf) with the decay
//! metadata the hypothesis checks need and, where a closed form is known,
//! with independently testable closed expressions for its L2- and
//! P_(nu,2)-transforms. The closed forms are the harness's oracles: every
//! one of them is probe-tested against raw quadrature (see the tests at the
//! bottom), so using them on one side of a relation while the other side
//! runs a live pipeline keeps the comparison meaningful.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::{
    bessel_k, beta, exp_integral_e1, exp_integral_e1_scaled, gamma, rgamma, tricomi_psi,
    whittaker_w,
};
use crate::transforms::{GrowthClass, RealFunction};

type Closed1 = Box<dyn Fn(f64) -> Result<f64> + Send + Sync>;
type Closed2 = Box<dyn Fn(f64, f64) -> Result<f64> + Send + Sync>;

struct ClosedPnu2 {
    /// Returns the reason the closed form is unusable at this nu, if any.
    domain: Box<dyn Fn(f64) -> Option<String> + Send + Sync>,
    eval: Closed2,
}

/// A catalog input function: realization plus transform metadata.
pub struct CatalogFunction {
    /// Instance name including parameter values, e.g. `besselj(mu=0,z=1)`.
    /// Equal names mean identical functions (used for the f = g shortcut).
    pub name: String,
    /// Registry key this instance was built from.
    pub base: &'static str,
    pub params: BTreeMap<String, f64>,
    pub realization: RealFunction<f64>,
    /// L2{f;y} ~ y^(-l2_decay) as y -> inf; equals (power of f at 0) + 2.
    /// Infinite when the L2-transform decays faster than any power.
    pub l2_decay: f64,
    pub oscillatory: bool,
    pub description: &'static str,
    closed_l2: Option<Closed1>,
    closed_pnu2: Option<ClosedPnu2>,
}

impl std::fmt::Debug for CatalogFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CatalogFunction")
            .field("name", &self.name)
            .field("l2_decay", &self.l2_decay)
            .field("oscillatory", &self.oscillatory)
            .finish()
    }
}

impl CatalogFunction {
    /// Closed form of L2{f; y}, when the catalog records one.
    pub fn closed_l2(&self, y: f64) -> Option<Result<f64>> {
        self.closed_l2.as_ref().map(|c| c(y))
    }

    pub fn has_closed_l2(&self) -> bool {
        self.closed_l2.is_some()
    }

    /// Closed form of P_(nu,2){f; y}, when recorded and valid at this nu.
    pub fn closed_pnu2(&self, nu: f64, y: f64) -> Option<Result<f64>> {
        let c = self.closed_pnu2.as_ref()?;
        if (c.domain)(nu).is_some() {
            return None;
        }
        Some((c.eval)(nu, y))
    }

    /// Whether `closed_pnu2` would produce a value at this nu.
    pub fn closed_pnu2_valid(&self, nu: f64) -> bool {
        self.closed_pnu2.as_ref().is_some_and(|c| (c.domain)(nu).is_none())
    }
}

/// Render a parameter value the way the instance names embed it.
fn fmt_param(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e6 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

fn instance_name(base: &str, params: &[(&str, f64)]) -> String {
    if params.is_empty() {
        base.to_string()
    } else {
        let inner: Vec<String> =
            params.iter().map(|(k, v)| format!("{k}={}", fmt_param(*v))).collect();
        format!("{base}({})", inner.join(","))
    }
}

fn params_map(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// The constant function 1.
pub fn one() -> CatalogFunction {
    CatalogFunction {
        name: "one".into(),
        base: "one",
        params: BTreeMap::new(),
        realization: RealFunction::new("1", GrowthClass::Bounded, |_x: f64| 1.0),
        l2_decay: 2.0,
        oscillatory: false,
        description: "constant 1; L2 = 1/(2y^2), P_(nu,2) needs nu > 1",
        closed_l2: Some(Box::new(|y| Ok(1.0 / (2.0 * y * y)))),
        closed_pnu2: Some(ClosedPnu2 {
            domain: Box::new(|nu| {
                (nu <= 1.0).then(|| format!("P_(nu,2){{1}} diverges for nu = {nu} <= 1"))
            }),
            eval: Box::new(|nu, y| Ok(y.powf(2.0 - 2.0 * nu) / (2.0 * (nu - 1.0)))),
        }),
    }
}

/// x^q exp(-a^2 x^2); the workhorse smooth family.
pub fn power_gauss(q: f64, a: f64) -> Result<CatalogFunction> {
    if !(q > -2.0) {
        return Err(Error::Usage(format!(
            "power-gauss: q = {q} must be > -2 for the transforms to exist"
        )));
    }
    if !(a > 0.0) {
        return Err(Error::Usage(format!("power-gauss: a = {a} must be > 0")));
    }
    Ok(CatalogFunction {
        name: instance_name("power-gauss", &[("q", q), ("a", a)]),
        base: "power-gauss",
        params: params_map(&[("q", q), ("a", a)]),
        realization: RealFunction::new(
            format!("x^({q}) exp(-{a}^2 x^2)"),
            GrowthClass::GaussianDecay { rate: a * a },
            move |x: f64| x.powf(q) * (-(a * a) * x * x).exp(),
        ),
        l2_decay: q + 2.0,
        oscillatory: false,
        description: "x^q exp(-a^2 x^2); closed L2 is algebraic, closed P_(nu,2) is a \
                      confluent hypergeometric of the second kind",
        closed_l2: Some(Box::new(move |y| {
            Ok(gamma((q + 2.0) / 2.0)? / (2.0 * (a * a + y * y).powf((q + 2.0) / 2.0)))
        })),
        closed_pnu2: Some(ClosedPnu2 {
            domain: Box::new(|nu| (nu <= 0.0).then(|| format!("needs nu > 0, got {nu}"))),
            eval: Box::new(move |nu, y| {
                let w = a * a * y * y;
                if q == 0.0 && nu == 1.0 {
                    // Psi(1,1,w) = e^w E1(w), evaluated in scaled form.
                    return Ok(0.5 * exp_integral_e1_scaled(w)?);
                }
                if q == 2.0 && nu == 1.0 {
                    // Psi(1,0,w) = 1 - w e^w E1(w). The general routine
                    // evaluates integer second parameters as a limit of two
                    // nearby reflections whose cancellation grows like e^w,
                    // so this case goes through E1 directly.
                    return Ok((1.0 - w * exp_integral_e1_scaled(w)?) / (2.0 * a * a));
                }
                Ok(gamma(q / 2.0 + 1.0)? / 2.0
                    * a.powf(2.0 * nu - q - 2.0)
                    * tricomi_psi(nu, nu - q / 2.0, w)?.value)
            }),
        }),
    })
}

/// exp(-x^2).
pub fn gauss() -> CatalogFunction {
    let mut f = power_gauss(0.0, 1.0).expect("gauss parameters are fixed");
    f.name = "gauss".into();
    f.base = "gauss";
    f.params = BTreeMap::new();
    f.description = "exp(-x^2)";
    f
}

/// sqrt(x) exp(-x^2).
pub fn sqrtx_gauss() -> CatalogFunction {
    let mut f = power_gauss(0.5, 1.0).expect("sqrtx-gauss parameters are fixed");
    f.name = "sqrtx-gauss".into();
    f.base = "sqrtx-gauss";
    f.params = BTreeMap::new();
    f.description = "sqrt(x) exp(-x^2); half-integer smallness power at the origin";
    f
}

/// x^mu J_mu(z x); the oscillatory family with closed K-Bessel transforms.
pub fn besselj(mu: f64, z: f64) -> Result<CatalogFunction> {
    if !(mu > -1.0) {
        return Err(Error::Usage(format!("besselj: mu = {mu} must be > -1")));
    }
    if !(z > 0.0) {
        return Err(Error::Usage(format!("besselj: z = {z} must be > 0")));
    }
    Ok(CatalogFunction {
        name: instance_name("besselj", &[("mu", mu), ("z", z)]),
        base: "besselj",
        params: params_map(&[("mu", mu), ("z", z)]),
        realization: RealFunction::oscillatory(
            format!("x^({mu}) J_({mu})({z} x)"),
            mu,
            z,
            move |x: f64| x.powf(mu),
        ),
        l2_decay: 2.0 * mu + 2.0,
        oscillatory: true,
        description: "x^mu J_mu(z x); L2 is a Gaussian in 1/y, P_(nu,2) is a K-Bessel",
        closed_l2: Some(Box::new(move |y| {
            let y2 = y * y;
            Ok(z.powf(mu) / (2.0 * y2).powf(mu + 1.0) * (-z * z / (4.0 * y2)).exp())
        })),
        closed_pnu2: Some(ClosedPnu2 {
            domain: Box::new(move |nu| {
                (mu >= 2.0 * nu - 0.5).then(|| {
                    format!("needs mu < 2 nu - 1/2; mu = {mu}, nu = {nu}")
                })
            }),
            eval: Box::new(move |nu, y| {
                Ok(rgamma(nu)
                    * (z / 2.0).powf(nu - 1.0)
                    * y.powf(mu - nu + 1.0)
                    * bessel_k(nu - mu - 1.0, z * y)?)
            }),
        }),
    })
}

/// cos(a x)/x on the half-order Bessel lattice.
pub fn cos_over_x(a: f64) -> Result<CatalogFunction> {
    if !(a > 0.0) {
        return Err(Error::Usage(format!("cos-over-x: a = {a} must be > 0")));
    }
    Ok(CatalogFunction {
        name: instance_name("cos-over-x", &[("a", a)]),
        base: "cos-over-x",
        params: params_map(&[("a", a)]),
        realization: RealFunction::oscillatory(
            format!("cos({a} x)/x"),
            -0.5,
            a,
            move |x: f64| (PI * a / 2.0).sqrt() * x.powf(-0.5),
        ),
        l2_decay: 1.0,
        oscillatory: true,
        description: "cos(a x)/x; the slowest-decaying catalog member (L2 ~ 1/y)",
        closed_l2: Some(Box::new(move |y| {
            Ok(PI.sqrt() / (2.0 * y) * (-a * a / (4.0 * y * y)).exp())
        })),
        closed_pnu2: Some(ClosedPnu2 {
            domain: Box::new(|nu| (nu <= 0.0).then(|| format!("needs nu > 0, got {nu}"))),
            eval: Box::new(move |nu, y| {
                Ok(PI.sqrt()
                    * rgamma(nu)
                    * (a / (2.0 * y)).powf(nu - 0.5)
                    * bessel_k(nu - 0.5, a * y)?)
            }),
        }),
    })
}

/// x^(2 mu - 2); the moment-corollary kernel.
pub fn powerlaw(mu: f64) -> Result<CatalogFunction> {
    if !(mu > 0.0) {
        return Err(Error::Usage(format!(
            "powerlaw: mu = {mu} must be > 0 for the L2-transform to exist"
        )));
    }
    Ok(CatalogFunction {
        name: instance_name("powerlaw", &[("mu", mu)]),
        base: "powerlaw",
        params: params_map(&[("mu", mu)]),
        realization: RealFunction::new(
            format!("x^(2*{mu} - 2)"),
            GrowthClass::AlgebraicDecay { exponent: 2.0 - 2.0 * mu },
            move |x: f64| x.powf(2.0 * mu - 2.0),
        ),
        l2_decay: 2.0 * mu,
        oscillatory: false,
        description: "x^(2 mu - 2); both transforms are pure power laws",
        closed_l2: Some(Box::new(move |y| Ok(gamma(mu)? / 2.0 * y.powf(-2.0 * mu)))),
        closed_pnu2: Some(ClosedPnu2 {
            domain: Box::new(move |nu| {
                (nu <= mu).then(|| format!("needs nu > mu; mu = {mu}, nu = {nu}"))
            }),
            eval: Box::new(move |nu, y| {
                Ok(0.5 * beta(mu, nu - mu)? * y.powf(2.0 * (mu - nu)))
            }),
        }),
    })
}

/// E1(a^2/x^2): flat to all orders at 0, grows like 2 ln x at infinity.
pub fn e1_inv_sq(a: f64) -> Result<CatalogFunction> {
    if !(a > 0.0) {
        return Err(Error::Usage(format!("e1-inv-sq: a = {a} must be > 0")));
    }
    Ok(CatalogFunction {
        name: instance_name("e1-inv-sq", &[("a", a)]),
        base: "e1-inv-sq",
        params: params_map(&[("a", a)]),
        realization: RealFunction::new_fallible(
            format!("E1({a}^2/x^2)"),
            // slower-than-any-power growth; see the identities catalog note
            GrowthClass::AlgebraicDecay { exponent: -0.02 },
            move |x: f64| {
                if x == 0.0 {
                    return Ok(0.0);
                }
                exp_integral_e1(a * a / (x * x))
            },
        ),
        l2_decay: f64::INFINITY,
        oscillatory: false,
        description: "E1(a^2/x^2); L2 is a K-Bessel, P_(nu,2) a Whittaker function",
        closed_l2: Some(Box::new(move |y| Ok(bessel_k(0.0, 2.0 * a * y)? / (y * y)))),
        closed_pnu2: Some(ClosedPnu2 {
            domain: Box::new(|nu| {
                (nu <= 1.0).then(|| format!("needs nu > 1 (input grows like 2 ln x), got {nu}"))
            }),
            eval: Box::new(move |nu, y| {
                let w = a * a / (y * y);
                Ok(gamma(nu - 1.0)? / (2.0 * a * (nu - 1.0))
                    * y.powf(3.0 - 2.0 * nu)
                    * (w / 2.0).exp()
                    * whittaker_w(1.5 - nu, 0.0, w)?.value)
            }),
        }),
    })
}

/// One registry row for listings: base name, parameters with defaults.
pub struct FunctionSpec {
    pub name: &'static str,
    pub params: &'static [(&'static str, f64)],
    pub description: &'static str,
}

/// Registry listing in stable order.
pub fn listing() -> Vec<FunctionSpec> {
    vec![
        FunctionSpec { name: "one", params: &[], description: "constant 1" },
        FunctionSpec { name: "gauss", params: &[], description: "exp(-x^2)" },
        FunctionSpec {
            name: "power-gauss",
            params: &[("q", 2.0), ("a", 2.0)],
            description: "x^q exp(-a^2 x^2)",
        },
        FunctionSpec {
            name: "sqrtx-gauss",
            params: &[],
            description: "sqrt(x) exp(-x^2)",
        },
        FunctionSpec {
            name: "besselj",
            params: &[("mu", 0.0), ("z", 1.0)],
            description: "x^mu J_mu(z x), oscillatory",
        },
        FunctionSpec {
            name: "cos-over-x",
            params: &[("a", 1.0)],
            description: "cos(a x)/x, oscillatory",
        },
        FunctionSpec {
            name: "powerlaw",
            params: &[("mu", 0.5)],
            description: "x^(2 mu - 2)",
        },
        FunctionSpec {
            name: "e1-inv-sq",
            params: &[("a", 1.0)],
            description: "E1(a^2/x^2)",
        },
    ]
}

/// Build a catalog instance by registry name, applying defaults for
/// parameters not supplied. Unknown names and unknown parameter keys are
/// usage errors (same strictness as the config file).
pub fn build(name: &str, params: &BTreeMap<String, f64>) -> Result<CatalogFunction> {
    let spec = listing()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| {
            let known: Vec<&str> = listing().iter().map(|s| s.name).collect();
            Error::Usage(format!(
                "unknown catalog function '{name}'; known functions: {}",
                known.join(", ")
            ))
        })?;
    for key in params.keys() {
        if !spec.params.iter().any(|(k, _)| k == key) {
            let expected: Vec<&str> = spec.params.iter().map(|(k, _)| *k).collect();
            return Err(Error::Usage(format!(
                "function '{name}' takes no parameter '{key}' (expects: {})",
                if expected.is_empty() { "none".into() } else { expected.join(", ") }
            )));
        }
    }
    let get = |key: &str, default: f64| params.get(key).copied().unwrap_or(default);
    match name {
        "one" => Ok(one()),
        "gauss" => Ok(gauss()),
        "power-gauss" => power_gauss(get("q", 2.0), get("a", 2.0)),
        "sqrtx-gauss" => Ok(sqrtx_gauss()),
        "besselj" => besselj(get("mu", 0.0), get("z", 1.0)),
        "cos-over-x" => cos_over_x(get("a", 1.0)),
        "powerlaw" => powerlaw(get("mu", 0.5)),
        "e1-inv-sq" => e1_inv_sq(get("a", 1.0)),
        _ => unreachable!("listing() and build() cover the same names"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::QuadConfig;
    use crate::transforms::{l2_transform, p_nu2_transform};

    fn probes() -> Vec<CatalogFunction> {
        vec![
            one(),
            gauss(),
            power_gauss(2.0, 2.0).unwrap(),
            sqrtx_gauss(),
            besselj(0.0, 1.0).unwrap(),
            besselj(1.0, 1.0).unwrap(),
            cos_over_x(1.0).unwrap(),
            powerlaw(0.75).unwrap(),
            e1_inv_sq(1.0).unwrap(),
        ]
    }

    #[test]
    fn closed_l2_matches_quadrature_on_probe_points() {
        let cfg = QuadConfig::default();
        for f in probes() {
            for &y in &[0.6, 1.0, 1.7] {
                let closed = f.closed_l2(y).expect("all catalog entries record L2")
                    .unwrap_or_else(|e| panic!("{} closed L2 at {y}: {e}", f.name));
                let quad = l2_transform(&f.realization, y, &cfg)
                    .unwrap_or_else(|e| panic!("{} quadrature L2 at {y}: {e}", f.name));
                let rel = ((closed - quad.value) / closed).abs();
                assert!(rel <= 1e-7, "{} at y={y}: closed {closed} quad {} rel {rel}",
                    f.name, quad.value);
            }
        }
    }

    #[test]
    fn closed_pnu2_matches_quadrature_on_probe_points() {
        let cfg = QuadConfig::default();
        for f in probes() {
            for &(nu, y) in &[(1.0, 1.0), (1.25, 0.8), (1.5, 1.0), (2.5, 1.3)] {
                let Some(closed) = f.closed_pnu2(nu, y) else { continue };
                let closed = closed
                    .unwrap_or_else(|e| panic!("{} closed P at ({nu},{y}): {e}", f.name));
                let quad = p_nu2_transform(&f.realization, nu, y, &cfg)
                    .unwrap_or_else(|e| panic!("{} quadrature P at ({nu},{y}): {e}", f.name));
                let rel = ((closed - quad.value) / closed).abs();
                assert!(rel <= 1e-7, "{} at (nu={nu}, y={y}): closed {closed} quad {} rel {rel}",
                    f.name, quad.value);
            }
        }
    }

    #[test]
    fn out_of_validity_closed_forms_step_aside() {
        assert!(one().closed_pnu2(1.0, 1.0).is_none());
        assert!(one().closed_pnu2(1.5, 1.0).is_some());
        assert!(besselj(1.0, 1.0).unwrap().closed_pnu2(0.75, 1.0).is_none());
        assert!(powerlaw(0.75).unwrap().closed_pnu2(0.6, 1.0).is_none());
        assert!(e1_inv_sq(1.0).unwrap().closed_pnu2(1.0, 1.0).is_none());
    }

    #[test]
    fn registry_builds_by_name_with_defaults_and_strict_keys() {
        let f = build("besselj", &BTreeMap::new()).unwrap();
        assert_eq!(f.name, "besselj(mu=0,z=1)");

        let mut p = BTreeMap::new();
        p.insert("z".to_string(), 2.0);
        let f = build("besselj", &p).unwrap();
        assert_eq!(f.name, "besselj(mu=0,z=2)");

        let err = build("gaussian", &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, Error::Usage(m) if m.contains("cos-over-x")));

        let mut p = BTreeMap::new();
        p.insert("nu".to_string(), 1.0);
        let err = build("gauss", &p).unwrap_err();
        assert!(matches!(err, Error::Usage(m) if m.contains("no parameter 'nu'")));
    }

    #[test]
    fn instance_names_are_deterministic_equality_keys() {
        assert_eq!(gauss().name, gauss().name);
        assert_eq!(
            power_gauss(2.0, 2.0).unwrap().name,
            power_gauss(2.0, 2.0).unwrap().name
        );
        assert_ne!(power_gauss(2.0, 2.0).unwrap().name, power_gauss(2.0, 1.0).unwrap().name);
        assert_eq!(power_gauss(2.0, 2.0).unwrap().name, "power-gauss(q=2,a=2)");
    }
}
