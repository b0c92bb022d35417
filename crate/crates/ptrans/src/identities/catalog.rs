//! The catalog entries themselves: left-hand pipelines, right-hand forms,
//! strips, grids and recorded verdicts on printed variants.
//!
//! Where an entry nests transforms, the inner one runs under the 10x
//! tighter config from `QuadConfig::inner` and its values are memoized per
//! outer abscissa, same discipline as `iterated_l2`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::quad::{integrate_gaussian_decay, integrate_semi_infinite, QuadConfig, QuadResult};
use crate::specfun::{
    bessel_k, beta, exp_integral_e1, gamma, rgamma, tricomi_psi, upper_gamma_scaled, whittaker_w,
};
use crate::transforms::{
    glasser_transform, hankel_transform, iterated_l2, k_transform, l2_transform, p_nu2_transform,
    widder_transform, GrowthClass, RealFunction,
};

use super::{param, Alternate, AlternateEval, IdentityCase, Params, Rhs, TolClass};

pub(super) fn build() -> Vec<IdentityCase> {
    vec![
        l2_kernel(),
        iter_l2_pnu2(),
        iter_l2_widder(),
        pnu2_besselj(),
        besselj_mu32(),
        besselj_mu12(),
        glasser_besselj(),
        widder_besselj(),
        ck_1(),
        ck_2(),
        ck_3(),
        rck_1(),
        rck_2(),
        rck_3(),
        cali_1(),
        cali_2(),
        cali_3(),
        pnu2_power(),
        ci_1(),
        ci_2(),
        ex_e1_whittaker(),
        ex_gauss_tricomi(),
        ex_k_cos(),
        ex_h_kbessel(),
        pnu2_cos(),
    ]
}

// ---------------------------------------------------------------- inputs

fn gauss() -> RealFunction<f64> {
    RealFunction::new("exp(-x^2)", GrowthClass::GaussianDecay { rate: 1.0 }, |x| {
        (-x * x).exp()
    })
}

/// x^q exp(-a^2 x^2).
fn power_gauss(q: f64, a: f64) -> RealFunction<f64> {
    RealFunction::new(
        format!("x^({q}) exp(-{}^2 x^2)", a),
        GrowthClass::GaussianDecay { rate: a * a },
        move |x: f64| x.powf(q) * (-(a * a) * x * x).exp(),
    )
}

/// x^mu J_mu(z x).
fn besselj_input(mu: f64, z: f64) -> RealFunction<f64> {
    RealFunction::oscillatory(
        format!("x^({mu}) J_({mu})({z} x)"),
        mu,
        z,
        move |x: f64| x.powf(mu),
    )
}

/// cos(a x)/x, written on the half-order Bessel lattice so the oscillatory
/// integrator can panel on the cosine zeros.
fn cos_over_x(a: f64) -> RealFunction<f64> {
    RealFunction::oscillatory(
        format!("cos({a} x)/x"),
        -0.5,
        a,
        move |x: f64| (PI * a / 2.0).sqrt() * x.powf(-0.5),
    )
}

/// x^(2 mu - 2).
fn powerlaw(mu: f64) -> RealFunction<f64> {
    RealFunction::new(
        format!("x^(2*{mu} - 2)"),
        GrowthClass::AlgebraicDecay { exponent: 2.0 - 2.0 * mu },
        move |x: f64| x.powf(2.0 * mu - 2.0),
    )
}

/// E1(a^2/x^2): vanishes to all orders at 0, grows like 2 ln x at infinity.
/// The tiny negative decay exponent encodes "slower than any power" for the
/// tail router without lying about integrability (callers all divide by at
/// least x^2).
fn e1_inv_sq(a: f64) -> RealFunction<f64> {
    RealFunction::new_fallible(
        format!("E1({a}^2/x^2)"),
        GrowthClass::AlgebraicDecay { exponent: -0.02 },
        move |x: f64| {
            if x == 0.0 {
                return Ok(0.0);
            }
            exp_integral_e1(a * a / (x * x))
        },
    )
}

// ---------------------------------------------------------------- helpers

/// Cache a fallible real map by argument bit pattern; outer quadratures
/// re-query the same abscissae when panels are re-split.
pub(super) fn memoize<F>(f: F) -> impl Fn(f64) -> Result<f64> + Send + Sync
where
    F: Fn(f64) -> Result<f64> + Send + Sync,
{
    let cache: Mutex<HashMap<u64, Result<f64>>> = Mutex::new(HashMap::new());
    move |x: f64| {
        let key = x.to_bits();
        if let Some(hit) = cache.lock().expect("memo lock").get(&key) {
            return hit.clone();
        }
        let v = f(x);
        cache.lock().expect("memo lock").insert(key, v.clone());
        v
    }
}

pub(super) fn scaled(r: QuadResult<f64>, c: f64) -> QuadResult<f64> {
    QuadResult {
        value: c * r.value,
        error_estimate: c.abs() * r.error_estimate,
        ..r
    }
}

fn grid(names: &'static [&'static str], rows: &[&[f64]]) -> Vec<Params> {
    rows.iter()
        .map(|row| {
            assert_eq!(row.len(), names.len(), "grid row arity");
            names
                .iter()
                .zip(row.iter())
                .map(|(&n, &v)| (n.to_string(), v))
                .collect()
        })
        .collect()
}

/// Gaussian moment int_0^inf u^(s-1) exp(-a^2 u^2) du = Gamma(s/2)/(2 a^s).
fn gauss_moment(s: f64, a: f64) -> Result<f64> {
    if s <= 0.0 {
        return Err(Error::Domain(format!(
            "moment integral int u^(s-1) exp(-a^2 u^2) du diverges at the origin (s = {s})"
        )));
    }
    Ok(gamma(s / 2.0)? / (2.0 * a.powf(s)))
}

/// Shared left side of the CK family:
/// L2{y^(2 mu - 2 nu) L2{exp(-x^2); 1/(2y)}; z}, written out as the single
/// y-integral with weight y^(2 mu - 2 nu + 1) and kernel exp(-y^2 z^2).
fn ck_lhs(mu: f64, nu: f64, z: f64, cfg: &QuadConfig<f64>) -> Result<QuadResult<f64>> {
    let f = gauss();
    let icfg = cfg.inner();
    let inner = memoize(move |y: f64| Ok(l2_transform(&f, 1.0 / (2.0 * y), &icfg)?.value));
    let w = 2.0 * (mu - nu) + 1.0;
    integrate_gaussian_decay(
        move |y: f64| {
            if y == 0.0 {
                return Ok(0.0);
            }
            Ok(y.powf(w) * inner(y)? * (-(z * z) * y * y).exp())
        },
        z * z,
        cfg,
    )
}

/// K_(nu-mu-1){x^(mu - nu + 3/2) exp(-x^2); z}.
fn ck_k_side(mu: f64, nu: f64, z: f64, cfg: &QuadConfig<f64>) -> Result<QuadResult<f64>> {
    k_transform(&power_gauss(mu - nu + 1.5, 1.0), nu - mu - 1.0, z, cfg)
}

/// H_mu{u^(mu + 1/2) P_(nu,2){exp(-x^2); u}; z}.
fn ck_hankel_side(mu: f64, nu: f64, z: f64, cfg: &QuadConfig<f64>) -> Result<QuadResult<f64>> {
    let f = gauss();
    let icfg = cfg.inner();
    let pm = memoize(move |u: f64| Ok(p_nu2_transform(&f, nu, u, &icfg)?.value));
    let env = RealFunction::new_fallible(
        format!("u^({mu} + 1/2) P_({nu},2){{exp(-x^2); u}}"),
        GrowthClass::AlgebraicDecay {
            exponent: 2.0 * nu - mu - 0.5,
        },
        move |u: f64| Ok(u.powf(mu + 0.5) * pm(u)?),
    );
    hankel_transform(&env, mu, z, cfg)
}

/// int_0^inf y^(2 nu - 2 mu - 1) L2{u^2 exp(-u^2); y} dy.
fn cali_y_side(mu: f64, nu: f64, cfg: &QuadConfig<f64>) -> Result<QuadResult<f64>> {
    let g = power_gauss(2.0, 1.0);
    let icfg = cfg.inner();
    let l2m = memoize(move |y: f64| Ok(l2_transform(&g, y, &icfg)?.value));
    let w = 2.0 * (nu - mu) - 1.0;
    integrate_semi_infinite(
        move |y: f64| {
            if y == 0.0 {
                return Ok(0.0);
            }
            Ok(y.powf(w) * l2m(y)?)
        },
        0.0,
        cfg,
    )
}

/// int_0^inf x^(2 mu - 1) P_(nu,2){u^2 exp(-u^2); x} dx.
fn cali_x_side(mu: f64, nu: f64, cfg: &QuadConfig<f64>) -> Result<QuadResult<f64>> {
    let g = power_gauss(2.0, 1.0);
    let icfg = cfg.inner();
    let pm = memoize(move |x: f64| Ok(p_nu2_transform(&g, nu, x, &icfg)?.value));
    integrate_semi_infinite(
        move |x: f64| {
            if x == 0.0 {
                return Ok(0.0);
            }
            Ok(x.powf(2.0 * mu - 1.0) * pm(x)?)
        },
        0.0,
        cfg,
    )
}

/// P_(mu,2){P_(nu,2){exp(-x^2); x}; t}, the brute-force composition.
fn ci_lhs(mu: f64, nu: f64, t: f64, cfg: &QuadConfig<f64>) -> Result<QuadResult<f64>> {
    let g = gauss();
    let icfg = cfg.inner();
    let pm = memoize(move |x: f64| Ok(p_nu2_transform(&g, nu, x, &icfg)?.value));
    let t2 = t * t;
    integrate_semi_infinite(
        move |x: f64| {
            if x == 0.0 {
                return Ok(0.0);
            }
            Ok(x * pm(x)? / (x * x + t2).powf(mu))
        },
        0.0,
        cfg,
    )
}

/// (1/Gamma(nu)) int_0^inf y^w_exp exp(t^2 y^2) Gamma(1 - mu, t^2 y^2)
/// L2{exp(-x^2); y} dy, with the incomplete-gamma kernel evaluated in its
/// scaled form so the exp factors never meet in the open.
fn ci_rhs(mu: f64, nu: f64, t: f64, w_exp: f64, cfg: &QuadConfig<f64>) -> Result<QuadResult<f64>> {
    let g = gauss();
    let icfg = cfg.inner();
    let l2m = memoize(move |y: f64| Ok(l2_transform(&g, y, &icfg)?.value));
    let t2 = t * t;
    let r = integrate_semi_infinite(
        move |y: f64| {
            if y == 0.0 {
                return Ok(0.0);
            }
            Ok(y.powf(w_exp) * upper_gamma_scaled(1.0 - mu, t2 * y * y)? * l2m(y)?)
        },
        0.0,
        cfg,
    )?;
    Ok(scaled(r, rgamma(nu)))
}

fn positive(p: &Params, name: &str) -> Option<String> {
    if p[name] > 0.0 {
        None
    } else {
        Some(format!("{name} = {} must be > 0", p[name]))
    }
}

// ---------------------------------------------------------------- entries

fn l2_kernel() -> IdentityCase {
    const NAMES: &[&str] = &["nu", "y"];
    IdentityCase {
        id: "L2-KERNEL",
        equation_tag: "2.4",
        statement: "L2{x^(2 nu - 2); y} = Gamma(nu) / (2 y^(2 nu))".into(),
        param_names: NAMES,
        strip: "nu > 0, y > 0",
        strip_check: Box::new(|p| positive(p, "nu").or_else(|| positive(p, "y"))),
        default_grid: grid(
            NAMES,
            &[
                &[0.25, 0.5],
                &[0.25, 1.0],
                &[0.5, 1.0],
                &[1.0, 0.5],
                &[1.0, 1.0],
                &[1.0, 2.0],
                &[1.5, 1.0],
                &[2.5, 0.5],
                &[2.5, 2.0],
            ],
        ),
        tol_class: TolClass::Smooth,
        notes: "The kernel evaluation behind the composition lemma: every iterated-transform \
                entry reduces to it under Fubini. nu < 1 exercises the integrable x^(2nu-1) \
                endpoint singularity.",
        lhs: Box::new(|p, cfg| {
            let nu = param(p, "nu")?;
            l2_transform(&powerlaw(nu), param(p, "y")?, cfg)
        }),
        lhs_formula: "int_0^inf x^(2 nu - 1) exp(-x^2 y^2) dx",
        rhs: Rhs::Closed {
            formula: "Gamma(nu) / (2 y^(2 nu))",
            eval: Box::new(|p| {
                let nu = param(p, "nu")?;
                Ok(gamma(nu)? / (2.0 * param(p, "y")?.powf(2.0 * nu)))
            }),
        },
        alternates: vec![],
    }
}

fn iter_l2_pnu2() -> IdentityCase {
    const NAMES: &[&str] = &["nu", "y"];
    IdentityCase {
        id: "ITER-L2-PNU2",
        equation_tag: "2.1",
        statement: "L2{u^(2 nu - 2) L2{g; u}; y} = (Gamma(nu)/2) P_(nu,2){g; y},  g = exp(-x^2)"
            .into(),
        param_names: NAMES,
        strip: "nu > 0, y > 0",
        strip_check: Box::new(|p| positive(p, "nu").or_else(|| positive(p, "y"))),
        default_grid: grid(
            NAMES,
            &[
                &[0.75, 0.5],
                &[0.75, 1.0],
                &[0.75, 2.0],
                &[1.0, 0.5],
                &[1.0, 1.0],
                &[1.0, 2.0],
                &[1.5, 0.5],
                &[1.5, 1.0],
                &[1.5, 2.0],
                &[2.5, 0.5],
                &[2.5, 1.0],
                &[2.5, 2.0],
            ],
        ),
        tol_class: TolClass::Nested,
        notes: "The composition lemma that the rest of the catalog leans on, checked as a \
                genuinely nested quadrature against the direct transform.",
        lhs: Box::new(|p, cfg| iterated_l2(&gauss(), param(p, "nu")?, param(p, "y")?, cfg)),
        lhs_formula: "int_0^inf u^(2 nu - 1) L2{exp(-x^2); u} exp(-u^2 y^2) du",
        rhs: Rhs::Pipeline {
            formula: "(Gamma(nu)/2) P_(nu,2){exp(-x^2); y}",
            eval: Box::new(|p, cfg| {
                let nu = param(p, "nu")?;
                let r = p_nu2_transform(&gauss(), nu, param(p, "y")?, cfg)?;
                Ok(scaled(r, gamma(nu)? / 2.0))
            }),
        },
        alternates: vec![],
    }
}

fn iter_l2_widder() -> IdentityCase {
    const NAMES: &[&str] = &["y"];
    IdentityCase {
        id: "ITER-L2-WIDDER",
        equation_tag: "2.5",
        statement: "L2{L2{f; u}; y} = (1/2) P{f; y},  f = exp(-x^2)".into(),
        param_names: NAMES,
        strip: "y > 0",
        strip_check: Box::new(|p| positive(p, "y")),
        default_grid: grid(NAMES, &[&[0.5], &[1.0], &[2.0]]),
        tol_class: TolClass::Nested,
        notes: "nu = 1 case of ITER-L2-PNU2. The source text prints the relation without the \
                1/2; the nested quadrature sits at exactly half the Widder transform on every \
                tuple, consistent with the lemma at nu = 1, so the printed form is kept as an \
                alternate with that verdict.",
        lhs: Box::new(|p, cfg| iterated_l2(&gauss(), 1.0, param(p, "y")?, cfg)),
        lhs_formula: "int_0^inf u L2{exp(-x^2); u} exp(-u^2 y^2) du",
        rhs: Rhs::Pipeline {
            formula: "(1/2) P{exp(-x^2); y}",
            eval: Box::new(|p, cfg| {
                let r = widder_transform(&gauss(), param(p, "y")?, cfg)?;
                Ok(scaled(r, 0.5))
            }),
        },
        alternates: vec![Alternate {
            label: "printed-no-half",
            formula: "P{exp(-x^2); y}",
            verdict: "the printed form omits the 1/2: the nested composition lands at half the \
                      Widder transform on every grid point",
            eval: AlternateEval::Pipeline(Box::new(|p, cfg| {
                widder_transform(&gauss(), param(p, "y")?, cfg)
            })),
        }],
    }
}

fn pnu2_besselj() -> IdentityCase {
    const NAMES: &[&str] = &["mu", "nu", "z", "y"];
    IdentityCase {
        id: "PNU2-BESSELJ",
        equation_tag: "2.6/2.10",
        statement: "P_(nu,2){x^mu J_mu(z x); y} = (1/Gamma(nu)) (z/2)^(nu-1) y^(mu-nu+1) \
                    K_(nu-mu-1)(z y)"
            .into(),
        param_names: NAMES,
        strip: "-1 < mu < 2 nu - 1/2, z > 0, y > 0",
        strip_check: Box::new(|p| {
            let (mu, nu) = (p["mu"], p["nu"]);
            if !(mu > -1.0) {
                return Some(format!("mu = {mu} must be > -1"));
            }
            if !(mu < 2.0 * nu - 0.5) {
                return Some(format!("mu = {mu} must be < 2 nu - 1/2 = {}", 2.0 * nu - 0.5));
            }
            positive(p, "z").or_else(|| positive(p, "y"))
        }),
        default_grid: grid(
            NAMES,
            &[
                &[0.0, 1.0, 1.0, 1.0],
                &[0.0, 1.0, 2.0, 0.5],
                &[0.0, 1.5, 0.5, 2.0],
                &[0.5, 1.5, 1.0, 1.0],
                &[0.5, 2.0, 2.0, 0.5],
                &[1.0, 2.0, 1.0, 1.0],
                &[1.0, 2.0, 2.0, 1.0],
                &[1.0, 2.5, 0.5, 2.0],
            ],
        ),
        tol_class: TolClass::Smooth,
        notes: "Workhorse oscillatory entry. Degenerates to BESSELJ-MU32 at nu = mu + 3/2 \
                through the elementary half-order K, and to WIDDER-BESSELJ at nu = 1 through \
                K evenness.",
        lhs: Box::new(|p, cfg| {
            let (mu, z) = (param(p, "mu")?, param(p, "z")?);
            p_nu2_transform(&besselj_input(mu, z), param(p, "nu")?, param(p, "y")?, cfg)
        }),
        lhs_formula: "int_0^inf x^(mu+1) J_mu(z x) / (x^2 + y^2)^nu dx",
        rhs: Rhs::Closed {
            formula: "(1/Gamma(nu)) (z/2)^(nu-1) y^(mu-nu+1) K_(nu-mu-1)(z y)",
            eval: Box::new(|p| {
                let (mu, nu) = (param(p, "mu")?, param(p, "nu")?);
                let (z, y) = (param(p, "z")?, param(p, "y")?);
                Ok(rgamma(nu)
                    * (z / 2.0).powf(nu - 1.0)
                    * y.powf(mu - nu + 1.0)
                    * bessel_k(nu - mu - 1.0, z * y)?)
            }),
        },
        alternates: vec![],
    }
}

fn besselj_mu32() -> IdentityCase {
    const NAMES: &[&str] = &["mu", "z", "y"];
    IdentityCase {
        id: "BESSELJ-MU32",
        equation_tag: "2.12",
        statement: "P_(mu+3/2,2){x^mu J_mu(z x); y} = sqrt(pi) z^mu exp(-z y) / (2^(mu+1) y \
                    Gamma(mu+3/2))"
            .into(),
        param_names: NAMES,
        strip: "mu > -1, z > 0, y > 0",
        strip_check: Box::new(|p| {
            if !(p["mu"] > -1.0) {
                return Some(format!("mu = {} must be > -1", p["mu"]));
            }
            positive(p, "z").or_else(|| positive(p, "y"))
        }),
        default_grid: grid(
            NAMES,
            &[
                &[0.0, 1.0, 1.0],
                &[0.0, 1.0, 2.0],
                &[0.5, 1.0, 1.0],
                &[0.5, 2.0, 1.0],
                &[1.0, 1.0, 2.0],
                &[1.0, 2.0, 0.5],
            ],
        ),
        tol_class: TolClass::Smooth,
        notes: "PNU2-BESSELJ at nu = mu + 3/2, where K_(1/2) collapses to the bare exponential. \
                mu = 0, z = y = 1 gives exactly 1/e.",
        lhs: Box::new(|p, cfg| {
            let (mu, z) = (param(p, "mu")?, param(p, "z")?);
            p_nu2_transform(&besselj_input(mu, z), mu + 1.5, param(p, "y")?, cfg)
        }),
        lhs_formula: "int_0^inf x^(mu+1) J_mu(z x) / (x^2 + y^2)^(mu+3/2) dx",
        rhs: Rhs::Closed {
            formula: "sqrt(pi) z^mu exp(-z y) / (2^(mu+1) y Gamma(mu+3/2))",
            eval: Box::new(|p| {
                let (mu, z, y) = (param(p, "mu")?, param(p, "z")?, param(p, "y")?);
                Ok(PI.sqrt() * z.powf(mu) * (-z * y).exp()
                    / (2f64.powf(mu + 1.0) * y * gamma(mu + 1.5)?))
            }),
        },
        alternates: vec![],
    }
}

fn besselj_mu12() -> IdentityCase {
    const NAMES: &[&str] = &["mu", "z", "y"];
    IdentityCase {
        id: "BESSELJ-MU12",
        equation_tag: "2.13",
        statement: "P_(mu+1/2,2){x^mu J_mu(z x); y} = sqrt(pi) z^(mu-1) exp(-z y) / (2^mu \
                    Gamma(mu+1/2))"
            .into(),
        param_names: NAMES,
        strip: "mu > -1/2, z > 0, y > 0",
        strip_check: Box::new(|p| {
            if !(p["mu"] > -0.5) {
                return Some(format!("mu = {} must be > -1/2", p["mu"]));
            }
            positive(p, "z").or_else(|| positive(p, "y"))
        }),
        default_grid: grid(
            NAMES,
            &[
                &[0.0, 1.0, 1.0],
                &[0.0, 2.0, 1.0],
                &[0.5, 1.0, 1.0],
                &[1.0, 1.0, 1.0],
                &[1.0, 2.0, 2.0],
            ],
        ),
        tol_class: TolClass::Oscillatory,
        notes: "The borderline sibling of BESSELJ-MU32: the integrand decays like x^(-1/2) per \
                oscillation block, so the value rests on sequence acceleration and carries the \
                loose tolerance class.",
        lhs: Box::new(|p, cfg| {
            let (mu, z) = (param(p, "mu")?, param(p, "z")?);
            p_nu2_transform(&besselj_input(mu, z), mu + 0.5, param(p, "y")?, cfg)
        }),
        lhs_formula: "int_0^inf x^(mu+1) J_mu(z x) / (x^2 + y^2)^(mu+1/2) dx",
        rhs: Rhs::Closed {
            formula: "sqrt(pi) z^(mu-1) exp(-z y) / (2^mu Gamma(mu+1/2))",
            eval: Box::new(|p| {
                let (mu, z, y) = (param(p, "mu")?, param(p, "z")?, param(p, "y")?);
                Ok(PI.sqrt() * z.powf(mu - 1.0) * (-z * y).exp()
                    / (2f64.powf(mu) * gamma(mu + 0.5)?))
            }),
        },
        alternates: vec![],
    }
}

fn glasser_besselj() -> IdentityCase {
    const NAMES: &[&str] = &["mu", "z", "y"];
    IdentityCase {
        id: "GLASSER-BESSELJ",
        equation_tag: "2.14",
        statement: "G{x^(mu+1) J_mu(z x); y} = sqrt(2/(pi z)) y^(mu+1/2) K_(mu+1/2)(z y)".into(),
        param_names: NAMES,
        strip: "-1 < mu < 1/2, z > 0, y > 0",
        strip_check: Box::new(|p| {
            let mu = p["mu"];
            if !(mu > -1.0 && mu < 0.5) {
                return Some(format!("mu = {mu} must lie in (-1, 1/2)"));
            }
            positive(p, "z").or_else(|| positive(p, "y"))
        }),
        default_grid: grid(
            NAMES,
            &[
                &[0.0, 1.0, 1.0],
                &[0.0, 1.0, 2.0],
                &[0.25, 1.0, 1.0],
                &[-0.5, 1.0, 1.0],
                &[0.25, 2.0, 1.0],
            ],
        ),
        tol_class: TolClass::Smooth,
        notes: "The source text prints the input power as x^(mu-1); that integral diverges at \
                the origin for mu <= 0 (including the mu = 0 instance whose stated value exp(-y) \
                only the x^(mu+1) reading reproduces), and where it converges it disagrees with \
                the stated right side. Consistent with G being the nu = 1/2 transform of \
                f(x)/x.",
        lhs: Box::new(|p, cfg| {
            let (mu, z) = (param(p, "mu")?, param(p, "z")?);
            let f = RealFunction::oscillatory(
                format!("x^({mu}+1) J_({mu})({z} x)"),
                mu,
                z,
                move |x: f64| x.powf(mu + 1.0),
            );
            glasser_transform(&f, param(p, "y")?, cfg)
        }),
        lhs_formula: "int_0^inf x^(mu+1) J_mu(z x) / sqrt(x^2 + y^2) dx",
        rhs: Rhs::Closed {
            formula: "sqrt(2/(pi z)) y^(mu+1/2) K_(mu+1/2)(z y)",
            eval: Box::new(|p| {
                let (mu, z, y) = (param(p, "mu")?, param(p, "z")?, param(p, "y")?);
                Ok((2.0 / (PI * z)).sqrt() * y.powf(mu + 0.5) * bessel_k(mu + 0.5, z * y)?)
            }),
        },
        alternates: vec![Alternate {
            label: "printed-power",
            formula: "G{x^(mu-1) J_mu(z x); y}",
            verdict: "diverges at the origin for mu <= 0 and mismatches the right side \
                      elsewhere on the strip",
            eval: AlternateEval::Pipeline(Box::new(|p, cfg| {
                let (mu, z) = (param(p, "mu")?, param(p, "z")?);
                let f = RealFunction::oscillatory(
                    format!("x^({mu}-1) J_({mu})({z} x)"),
                    mu,
                    z,
                    move |x: f64| x.powf(mu - 1.0),
                );
                glasser_transform(&f, param(p, "y")?, cfg)
            })),
        }],
    }
}

fn widder_besselj() -> IdentityCase {
    const NAMES: &[&str] = &["mu", "z", "y"];
    IdentityCase {
        id: "WIDDER-BESSELJ",
        equation_tag: "2.15",
        statement: "P{x^mu J_mu(z x); y} = y^mu K_mu(z y)".into(),
        param_names: NAMES,
        strip: "-1 < mu < 3/2, z > 0, y > 0",
        strip_check: Box::new(|p| {
            let mu = p["mu"];
            if !(mu > -1.0 && mu < 1.5) {
                return Some(format!("mu = {mu} must lie in (-1, 3/2)"));
            }
            positive(p, "z").or_else(|| positive(p, "y"))
        }),
        default_grid: grid(
            NAMES,
            &[
                &[0.0, 1.0, 1.0],
                &[0.0, 1.0, 2.0],
                &[0.5, 1.0, 1.0],
                &[0.5, 2.0, 1.0],
                &[1.0, 1.0, 1.0],
                &[1.0, 2.0, 0.5],
            ],
        ),
        tol_class: TolClass::Smooth,
        notes: "PNU2-BESSELJ at nu = 1 via K evenness. mu = 0, z = y = 1 pins the classical \
                value K_0(1).",
        lhs: Box::new(|p, cfg| {
            let (mu, z) = (param(p, "mu")?, param(p, "z")?);
            widder_transform(&besselj_input(mu, z), param(p, "y")?, cfg)
        }),
        lhs_formula: "int_0^inf x^(mu+1) J_mu(z x) / (x^2 + y^2) dx",
        rhs: Rhs::Closed {
            formula: "y^mu K_mu(z y)",
            eval: Box::new(|p| {
                let (mu, z, y) = (param(p, "mu")?, param(p, "z")?, param(p, "y")?);
                Ok(y.powf(mu) * bessel_k(mu, z * y)?)
            }),
        },
        alternates: vec![],
    }
}

fn ck_strip() -> super::StripFn {
    Box::new(|p| {
        let (mu, nu) = (p["mu"], p["nu"]);
        if !(mu > -1.0) {
            return Some(format!("mu = {mu} must be > -1"));
        }
        if !(mu < 2.0 * nu - 0.5) {
            return Some(format!("mu = {mu} must be < 2 nu - 1/2 = {}", 2.0 * nu - 0.5));
        }
        if !(nu < mu + 2.0) {
            return Some(format!(
                "nu = {nu} must be < mu + 2 = {} for the y-integral to converge at 0",
                mu + 2.0
            ));
        }
        positive(p, "z")
    })
}

const CK_GRID: &[&[f64]] = &[
    &[0.5, 1.5, 1.0],
    &[0.0, 1.25, 1.0],
    &[1.0, 2.0, 1.0],
    &[0.25, 1.5, 2.0],
    &[0.5, 1.5, 2.0],
];

fn ck_1() -> IdentityCase {
    const NAMES: &[&str] = &["mu", "nu", "z"];
    IdentityCase {
        id: "CK-1",
        equation_tag: "2.24",
        statement: "L2{y^(2mu-2nu) L2{f; 1/(2y)}; z} = z^(nu-mu-3/2)/2^(mu-nu+1) \
                    K_(nu-mu-1){x^(mu-nu+3/2) f; z},  f = exp(-x^2)"
            .into(),
        param_names: NAMES,
        strip: "-1 < mu < 2 nu - 1/2, nu < mu + 2, z > 0",
        strip_check: ck_strip(),
        default_grid: grid(NAMES, CK_GRID),
        tol_class: TolClass::Nested,
        notes: "Left side is the reciprocal-argument composition written as one y-integral \
                with weight y^(2mu-2nu+1). The nu < mu + 2 bound is what the pinned Gaussian \
                input needs at y = 0; it is not in the stated strip, which assumes more decay.",
        lhs: Box::new(|p, cfg| ck_lhs(param(p, "mu")?, param(p, "nu")?, param(p, "z")?, cfg)),
        lhs_formula: "int_0^inf y^(2mu-2nu+1) L2{exp(-x^2); 1/(2y)} exp(-y^2 z^2) dy",
        rhs: Rhs::Pipeline {
            formula: "z^(nu-mu-3/2)/2^(mu-nu+1) K_(nu-mu-1){x^(mu-nu+3/2) exp(-x^2); z}",
            eval: Box::new(|p, cfg| {
                let (mu, nu, z) = (param(p, "mu")?, param(p, "nu")?, param(p, "z")?);
                let r = ck_k_side(mu, nu, z, cfg)?;
                Ok(scaled(r, z.powf(nu - mu - 1.5) / 2f64.powf(mu - nu + 1.0)))
            }),
        },
        alternates: vec![],
    }
}

fn ck_2() -> IdentityCase {
    const NAMES: &[&str] = &["mu", "nu", "z"];
    IdentityCase {
        id: "CK-2",
        equation_tag: "2.25",
        statement: "L2{y^(2mu-2nu) L2{f; 1/(2y)}; z} = 2^(2nu-mu-2) Gamma(nu) z^(-mu-1/2) \
                    H_mu{u^(mu+1/2) P_(nu,2){f; u}; z},  f = exp(-x^2)"
            .into(),
        param_names: NAMES,
        strip: "-1 < mu < 2 nu - 1/2, nu < mu + 2, z > 0",
        strip_check: ck_strip(),
        default_grid: grid(NAMES, CK_GRID),
        tol_class: TolClass::Nested,
        notes: "Same left side as CK-1 against the Hankel route. A chained equality in the \
                source derivation prints one intermediate y-exponent off by one; the end \
                formula checked here is unaffected.",
        lhs: Box::new(|p, cfg| ck_lhs(param(p, "mu")?, param(p, "nu")?, param(p, "z")?, cfg)),
        lhs_formula: "int_0^inf y^(2mu-2nu+1) L2{exp(-x^2); 1/(2y)} exp(-y^2 z^2) dy",
        rhs: Rhs::Pipeline {
            formula: "2^(2nu-mu-2) Gamma(nu) z^(-mu-1/2) H_mu{u^(mu+1/2) P_(nu,2){exp(-x^2); u}; z}",
            eval: Box::new(|p, cfg| {
                let (mu, nu, z) = (param(p, "mu")?, param(p, "nu")?, param(p, "z")?);
                let r = ck_hankel_side(mu, nu, z, cfg)?;
                Ok(scaled(
                    r,
                    2f64.powf(2.0 * nu - mu - 2.0) * gamma(nu)? / z.powf(mu + 0.5),
                ))
            }),
        },
        alternates: vec![],
    }
}

fn ck_3() -> IdentityCase {
    const NAMES: &[&str] = &["mu", "nu", "z"];
    IdentityCase {
        id: "CK-3",
        equation_tag: "2.26",
        statement: "H_mu{u^(mu+1/2) P_(nu,2){f; u}; z} = (1/Gamma(nu)) (z/2)^(nu-1) \
                    K_(nu-mu-1){x^(mu-nu+3/2) f; z},  f = exp(-x^2)"
            .into(),
        param_names: NAMES,
        strip: "-1 < mu < 2 nu - 1/2, nu < mu + 2, z > 0",
        strip_check: ck_strip(),
        default_grid: grid(NAMES, CK_GRID),
        tol_class: TolClass::Nested,
        notes: "The composition of CK-1 and CK-2 with the shared left side cancelled; its \
                residual is bounded by the other two on any shared grid point.",
        lhs: Box::new(|p, cfg| {
            ck_hankel_side(param(p, "mu")?, param(p, "nu")?, param(p, "z")?, cfg)
        }),
        lhs_formula: "int_0^inf sqrt(u z) J_mu(u z) u^(mu+1/2) P_(nu,2){exp(-x^2); u} du",
        rhs: Rhs::Pipeline {
            formula: "(1/Gamma(nu)) (z/2)^(nu-1) K_(nu-mu-1){x^(mu-nu+3/2) exp(-x^2); z}",
            eval: Box::new(|p, cfg| {
                let (mu, nu, z) = (param(p, "mu")?, param(p, "nu")?, param(p, "z")?);
                let r = ck_k_side(mu, nu, z, cfg)?;
                Ok(scaled(r, rgamma(nu) * (z / 2.0).powf(nu - 1.0)))
            }),
        },
        alternates: vec![],
    }
}

fn rck_strip() -> super::StripFn {
    Box::new(|p| {
        let mu = p["mu"];
        if !(mu > -1.0 && mu < 1.5) {
            return Some(format!("mu = {mu} must lie in (-1, 3/2)"));
        }
        positive(p, "z")
    })
}

const RCK_GRID: &[&[f64]] = &[
    &[0.0, 1.0],
    &[0.5, 1.0],
    &[1.0, 2.0],
    &[-0.5, 1.0],
    &[0.5, 2.0],
];

fn rck_1() -> IdentityCase {
    const NAMES: &[&str] = &["mu", "z"];
    IdentityCase {
        id: "RCK-1",
        equation_tag: "2.32",
        statement: "L2{y^(2mu-2) L2{f; 1/(2y)}; z} = z^(-mu-1/2)/2^mu K_(-mu){x^(mu+1/2) f; z}, \
                    f = exp(-x^2)"
            .into(),
        param_names: NAMES,
        strip: "-1 < mu < 3/2, z > 0",
        strip_check: rck_strip(),
        default_grid: grid(NAMES, RCK_GRID),
        tol_class: TolClass::Nested,
        notes: "CK-1 at nu = 1; the kernel order flips sign but K is even in it.",
        lhs: Box::new(|p, cfg| ck_lhs(param(p, "mu")?, 1.0, param(p, "z")?, cfg)),
        lhs_formula: "int_0^inf y^(2mu-1) L2{exp(-x^2); 1/(2y)} exp(-y^2 z^2) dy",
        rhs: Rhs::Pipeline {
            formula: "z^(-mu-1/2)/2^mu K_(-mu){x^(mu+1/2) exp(-x^2); z}",
            eval: Box::new(|p, cfg| {
                let (mu, z) = (param(p, "mu")?, param(p, "z")?);
                let r = ck_k_side(mu, 1.0, z, cfg)?;
                Ok(scaled(r, z.powf(-mu - 0.5) / 2f64.powf(mu)))
            }),
        },
        alternates: vec![],
    }
}

fn rck_2() -> IdentityCase {
    const NAMES: &[&str] = &["mu", "z"];
    IdentityCase {
        id: "RCK-2",
        equation_tag: "2.33",
        statement: "L2{y^(2mu-2) L2{f; 1/(2y)}; z} = 2^(-mu) z^(-mu-1/2) H_mu{u^(mu+1/2) \
                    P{f; u}; z},  f = exp(-x^2)"
            .into(),
        param_names: NAMES,
        strip: "-1 < mu < 3/2, z > 0",
        strip_check: rck_strip(),
        default_grid: grid(NAMES, RCK_GRID),
        tol_class: TolClass::Nested,
        notes: "CK-2 at nu = 1, with the Widder transform as the inner stage.",
        lhs: Box::new(|p, cfg| ck_lhs(param(p, "mu")?, 1.0, param(p, "z")?, cfg)),
        lhs_formula: "int_0^inf y^(2mu-1) L2{exp(-x^2); 1/(2y)} exp(-y^2 z^2) dy",
        rhs: Rhs::Pipeline {
            formula: "2^(-mu) z^(-mu-1/2) H_mu{u^(mu+1/2) P{exp(-x^2); u}; z}",
            eval: Box::new(|p, cfg| {
                let (mu, z) = (param(p, "mu")?, param(p, "z")?);
                let r = ck_hankel_side(mu, 1.0, z, cfg)?;
                Ok(scaled(r, 2f64.powf(-mu) / z.powf(mu + 0.5)))
            }),
        },
        alternates: vec![],
    }
}

fn rck_3() -> IdentityCase {
    const NAMES: &[&str] = &["mu", "z"];
    IdentityCase {
        id: "RCK-3",
        equation_tag: "2.34",
        statement: "H_mu{u^(mu+1/2) P{f; u}; z} = K_(-mu){x^(mu+1/2) f; z},  f = exp(-x^2)"
            .into(),
        param_names: NAMES,
        strip: "-1 < mu < 3/2, z > 0",
        strip_check: rck_strip(),
        default_grid: grid(NAMES, &[&[0.0, 1.0], &[0.5, 1.0], &[-0.5, 1.0], &[0.5, 2.0]]),
        tol_class: TolClass::Nested,
        notes: "CK-3 at nu = 1. At mu = -1/2 both kernels collapse to cosines and the relation \
                becomes a bare Fourier-cosine exchange, a useful cross-check away from the \
                Bessel machinery.",
        lhs: Box::new(|p, cfg| ck_hankel_side(param(p, "mu")?, 1.0, param(p, "z")?, cfg)),
        lhs_formula: "int_0^inf sqrt(u z) J_mu(u z) u^(mu+1/2) P{exp(-x^2); u} du",
        rhs: Rhs::Pipeline {
            formula: "K_(-mu){x^(mu+1/2) exp(-x^2); z}",
            eval: Box::new(|p, cfg| ck_k_side(param(p, "mu")?, 1.0, param(p, "z")?, cfg)),
        },
        alternates: vec![],
    }
}

fn cali_strip() -> super::StripFn {
    Box::new(|p| {
        let (mu, nu) = (p["mu"], p["nu"]);
        if !(mu > 0.0) {
            return Some(format!("mu = {mu} must be > 0"));
        }
        if !(nu > mu) {
            return Some(format!("nu = {nu} must be > mu = {mu}"));
        }
        if !(nu < mu + 2.0) {
            return Some(format!(
                "nu = {nu} must be < mu + 2 = {}: the moment of u^2 exp(-u^2) diverges otherwise",
                mu + 2.0
            ));
        }
        None
    })
}

const CALI_GRID: &[&[f64]] = &[&[0.5, 1.0], &[0.5, 1.5], &[1.0, 1.5], &[0.75, 1.25]];

fn cali_1() -> IdentityCase {
    const NAMES: &[&str] = &["mu", "nu"];
    IdentityCase {
        id: "CALI-1",
        equation_tag: "2.36",
        statement: "int_0^inf y^(2nu-2mu-1) L2{g; y} dy = (Gamma(nu)/Gamma(mu)) int_0^inf \
                    x^(2mu-1) P_(nu,2){g; x} dx,  g = u^2 exp(-u^2)"
            .into(),
        param_names: NAMES,
        strip: "0 < mu < nu < mu + 2",
        strip_check: cali_strip(),
        default_grid: grid(NAMES, CALI_GRID),
        tol_class: TolClass::Nested,
        notes: "Moment-exchange relation, checked as printed: it is the one member of its \
                trio whose printed form survives the numerics. The upper bound nu < mu + 2 \
                comes from the pinned input's u^2 behaviour at the origin.",
        lhs: Box::new(|p, cfg| cali_y_side(param(p, "mu")?, param(p, "nu")?, cfg)),
        lhs_formula: "int_0^inf y^(2nu-2mu-1) L2{u^2 exp(-u^2); y} dy",
        rhs: Rhs::Pipeline {
            formula: "(Gamma(nu)/Gamma(mu)) int_0^inf x^(2mu-1) P_(nu,2){u^2 exp(-u^2); x} dx",
            eval: Box::new(|p, cfg| {
                let (mu, nu) = (param(p, "mu")?, param(p, "nu")?);
                let r = cali_x_side(mu, nu, cfg)?;
                Ok(scaled(r, gamma(nu)? * rgamma(mu)))
            }),
        },
        alternates: vec![],
    }
}

fn cali_2() -> IdentityCase {
    const NAMES: &[&str] = &["mu", "nu"];
    IdentityCase {
        id: "CALI-2",
        equation_tag: "2.37",
        statement: "int_0^inf y^(2nu-2mu-1) L2{g; y} dy = (Gamma(nu-mu)/2) int_0^inf \
                    u^(2mu-2nu+1) g(u) du,  g = u^2 exp(-u^2)"
            .into(),
        param_names: NAMES,
        strip: "0 < mu < nu < mu + 2",
        strip_check: cali_strip(),
        default_grid: grid(NAMES, CALI_GRID),
        tol_class: TolClass::Nested,
        notes: "The source text prints the moment weight as u^(2mu-2nu-1); swapping the order \
                of integration in the left side gives u^(2mu-2nu+1), and the numerics agree \
                with the corrected weight on every grid row (the printed one is off 2x at \
                (1/2, 1) and its moment diverges at (1/2, 3/2)).",
        lhs: Box::new(|p, cfg| cali_y_side(param(p, "mu")?, param(p, "nu")?, cfg)),
        lhs_formula: "int_0^inf y^(2nu-2mu-1) L2{u^2 exp(-u^2); y} dy",
        rhs: Rhs::Closed {
            formula: "(Gamma(nu-mu)/2) Gamma(mu-nu+2)/2   [weight u^(2mu-2nu+1)]",
            eval: Box::new(|p| {
                let (mu, nu) = (param(p, "mu")?, param(p, "nu")?);
                Ok(gamma(nu - mu)? / 2.0 * gauss_moment(2.0 * (mu - nu) + 4.0, 1.0)?)
            }),
        },
        alternates: vec![Alternate {
            label: "printed-weight",
            formula: "(Gamma(nu-mu)/2) int_0^inf u^(2mu-2nu-1) u^2 exp(-u^2) du",
            verdict: "printed moment weight u^(2mu-2nu-1): off 2x against the brute-force \
                      left side where it converges, divergent at the origin elsewhere",
            eval: AlternateEval::Closed(Box::new(|p| {
                let (mu, nu) = (param(p, "mu")?, param(p, "nu")?);
                Ok(gamma(nu - mu)? / 2.0 * gauss_moment(2.0 * (mu - nu) + 2.0, 1.0)?)
            })),
        }],
    }
}

fn cali_3() -> IdentityCase {
    const NAMES: &[&str] = &["mu", "nu"];
    IdentityCase {
        id: "CALI-3",
        equation_tag: "2.38",
        statement: "int_0^inf x^(2mu-1) P_(nu,2){g; x} dx = (B(mu, nu-mu)/2) int_0^inf \
                    u^(2mu-2nu+1) g(u) du,  g = u^2 exp(-u^2)"
            .into(),
        param_names: NAMES,
        strip: "0 < mu < nu < mu + 2",
        strip_check: cali_strip(),
        default_grid: grid(NAMES, CALI_GRID),
        tol_class: TolClass::Nested,
        notes: "Same printed weight defect as CALI-2. A worked instance in the source pins \
                this value at pi^(3/2)/4 for (mu, nu) = (1/2, 1) via the printed weight; the \
                brute-force left side is pi^(3/2)/8, which the corrected weight reproduces.",
        lhs: Box::new(|p, cfg| cali_x_side(param(p, "mu")?, param(p, "nu")?, cfg)),
        lhs_formula: "int_0^inf x^(2mu-1) P_(nu,2){u^2 exp(-u^2); x} dx",
        rhs: Rhs::Closed {
            formula: "(B(mu, nu-mu)/2) Gamma(mu-nu+2)/2   [weight u^(2mu-2nu+1)]",
            eval: Box::new(|p| {
                let (mu, nu) = (param(p, "mu")?, param(p, "nu")?);
                Ok(beta(mu, nu - mu)? / 2.0 * gauss_moment(2.0 * (mu - nu) + 4.0, 1.0)?)
            }),
        },
        alternates: vec![Alternate {
            label: "printed-weight",
            formula: "(B(mu, nu-mu)/2) int_0^inf u^(2mu-2nu-1) u^2 exp(-u^2) du",
            verdict: "printed moment weight u^(2mu-2nu-1): evaluates to pi^(3/2)/4 at \
                      (1/2, 1) where the brute-force left side is pi^(3/2)/8",
            eval: AlternateEval::Closed(Box::new(|p| {
                let (mu, nu) = (param(p, "mu")?, param(p, "nu")?);
                Ok(beta(mu, nu - mu)? / 2.0 * gauss_moment(2.0 * (mu - nu) + 2.0, 1.0)?)
            })),
        }],
    }
}

fn pnu2_power() -> IdentityCase {
    const NAMES: &[&str] = &["mu", "nu", "y"];
    IdentityCase {
        id: "PNU2-POWER",
        equation_tag: "2.40",
        statement: "P_(nu,2){x^(2mu-2); y} = (1/2) B(mu, nu-mu) y^(2mu-2nu)".into(),
        param_names: NAMES,
        strip: "0 < mu < nu, y > 0",
        strip_check: Box::new(|p| {
            let (mu, nu) = (p["mu"], p["nu"]);
            if !(mu > 0.0) {
                return Some(format!("mu = {mu} must be > 0"));
            }
            if !(nu > mu) {
                return Some(format!("nu = {nu} must be > mu = {mu}"));
            }
            positive(p, "y")
        }),
        default_grid: grid(
            NAMES,
            &[
                &[0.5, 1.0, 1.0],
                &[0.25, 0.75, 1.0],
                &[1.0, 1.5, 2.0],
                &[0.75, 2.0, 1.0],
                &[0.5, 1.0, 2.0],
            ],
        ),
        tol_class: TolClass::Smooth,
        notes: "Pure power input: both endpoint behaviours are algebraic, so this entry \
                isolates the endpoint handling of the semi-infinite map from any decay aids.",
        lhs: Box::new(|p, cfg| {
            let mu = param(p, "mu")?;
            p_nu2_transform(&powerlaw(mu), param(p, "nu")?, param(p, "y")?, cfg)
        }),
        lhs_formula: "int_0^inf x^(2mu-1) / (x^2 + y^2)^nu dx",
        rhs: Rhs::Closed {
            formula: "(1/2) B(mu, nu-mu) y^(2mu-2nu)",
            eval: Box::new(|p| {
                let (mu, nu) = (param(p, "mu")?, param(p, "nu")?);
                Ok(0.5 * beta(mu, nu - mu)? * param(p, "y")?.powf(2.0 * (mu - nu)))
            }),
        },
        alternates: vec![],
    }
}

fn ci_1() -> IdentityCase {
    const NAMES: &[&str] = &["mu", "nu", "t"];
    IdentityCase {
        id: "CI-1",
        equation_tag: "2.42",
        statement: "P_(mu,2){P_(nu,2){g; x}; t} = (1/Gamma(nu)) int_0^inf y^(2nu+2mu-3) \
                    exp(t^2 y^2) Gamma(1-mu, t^2 y^2) L2{g; y} dy,  g = exp(-x^2)"
            .into(),
        param_names: NAMES,
        strip: "0 < mu < 1, mu < nu < 2, t > 0",
        strip_check: Box::new(|p| {
            let (mu, nu) = (p["mu"], p["nu"]);
            if !(mu > 0.0 && mu < 1.0) {
                return Some(format!("mu = {mu} must lie in (0, 1)"));
            }
            if !(nu > mu) {
                return Some(format!("nu = {nu} must be > mu = {mu}"));
            }
            if !(nu < 2.0) {
                return Some(format!(
                    "nu = {nu} must be < 2 for both sides to converge with the pinned input"
                ));
            }
            positive(p, "t")
        }),
        default_grid: grid(NAMES, &[&[0.5, 1.5, 1.0], &[0.25, 1.25, 1.0], &[0.75, 1.5, 2.0]]),
        tol_class: TolClass::Nested,
        notes: "Exponent verdict: the source prints the y-power as 2nu+2mu-2. Under that power \
                the kernel integral's tail falls off like y^(2nu-4), which is not integrable \
                for nu >= 3/2 (the tail probe rejects it outright), and where it does converge \
                it misses the brute-force composition by a factor of order 1.6. The re-derived \
                power 2nu+2mu-3 agrees with the composition to ~1e-8 relative across the grid. \
                verify_ci_exponent reruns the comparison from scratch and reports both \
                candidates.",
        lhs: Box::new(|p, cfg| ci_lhs(param(p, "mu")?, param(p, "nu")?, param(p, "t")?, cfg)),
        lhs_formula: "int_0^inf x P_(nu,2){exp(-x^2); x} / (x^2 + t^2)^mu dx",
        rhs: Rhs::Pipeline {
            formula: "(1/Gamma(nu)) int_0^inf y^(2nu+2mu-3) exp(t^2 y^2) Gamma(1-mu, t^2 y^2) \
                      L2{exp(-x^2); y} dy",
            eval: Box::new(|p, cfg| {
                let (mu, nu, t) = (param(p, "mu")?, param(p, "nu")?, param(p, "t")?);
                ci_rhs(mu, nu, t, 2.0 * (nu + mu) - 3.0, cfg)
            }),
        },
        alternates: vec![Alternate {
            label: "printed-exponent",
            formula: "(1/Gamma(nu)) int_0^inf y^(2nu+2mu-2) exp(t^2 y^2) Gamma(1-mu, t^2 y^2) \
                      L2{exp(-x^2); y} dy",
            verdict: "printed y-power 2nu+2mu-2: the kernel tail becomes y^(2nu-4), divergent \
                      for nu >= 3/2; where it converges it is off the brute-force composition \
                      by a factor of order 1.6",
            eval: AlternateEval::Pipeline(Box::new(|p, cfg| {
                let (mu, nu, t) = (param(p, "mu")?, param(p, "nu")?, param(p, "t")?);
                ci_rhs(mu, nu, t, 2.0 * (nu + mu) - 2.0, cfg)
            })),
        }],
    }
}

fn ci_2() -> IdentityCase {
    const NAMES: &[&str] = &["nu", "t"];
    IdentityCase {
        id: "CI-2",
        equation_tag: "2.43",
        statement: "G{x P_(nu,2){g; x}; t} = (sqrt(pi)/Gamma(nu)) int_0^inf y^(2nu-2) \
                    exp(t^2 y^2) Erfc(t y) L2{g; y} dy,  g = exp(-x^2)"
            .into(),
        param_names: NAMES,
        strip: "1/2 < nu < 2, t > 0",
        strip_check: Box::new(|p| {
            let nu = p["nu"];
            if !(nu > 0.5 && nu < 2.0) {
                return Some(format!("nu = {nu} must lie in (1/2, 2)"));
            }
            positive(p, "t")
        }),
        default_grid: grid(NAMES, &[&[1.5, 1.0], &[1.25, 1.0], &[1.5, 2.0]]),
        tol_class: TolClass::Nested,
        notes: "mu = 1/2 case of CI-1: Gamma(1/2, w) = sqrt(pi) Erfc(sqrt(w)) turns the kernel \
                into the error function. Two printed defects: the weight appears as y^(2nu-1) \
                (same off-by-one as CI-1), and the left side is printed as the G-transform of \
                P_(nu,2){g} itself, which diverges at the origin for nu > 3/2; the reading \
                that matches the right side carries the x weight. Both are kept as alternates.",
        lhs: Box::new(|p, cfg| ci_lhs(0.5, param(p, "nu")?, param(p, "t")?, cfg)),
        lhs_formula: "int_0^inf x P_(nu,2){exp(-x^2); x} / sqrt(x^2 + t^2) dx",
        rhs: Rhs::Pipeline {
            formula: "(sqrt(pi)/Gamma(nu)) int_0^inf y^(2nu-2) exp(t^2 y^2) Erfc(t y) \
                      L2{exp(-x^2); y} dy",
            eval: Box::new(|p, cfg| {
                let (nu, t) = (param(p, "nu")?, param(p, "t")?);
                ci_rhs(0.5, nu, t, 2.0 * nu - 2.0, cfg)
            }),
        },
        alternates: vec![
            Alternate {
                label: "printed-weight",
                formula: "(sqrt(pi)/Gamma(nu)) int_0^inf y^(2nu-1) exp(t^2 y^2) Erfc(t y) \
                          L2{exp(-x^2); y} dy",
                verdict: "printed weight y^(2nu-1) inherits the CI-1 off-by-one: its kernel \
                          tail y^(2nu-4) diverges for nu >= 3/2 and misses the brute-force \
                          value where it converges",
                eval: AlternateEval::Pipeline(Box::new(|p, cfg| {
                    let (nu, t) = (param(p, "nu")?, param(p, "t")?);
                    ci_rhs(0.5, nu, t, 2.0 * nu - 1.0, cfg)
                })),
            },
            Alternate {
                label: "printed-reading",
                formula: "G{P_(nu,2){exp(-x^2); x}; t}",
                verdict: "printed left side without the x weight: diverges at the origin for \
                          nu > 3/2 and disagrees with the erfc side where it converges",
                eval: AlternateEval::Pipeline(Box::new(|p, cfg| {
                    let (nu, t) = (param(p, "nu")?, param(p, "t")?);
                    let g = gauss();
                    let icfg = cfg.inner();
                    let pm =
                        memoize(move |x: f64| Ok(p_nu2_transform(&g, nu, x, &icfg)?.value));
                    let f = RealFunction::new_fallible(
                        format!("P_({nu},2){{exp(-x^2); x}}"),
                        GrowthClass::AlgebraicDecay { exponent: 2.0 * nu },
                        pm,
                    );
                    glasser_transform(&f, t, cfg)
                })),
            },
        ],
    }
}

fn ex_e1_whittaker() -> IdentityCase {
    const NAMES: &[&str] = &["nu", "a", "y"];
    IdentityCase {
        id: "EX-E1-WHITTAKER",
        equation_tag: "3.2",
        statement: "P_(nu,2){E1(a^2/x^2); y} = Gamma(nu-1)/(2a(nu-1)) y^(3-2nu) \
                    exp(a^2/(2y^2)) W_(3/2-nu,0)(a^2/y^2)"
            .into(),
        param_names: NAMES,
        strip: "nu > 1, a > 0, y > 0",
        strip_check: Box::new(|p| {
            if !(p["nu"] > 1.0) {
                return Some(format!("nu = {} must be > 1", p["nu"]));
            }
            positive(p, "a").or_else(|| positive(p, "y"))
        }),
        default_grid: grid(
            NAMES,
            &[
                &[1.5, 1.0, 1.0],
                &[2.0, 1.0, 1.0],
                &[1.5, 0.5, 1.0],
                &[2.0, 1.0, 0.5],
            ],
        ),
        tol_class: TolClass::Smooth,
        notes: "The input grows like 2 ln x, slower than any power, so nu > 1 is exactly the \
                transform's convergence edge. At nu = 2, a = y = 1 the right side collapses to \
                (1/2) e E1(1) through W_(-1/2,0)(w) = sqrt(w) exp(w/2) E1(w).",
        lhs: Box::new(|p, cfg| {
            let a = param(p, "a")?;
            p_nu2_transform(&e1_inv_sq(a), param(p, "nu")?, param(p, "y")?, cfg)
        }),
        lhs_formula: "int_0^inf x E1(a^2/x^2) / (x^2 + y^2)^nu dx",
        rhs: Rhs::Closed {
            formula: "Gamma(nu-1)/(2a(nu-1)) y^(3-2nu) exp(a^2/(2y^2)) W_(3/2-nu,0)(a^2/y^2)",
            eval: Box::new(|p| {
                let (nu, a, y) = (param(p, "nu")?, param(p, "a")?, param(p, "y")?);
                let w = a * a / (y * y);
                Ok(gamma(nu - 1.0)? / (2.0 * a * (nu - 1.0))
                    * y.powf(3.0 - 2.0 * nu)
                    * (w / 2.0).exp()
                    * whittaker_w(1.5 - nu, 0.0, w)?.value)
            }),
        },
        alternates: vec![],
    }
}

fn ex_gauss_tricomi() -> IdentityCase {
    const NAMES: &[&str] = &["mu", "nu", "a", "y"];
    IdentityCase {
        id: "EX-GAUSS-TRICOMI",
        equation_tag: "3.8",
        statement: "P_(nu,2){x^(2mu) exp(-a^2 x^2); y} = (Gamma(mu+1)/2) a^(2nu-2mu-2) \
                    Psi(nu, nu-mu; a^2 y^2)"
            .into(),
        param_names: NAMES,
        strip: "mu > -1, nu > 0, a > 0, y > 0",
        strip_check: Box::new(|p| {
            if !(p["mu"] > -1.0) {
                return Some(format!("mu = {} must be > -1", p["mu"]));
            }
            positive(p, "nu")
                .or_else(|| positive(p, "a"))
                .or_else(|| positive(p, "y"))
        }),
        default_grid: grid(
            NAMES,
            &[
                &[0.0, 1.0, 1.0, 1.0],
                &[0.5, 1.25, 1.0, 1.0],
                &[1.0, 1.5, 1.0, 2.0],
                &[0.0, 1.5, 2.0, 0.5],
            ],
        ),
        tol_class: TolClass::Smooth,
        notes: "Gaussian-family transforms in one stroke via the Tricomi function. The source \
                states it for nu - mu away from integers; integer separations (the first grid \
                row has nu - mu = 1) go through the limiting form inside the Psi evaluation.",
        lhs: Box::new(|p, cfg| {
            let (mu, a) = (param(p, "mu")?, param(p, "a")?);
            p_nu2_transform(&power_gauss(2.0 * mu, a), param(p, "nu")?, param(p, "y")?, cfg)
        }),
        lhs_formula: "int_0^inf x^(2mu+1) exp(-a^2 x^2) / (x^2 + y^2)^nu dx",
        rhs: Rhs::Closed {
            formula: "(Gamma(mu+1)/2) a^(2nu-2mu-2) Psi(nu, nu-mu; a^2 y^2)",
            eval: Box::new(|p| {
                let (mu, nu) = (param(p, "mu")?, param(p, "nu")?);
                let (a, y) = (param(p, "a")?, param(p, "y")?);
                Ok(gamma(mu + 1.0)? / 2.0
                    * a.powf(2.0 * (nu - mu) - 2.0)
                    * tricomi_psi(nu, nu - mu, a * a * y * y)?.value)
            }),
        },
        alternates: vec![],
    }
}

fn ex_k_cos() -> IdentityCase {
    const NAMES: &[&str] = &["mu", "nu", "a", "z"];
    IdentityCase {
        id: "EX-K-COS",
        equation_tag: "3.12",
        statement: "K_(nu-mu-1){x^(mu-nu+1/2) cos(a x); z} = sqrt(pi) 2^(mu-nu) z^(mu-nu+3/2) \
                    Gamma(mu-nu+3/2) / (a^2+z^2)^(mu-nu+3/2)"
            .into(),
        param_names: NAMES,
        strip: "mu - nu + 3/2 > 0, a > 0, z > 0",
        strip_check: Box::new(|p| {
            let (mu, nu) = (p["mu"], p["nu"]);
            if !(mu - nu + 1.5 > 0.0) {
                return Some(format!("mu - nu + 3/2 = {} must be > 0", mu - nu + 1.5));
            }
            positive(p, "a").or_else(|| positive(p, "z"))
        }),
        default_grid: grid(
            NAMES,
            &[&[0.5, 1.0, 1.0, 1.0], &[0.0, 1.0, 2.0, 1.0], &[1.0, 1.5, 1.0, 0.5]],
        ),
        tol_class: TolClass::Smooth,
        notes: "Checked as printed and confirmed on the full grid; the order-zero row is the \
                classical cosine transform of K_0. The cosine rides under the exponential \
                kernel decay, so no oscillatory machinery is involved.",
        lhs: Box::new(|p, cfg| {
            let (mu, nu) = (param(p, "mu")?, param(p, "nu")?);
            let (a, z) = (param(p, "a")?, param(p, "z")?);
            let f = RealFunction::new(
                format!("x^({} ) cos({a} x)", mu - nu + 0.5),
                GrowthClass::Bounded,
                move |x: f64| x.powf(mu - nu + 0.5) * (a * x).cos(),
            );
            k_transform(&f, nu - mu - 1.0, z, cfg)
        }),
        lhs_formula: "int_0^inf sqrt(x z) K_(nu-mu-1)(x z) x^(mu-nu+1/2) cos(a x) dx",
        rhs: Rhs::Closed {
            formula: "sqrt(pi) 2^(mu-nu) z^(mu-nu+3/2) Gamma(mu-nu+3/2) / (a^2+z^2)^(mu-nu+3/2)",
            eval: Box::new(|p| {
                let (mu, nu) = (param(p, "mu")?, param(p, "nu")?);
                let (a, z) = (param(p, "a")?, param(p, "z")?);
                let e = mu - nu + 1.5;
                Ok(PI.sqrt() * 2f64.powf(mu - nu) * z.powf(e) * gamma(e)?
                    / (a * a + z * z).powf(e))
            }),
        },
        alternates: vec![],
    }
}

fn ex_h_kbessel() -> IdentityCase {
    const NAMES: &[&str] = &["mu", "nu", "a", "z"];
    IdentityCase {
        id: "EX-H-KBESSEL",
        equation_tag: "3.13",
        statement: "H_mu{u^(mu-nu+1) K_(nu-1/2)(a u); z} = 2^(mu-nu+1/2) a^(1/2-nu) z^(mu+1/2) \
                    Gamma(mu-nu+3/2) / (z^2+a^2)^(mu-nu+3/2)"
            .into(),
        param_names: NAMES,
        strip: "-1 < mu, 2 nu - 3 < mu, mu - nu + 3/2 > 0, a > 0, z > 0",
        strip_check: Box::new(|p| {
            let (mu, nu) = (p["mu"], p["nu"]);
            if !(mu > -1.0) {
                return Some(format!("mu = {mu} must be > -1"));
            }
            if !(mu > 2.0 * nu - 3.0) {
                return Some(format!("mu = {mu} must be > 2 nu - 3 = {}", 2.0 * nu - 3.0));
            }
            if !(mu - nu + 1.5 > 0.0) {
                return Some(format!("mu - nu + 3/2 = {} must be > 0", mu - nu + 1.5));
            }
            positive(p, "a").or_else(|| positive(p, "z"))
        }),
        default_grid: grid(
            NAMES,
            &[&[0.0, 1.0, 1.0, 1.0], &[0.5, 1.0, 0.5, 1.0], &[1.0, 1.5, 1.0, 2.0]],
        ),
        tol_class: TolClass::Oscillatory,
        notes: "The source prints the input power as u^(mu+nu), inverting the exponent it \
                obtained two displays earlier; with that weight the two printed sides differ \
                by factors 4 to 6.25 on this grid. Undoing the inversion gives u^(mu-nu+1), \
                which matches the dual cosine-kernel entry and the numerics.",
        lhs: Box::new(|p, cfg| {
            let (mu, nu) = (param(p, "mu")?, param(p, "nu")?);
            let (a, z) = (param(p, "a")?, param(p, "z")?);
            let f = RealFunction::new_fallible(
                format!("u^({}) K_({})({a} u)", mu - nu + 1.0, nu - 0.5),
                GrowthClass::ExponentialDecay { rate: a },
                move |u: f64| Ok(u.powf(mu - nu + 1.0) * bessel_k(nu - 0.5, a * u)?),
            );
            hankel_transform(&f, mu, z, cfg)
        }),
        lhs_formula: "int_0^inf sqrt(u z) J_mu(u z) u^(mu-nu+1) K_(nu-1/2)(a u) du",
        rhs: Rhs::Closed {
            formula: "2^(mu-nu+1/2) a^(1/2-nu) z^(mu+1/2) Gamma(mu-nu+3/2) / \
                      (z^2+a^2)^(mu-nu+3/2)",
            eval: Box::new(|p| {
                let (mu, nu) = (param(p, "mu")?, param(p, "nu")?);
                let (a, z) = (param(p, "a")?, param(p, "z")?);
                let e = mu - nu + 1.5;
                Ok(2f64.powf(mu - nu + 0.5) * a.powf(0.5 - nu) * z.powf(mu + 0.5) * gamma(e)?
                    / (z * z + a * a).powf(e))
            }),
        },
        alternates: vec![
            Alternate {
                label: "printed-lhs",
                formula: "H_mu{u^(mu+nu) K_(nu-1/2)(a u); z}",
                verdict: "printed input power u^(mu+nu): converges but lands at a quarter of \
                          the printed right side on the first grid row",
                eval: AlternateEval::Pipeline(Box::new(|p, cfg| {
                    let (mu, nu) = (param(p, "mu")?, param(p, "nu")?);
                    let (a, z) = (param(p, "a")?, param(p, "z")?);
                    let f = RealFunction::new_fallible(
                        format!("u^({}) K_({})({a} u)", mu + nu, nu - 0.5),
                        GrowthClass::ExponentialDecay { rate: a },
                        move |u: f64| Ok(u.powf(mu + nu) * bessel_k(nu - 0.5, a * u)?),
                    );
                    hankel_transform(&f, mu, z, cfg)
                })),
            },
            Alternate {
                label: "printed-rhs",
                formula: "sqrt(2) (a/2)^(nu-1/2) (2z)^(mu+1/2) Gamma(mu-nu+3/2) / \
                          (z^2+a^2)^(mu-nu+3/2)",
                verdict: "printed right side: disagrees with both the printed and the \
                          corrected input weight (2x above the corrected value on the first \
                          grid row)",
                eval: AlternateEval::Closed(Box::new(|p| {
                    let (mu, nu) = (param(p, "mu")?, param(p, "nu")?);
                    let (a, z) = (param(p, "a")?, param(p, "z")?);
                    let e = mu - nu + 1.5;
                    Ok(2f64.sqrt()
                        * (a / 2.0).powf(nu - 0.5)
                        * (2.0 * z).powf(mu + 0.5)
                        * gamma(e)?
                        / (z * z + a * a).powf(e))
                })),
            },
        ],
    }
}

fn pnu2_cos() -> IdentityCase {
    const NAMES: &[&str] = &["nu", "a", "y"];
    IdentityCase {
        id: "PNU2-COS",
        equation_tag: "3.17",
        statement: "P_(nu,2){cos(a x)/x; y} = (sqrt(pi)/Gamma(nu)) (a/(2y))^(nu-1/2) \
                    K_(nu-1/2)(a y)"
            .into(),
        param_names: NAMES,
        strip: "nu > 0, a > 0, y > 0",
        strip_check: Box::new(|p| {
            positive(p, "nu")
                .or_else(|| positive(p, "a"))
                .or_else(|| positive(p, "y"))
        }),
        default_grid: grid(
            NAMES,
            &[
                &[1.0, 1.0, 2.0],
                &[1.0, 2.0, 1.0],
                &[1.5, 1.0, 2.0],
                &[0.75, 2.0, 1.0],
            ],
        ),
        tol_class: TolClass::Smooth,
        notes: "The source prints the prefactor base as (u/2a), ambiguous between u/(2a) and \
                ua/2; dimensional analysis of the defining integral forces a/(2y), and only \
                that base matches the quadrature on all grid rows. Both printed groupings are \
                kept as alternates. The input rides the half-order lattice cos(ax) = \
                sqrt(pi a x/2) J_(-1/2)(a x).",
        lhs: Box::new(|p, cfg| {
            let a = param(p, "a")?;
            p_nu2_transform(&cos_over_x(a), param(p, "nu")?, param(p, "y")?, cfg)
        }),
        lhs_formula: "int_0^inf cos(a x) / (x^2 + y^2)^nu dx",
        rhs: Rhs::Closed {
            formula: "(sqrt(pi)/Gamma(nu)) (a/(2y))^(nu-1/2) K_(nu-1/2)(a y)",
            eval: Box::new(|p| {
                let (nu, a, y) = (param(p, "nu")?, param(p, "a")?, param(p, "y")?);
                Ok(PI.sqrt() * rgamma(nu) * (a / (2.0 * y)).powf(nu - 0.5)
                    * bessel_k(nu - 0.5, a * y)?)
            }),
        },
        alternates: vec![
            Alternate {
                label: "printed-u-over-2a",
                formula: "(sqrt(pi)/Gamma(nu)) (y/(2a))^(nu-1/2) K_(nu-1/2)(a y)",
                verdict: "reading the printed base as y/(2a) inverts the true prefactor; \
                          mismatches the quadrature wherever nu != 1/2",
                eval: AlternateEval::Closed(Box::new(|p| {
                    let (nu, a, y) = (param(p, "nu")?, param(p, "a")?, param(p, "y")?);
                    Ok(PI.sqrt() * rgamma(nu) * (y / (2.0 * a)).powf(nu - 0.5)
                        * bessel_k(nu - 0.5, a * y)?)
                })),
            },
            Alternate {
                label: "printed-ya-over-2",
                formula: "(sqrt(pi)/Gamma(nu)) (y a/2)^(nu-1/2) K_(nu-1/2)(a y)",
                verdict: "reading the printed base as ya/2 fails the dimensional check and \
                          the quadrature alike",
                eval: AlternateEval::Closed(Box::new(|p| {
                    let (nu, a, y) = (param(p, "nu")?, param(p, "a")?, param(p, "y")?);
                    Ok(PI.sqrt() * rgamma(nu) * (y * a / 2.0).powf(nu - 0.5)
                        * bessel_k(nu - 0.5, a * y)?)
                })),
            },
        ],
    }
}
