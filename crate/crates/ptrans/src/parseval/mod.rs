//! Exchange-relation harness.
//!
//! Each relation here equates integrals of the form `int f * (T g)` and
//! `int g * (T f)` (or a weighted spectral integral against both L2
//! transforms). The harness evaluates every side by an independent pipeline
//! and compares at the relation's tolerance class. Hypothesis checking is
//! done from decay metadata, never by numerical sniffing: a pair whose
//! metadata rules out absolute convergence is reported as skipped with the
//! reason, not counted as a failure.
//!
//! Relation ids:
//!
//! * `T1-1`, `T1-2`, `T1-3`: the three pairings of the weighted-L2 exchange
//!   at general nu > 0 (spectral side, f-side, g-side).
//! * `L2W-1`, `L2W-2`, `L2W-3`: the same at nu = 1, where the f/g sides run
//!   through the potential transform.
//! * `MOM-1`, `MOM-2`, `MOM-3`: the moment identities tying the weighted
//!   integral of an L2 transform to a weighted integral of the input.
//! * `GLASSER-PG`: `int f * G{g} = int g * G{f}`.

mod functions;

pub use functions::{
    build as build_function, listing as function_listing, besselj, cos_over_x, e1_inv_sq, gauss,
    one, power_gauss, powerlaw, sqrtx_gauss, CatalogFunction, FunctionSpec,
};

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::{self, IdentityReport};
use crate::quad::{
    integrate_exponential_decay, integrate_gaussian_decay, integrate_oscillatory_bessel,
    integrate_semi_infinite, QuadConfig, QuadResult,
};
use crate::specfun::{beta, gamma};
use crate::transforms::{glasser_transform, l2_transform, p_nu2_transform, GrowthClass};

/// Outcome of comparing two sides of one relation at one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParsevalReport {
    pub relation: String,
    pub f_name: String,
    pub g_name: String,
    pub nu: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side_a: Option<QuadResult<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side_b: Option<QuadResult<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_gap: Option<f64>,
    pub tol_rel: f64,
    pub pass: bool,
    /// Hypothesis not satisfied; the pair was not evaluated. Not a failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    /// A side errored or could not be adjudicated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl ParsevalReport {
    fn shell(relation: &str, f: &str, g: &str, nu: f64, tol_rel: f64) -> Self {
        ParsevalReport {
            relation: relation.into(),
            f_name: f.into(),
            g_name: g.into(),
            nu,
            mu: None,
            side_a: None,
            side_b: None,
            rel_gap: None,
            tol_rel,
            pass: false,
            skipped: None,
            failure: None,
        }
    }

    fn skipped(mut self, reason: &str) -> Self {
        self.skipped = Some(reason.into());
        self
    }

    fn compared(mut self, a: QuadResult<f64>, b: QuadResult<f64>) -> Self {
        let gap = rel_gap(a.value, b.value);
        self.side_a = Some(a);
        self.side_b = Some(b);
        self.rel_gap = Some(gap);
        self.pass = gap <= self.tol_rel;
        self
    }

    fn failed(mut self, why: &Error) -> Self {
        self.failure = Some(why.to_string());
        self
    }
}

/// Symmetric relative gap; 0 when both values are exactly 0.
pub fn rel_gap(a: f64, b: f64) -> f64 {
    let denom = a.abs().max(b.abs());
    if denom == 0.0 {
        0.0
    } else {
        (a - b).abs() / denom
    }
}

/// Tolerance classes: any oscillatory member degrades the class to 1e-4;
/// the moment relations carry doubly-nested quadrature on one side and get
/// 1e-5; everything else is smooth-Gaussian territory at 1e-6.
fn pair_tol(f: &CatalogFunction, g: &CatalogFunction, nested: bool) -> f64 {
    if f.oscillatory || g.oscillatory {
        1e-4
    } else if nested {
        1e-5
    } else {
        1e-6
    }
}

/// Outer/inner evaluation budgets for a nested relation side: 30% of the
/// eval budget to the outer grid, 70% to each inner transform call, with
/// the inner tolerances tightened 10x so the outer error dominates.
fn split_budget(cfg: &QuadConfig<f64>) -> (QuadConfig<f64>, QuadConfig<f64>) {
    let mut outer = cfg.clone();
    outer.max_evals = ((cfg.max_evals as f64) * 0.3) as u64;
    let mut inner = cfg.inner();
    inner.max_evals = ((cfg.max_evals as f64) * 0.7) as u64;
    (outer, inner)
}

/// Memoize a scalar map by the exact bit pattern of its argument. The
/// adaptive outer grid revisits abscissae when panels are re-examined, and
/// every inner transform evaluation is worth caching. Confined to one
/// relation side, so suite-level determinism is unaffected.
fn memoized(
    f: impl Fn(f64) -> Result<f64> + Send + Sync,
) -> impl Fn(f64) -> Result<f64> + Send + Sync {
    let cache: Mutex<HashMap<u64, f64>> = Mutex::new(HashMap::new());
    move |x: f64| {
        let key = x.to_bits();
        if let Some(&v) = cache.lock().expect("memo lock").get(&key) {
            return Ok(v);
        }
        let v = f(x)?;
        cache.lock().expect("memo lock").insert(key, v);
        Ok(v)
    }
}

/// Integrate weight(x) * member(x) over (0, inf), routed by the member's
/// growth class exactly as the transforms route their kernels.
fn integrate_against(
    member: &CatalogFunction,
    weight: impl Fn(f64) -> Result<f64>,
    cfg: &QuadConfig<f64>,
) -> Result<QuadResult<f64>> {
    let re = &member.realization;
    match re.growth {
        GrowthClass::GaussianDecay { rate } => {
            integrate_gaussian_decay(|x| Ok(weight(x)? * re.eval(x)?), rate, cfg)
        }
        GrowthClass::ExponentialDecay { rate } => {
            integrate_exponential_decay(|x| Ok(weight(x)? * re.eval(x)?), rate, cfg)
        }
        GrowthClass::OscillatoryBessel { order, freq } => {
            let env = re
                .envelope_fn()
                .ok_or_else(|| Error::Usage("oscillatory member lacks an envelope".into()))?;
            integrate_oscillatory_bessel(|x| Ok(weight(x)? * env(x)?), order, freq, cfg)
        }
        GrowthClass::AlgebraicDecay { .. } | GrowthClass::Bounded => {
            integrate_semi_infinite(|x| Ok(weight(x)? * re.eval(x)?), 0.0, cfg)
        }
    }
}

/// Scale a quadrature result by a positive constant prefactor.
fn scaled(r: QuadResult<f64>, c: f64) -> QuadResult<f64> {
    QuadResult {
        value: c * r.value,
        error_estimate: c.abs() * r.error_estimate,
        ..r
    }
}

/// Algebraic tail exponent of a member: f ~ x^(-e) at infinity, with 0 for
/// a bounded non-decaying function and +inf for super-algebraic decay.
fn tail_exponent(f: &CatalogFunction) -> f64 {
    match f.realization.growth {
        GrowthClass::GaussianDecay { .. }
        | GrowthClass::ExponentialDecay { .. }
        | GrowthClass::OscillatoryBessel { .. } => f64::INFINITY,
        GrowthClass::AlgebraicDecay { exponent } => exponent,
        GrowthClass::Bounded => 0.0,
    }
}

/// The weighted-exchange hypothesis, from metadata only.
///
/// Writing d for the catalog decay index (power of the member at the origin
/// plus two, which is also the algebraic decay rate of its L2 transform),
/// the spectral side converges at infinity, and each nested side converges
/// at the origin, iff nu < (d_f + d_g)/2 strictly (equality is
/// log-divergent). Each nested side's tail needs nu > 1 - e/2 for its outer
/// member's tail exponent e; that is vacuous for decaying members.
fn theorem_hypothesis(f: &CatalogFunction, g: &CatalogFunction, nu: f64) -> Option<String> {
    let top = (f.l2_decay + g.l2_decay) / 2.0;
    if !(nu < top) {
        return Some(format!(
            "spectral integrand falls like y^({}) at infinity: needs nu < {top}, got {nu}",
            2.0 * nu - 1.0 - f.l2_decay - g.l2_decay
        ));
    }
    for m in [f, g] {
        let e = tail_exponent(m);
        if !(nu > 1.0 - e / 2.0) {
            return Some(format!(
                "side against {} has tail x^({}): needs nu > {}, got {nu}",
                m.name,
                1.0 - e - 2.0 * nu,
                1.0 - e / 2.0
            ));
        }
    }
    None
}

/// How the inner P_(nu,2) factor of a nested side is produced.
#[derive(Clone, Copy, PartialEq)]
enum InnerP {
    /// Closed form only for oscillatory members (zero-lattice panels inside
    /// a nested integrand are the costliest path, and the closed K-Bessel
    /// forms are probe-tested oracles); raw quadrature otherwise, so the
    /// general-nu relations stay genuinely two-pipeline.
    ClosedIfOscillatory,
    /// Closed form whenever the catalog has one valid at this nu; used by
    /// the nu = 1 relations, where the catalog forms reduce to the scaled
    /// exponential-integral and K-Bessel expressions.
    ClosedIfAvailable,
}

/// int_0^inf x f(x) P_(nu,2){g; x} dx, times gamma(nu)/2.
fn nested_side(
    f: &CatalogFunction,
    g: &CatalogFunction,
    nu: f64,
    policy: InnerP,
    outer: &QuadConfig<f64>,
    inner: &QuadConfig<f64>,
) -> Result<QuadResult<f64>> {
    let prefactor = gamma(nu)? / 2.0;
    let use_closed = g.closed_pnu2_valid(nu)
        && match policy {
            InnerP::ClosedIfOscillatory => g.oscillatory,
            InnerP::ClosedIfAvailable => true,
        };
    let r = if use_closed {
        let p = |y: f64| g.closed_pnu2(nu, y).expect("validity checked above");
        integrate_against(f, |x| Ok(x * p(x)?), outer)?
    } else {
        let inner_cfg = inner.clone();
        let p = memoized(move |y: f64| {
            let r = p_nu2_transform(&g.realization, nu, y, &inner_cfg)?;
            if !r.converged {
                return Err(Error::NonConvergence(format!(
                    "inner transform stalled at error estimate {:.3e} (point {y})",
                    r.error_estimate
                )));
            }
            Ok(r.value)
        });
        integrate_against(f, |x| Ok(x * p(x)?), outer)?
    };
    Ok(scaled(r, prefactor))
}

/// L2{m; y} as a plain map: the catalog's closed form when present, a
/// memoized inner transform otherwise.
fn l2_factor<'a>(
    m: &'a CatalogFunction,
    inner: &QuadConfig<f64>,
) -> Box<dyn Fn(f64) -> Result<f64> + Send + Sync + 'a> {
    if m.has_closed_l2() {
        Box::new(move |y: f64| m.closed_l2(y).expect("present"))
    } else {
        let realization = m.realization.clone();
        let cfg = inner.clone();
        Box::new(memoized(move |y: f64| {
            Ok(l2_transform(&realization, y, &cfg)?.value)
        }))
    }
}

/// int_0^inf y^(2 nu - 1) L2{f; y} L2{g; y} dy, the spectral side.
fn spectral_side(
    f: &CatalogFunction,
    g: &CatalogFunction,
    nu: f64,
    outer: &QuadConfig<f64>,
    inner: &QuadConfig<f64>,
) -> Result<QuadResult<f64>> {
    let lf = l2_factor(f, inner);
    let lg = l2_factor(g, inner);
    integrate_semi_infinite(
        |y: f64| Ok(y.powf(2.0 * nu - 1.0) * lf(y)? * lg(y)?),
        0.0,
        outer,
    )
}

fn exchange_reports(
    ids: [&str; 3],
    f: &CatalogFunction,
    g: &CatalogFunction,
    nu: f64,
    policy: InnerP,
    cfg: &QuadConfig<f64>,
) -> Vec<ParsevalReport> {
    let tol = pair_tol(f, g, false);
    let shell = |id: &str| ParsevalReport::shell(id, &f.name, &g.name, nu, tol);

    if let Some(reason) = theorem_hypothesis(f, g, nu) {
        return ids.iter().map(|id| shell(id).skipped(&reason)).collect();
    }

    let (outer, inner) = split_budget(cfg);
    let side_y = spectral_side(f, g, nu, &outer, &inner);
    let side_x = nested_side(f, g, nu, policy, &outer, &inner);
    // literally the same pipeline when f and g are the same function
    let side_u = if f.name == g.name {
        side_x.clone()
    } else {
        nested_side(g, f, nu, policy, &outer, &inner)
    };

    let pair = |id: &str, a: &Result<QuadResult<f64>>, b: &Result<QuadResult<f64>>| match (a, b) {
        (Ok(a), Ok(b)) => shell(id).compared(*a, *b),
        (Err(e), _) | (_, Err(e)) => shell(id).failed(e),
    };
    vec![
        pair(ids[0], &side_y, &side_x),
        pair(ids[1], &side_y, &side_u),
        pair(ids[2], &side_x, &side_u),
    ]
}

/// The three pairings of the weighted-L2 exchange at general nu > 0:
/// spectral vs f-side, spectral vs g-side, f-side vs g-side.
pub fn check_theorem(
    f: &CatalogFunction,
    g: &CatalogFunction,
    nu: f64,
    cfg: &QuadConfig<f64>,
) -> Result<Vec<ParsevalReport>> {
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(Error::Domain(format!("exchange order nu must be positive, got {nu}")));
    }
    Ok(exchange_reports(
        ["T1-1", "T1-2", "T1-3"],
        f,
        g,
        nu,
        InnerP::ClosedIfOscillatory,
        cfg,
    ))
}

/// The nu = 1 specialization: the nested sides run through the potential
/// transform, whose catalog closed forms (scaled exponential integral for
/// the Gaussian, K-Bessel for the oscillatory members) are preferred.
pub fn check_corollary_nu1(
    f: &CatalogFunction,
    g: &CatalogFunction,
    cfg: &QuadConfig<f64>,
) -> Vec<ParsevalReport> {
    exchange_reports(
        ["L2W-1", "L2W-2", "L2W-3"],
        f,
        g,
        1.0,
        InnerP::ClosedIfAvailable,
        cfg,
    )
}

/// The moment identities for a single input g and exponent pair (mu, nu):
///
/// * A = (gamma(mu)/gamma(nu)) int y^(2nu-2mu-1) L2{g; y} dy
/// * B = int x^(2mu-1) P_(nu,2){g; x} dx
/// * C = (B(mu, nu-mu)/2) int u^(2mu-2nu+1) g(u) du
///
/// MOM-1: A = B, MOM-2: A = C, MOM-3: B = C. The u-weight is the one the
/// equality actually requires; see the identity catalog's moment notes for
/// the printed variant that differs by u^(-2).
pub fn check_moment_corollary(
    g: &CatalogFunction,
    mu: f64,
    nu: f64,
    cfg: &QuadConfig<f64>,
) -> Result<Vec<ParsevalReport>> {
    if !(mu > 0.0 && mu < nu) {
        return Err(Error::StripViolation(format!(
            "moment identities need 0 < mu < nu, got mu = {mu}, nu = {nu}"
        )));
    }
    let tol = pair_tol(g, g, true);
    let shell = |id: &str| {
        let mut r = ParsevalReport::shell(id, &g.name, &g.name, nu, tol);
        r.mu = Some(mu);
        r
    };
    let ids = ["MOM-1", "MOM-2", "MOM-3"];

    // One condition covers the spectral tail and the input-side origin
    // (both are the same exponent count); a non-decaying g additionally
    // constrains the input-side tail.
    let mut reason = None;
    if !(nu < mu + g.l2_decay / 2.0) {
        reason = Some(format!(
            "weighted L2 integrand falls like y^({}) at infinity: needs nu < mu + {}, got nu = {nu}",
            2.0 * (nu - mu) - 1.0 - g.l2_decay,
            g.l2_decay / 2.0
        ));
    }
    let e = tail_exponent(g);
    if reason.is_none() && !(nu > mu + 1.0 - e / 2.0) {
        reason = Some(format!(
            "input-side integrand has tail u^({}): needs nu > mu + {}, got nu = {nu}",
            2.0 * (mu - nu) + 1.0 - e,
            1.0 - e / 2.0
        ));
    }
    if let Some(reason) = reason {
        return Ok(ids.iter().map(|id| shell(id).skipped(&reason)).collect());
    }

    let (outer, inner) = split_budget(cfg);

    let side_a = (|| -> Result<QuadResult<f64>> {
        let prefactor = gamma(mu)? / gamma(nu)?;
        let l2g = l2_factor(g, &inner);
        let w = 2.0 * nu - 2.0 * mu - 1.0;
        let r = integrate_semi_infinite(|y: f64| Ok(y.powf(w) * l2g(y)?), 0.0, &outer)?;
        Ok(scaled(r, prefactor))
    })();

    let side_b = (|| -> Result<QuadResult<f64>> {
        let use_closed = g.oscillatory && g.closed_pnu2_valid(nu);
        let p: Box<dyn Fn(f64) -> Result<f64> + Send + Sync> = if use_closed {
            Box::new(|y: f64| g.closed_pnu2(nu, y).expect("validity checked"))
        } else {
            let realization = g.realization.clone();
            let cfg = inner.clone();
            Box::new(memoized(move |y: f64| {
                let r = p_nu2_transform(&realization, nu, y, &cfg)?;
                if !r.converged {
                    return Err(Error::NonConvergence(format!(
                        "inner transform stalled at error estimate {:.3e} (point {y})",
                        r.error_estimate
                    )));
                }
                Ok(r.value)
            }))
        };
        let w = 2.0 * mu - 1.0;
        integrate_semi_infinite(|x: f64| Ok(x.powf(w) * p(x)?), 0.0, &outer)
    })();

    let side_c = (|| -> Result<QuadResult<f64>> {
        let prefactor = beta(mu, nu - mu)? / 2.0;
        let w = 2.0 * mu - 2.0 * nu + 1.0;
        let r = integrate_against(g, |u| Ok(u.powf(w)), &outer)?;
        Ok(scaled(r, prefactor))
    })();

    let pair = |id: &str, a: &Result<QuadResult<f64>>, b: &Result<QuadResult<f64>>| match (a, b) {
        (Ok(a), Ok(b)) => shell(id).compared(*a, *b),
        (Err(e), _) | (_, Err(e)) => shell(id).failed(e),
    };
    Ok(vec![
        pair(ids[0], &side_a, &side_b),
        pair(ids[1], &side_a, &side_c),
        pair(ids[2], &side_b, &side_c),
    ])
}

/// Both members must decay (their own transform must exist) and be
/// integrable against a logarithm at the origin for the exchange integrals
/// to converge absolutely.
fn glasser_hypothesis(f: &CatalogFunction, g: &CatalogFunction) -> Option<String> {
    for m in [f, g] {
        if tail_exponent(m) <= 0.0 {
            return Some(format!("glasser transform of {} diverges (no tail decay)", m.name));
        }
        if !(m.l2_decay > 1.0) {
            return Some(format!(
                "glasser transform of {} diverges at the origin (behaves like x^({}))",
                m.name,
                m.l2_decay - 2.0
            ));
        }
    }
    None
}

/// GLASSER-PG: int f * G{g; x} dx = int g * G{f; x} dx. The nu field of the
/// report carries 1/2, the kernel power of G.
pub fn check_glasser_pg(
    f: &CatalogFunction,
    g: &CatalogFunction,
    cfg: &QuadConfig<f64>,
) -> ParsevalReport {
    let tol = pair_tol(f, g, false);
    let shell = ParsevalReport::shell("GLASSER-PG", &f.name, &g.name, 0.5, tol);

    if let Some(reason) = glasser_hypothesis(f, g) {
        return shell.skipped(&reason);
    }

    let (outer, inner) = split_budget(cfg);
    let side = |outer_m: &CatalogFunction, inner_m: &CatalogFunction| -> Result<QuadResult<f64>> {
        let realization = inner_m.realization.clone();
        let cfg = inner.clone();
        let gt = memoized(move |x: f64| Ok(glasser_transform(&realization, x, &cfg)?.value));
        integrate_against(outer_m, gt, &outer)
    };

    let side_a = side(f, g);
    let side_b = if f.name == g.name { side_a.clone() } else { side(g, f) };
    match (side_a, side_b) {
        (Ok(a), Ok(b)) => shell.compared(a, b),
        (Err(e), _) | (_, Err(e)) => shell.failed(&e),
    }
}

/// A buildable reference to a catalog function: registry name + parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FnRef {
    pub name: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
}

impl FnRef {
    pub fn new(name: &str) -> Self {
        FnRef { name: name.into(), params: BTreeMap::new() }
    }

    pub fn with(name: &str, params: &[(&str, f64)]) -> Self {
        FnRef {
            name: name.into(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    pub fn build(&self) -> Result<CatalogFunction> {
        functions::build(&self.name, &self.params)
    }
}

/// One schedulable unit of the suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum SuiteCase {
    /// Default parameter grid of one identity-catalog entry.
    Identity { id: String },
    Theorem { f: FnRef, g: FnRef, nu: f64 },
    CorollaryNu1 { f: FnRef, g: FnRef },
    Moment { g: FnRef, mu: f64, nu: f64 },
    Glasser { f: FnRef, g: FnRef },
}

/// All relation ids the suite can produce, in report order.
pub const RELATION_IDS: [&str; 10] = [
    "T1-1", "T1-2", "T1-3", "L2W-1", "L2W-2", "L2W-3", "MOM-1", "MOM-2", "MOM-3", "GLASSER-PG",
];

/// The default verification run: every identity entry's default grid plus
/// the standard pair grid for each exchange relation.
pub fn default_suite() -> Vec<SuiteCase> {
    let mut cases: Vec<SuiteCase> = identities::catalog()
        .iter()
        .map(|c| SuiteCase::Identity { id: c.id.to_string() })
        .collect();

    let gauss = FnRef::new("gauss");
    let pg22 = FnRef::with("power-gauss", &[("q", 2.0), ("a", 2.0)]);
    let sqrtx = FnRef::new("sqrtx-gauss");
    let bj01 = FnRef::with("besselj", &[("mu", 0.0), ("z", 1.0)]);
    let cosx = FnRef::with("cos-over-x", &[("a", 1.0)]);

    let pairs = [
        (gauss.clone(), gauss.clone()),
        (gauss.clone(), pg22.clone()),
        (sqrtx.clone(), gauss.clone()),
        (gauss.clone(), bj01.clone()),
        (pg22.clone(), cosx.clone()),
    ];
    for nu in [0.75, 1.0, 1.5, 2.5] {
        for (f, g) in &pairs {
            cases.push(SuiteCase::Theorem { f: f.clone(), g: g.clone(), nu });
        }
    }
    for (f, g) in &pairs {
        cases.push(SuiteCase::CorollaryNu1 { f: f.clone(), g: g.clone() });
    }

    let pg21 = FnRef::with("power-gauss", &[("q", 2.0), ("a", 1.0)]);
    for (mu, nu, g) in [
        (0.5, 1.0, pg21),
        (0.75, 1.25, gauss.clone()),
        (1.0, 1.75, sqrtx),
        (0.5, 1.0, bj01),
        // out of hypothesis on purpose: exercises the skip path
        (0.75, 2.0, gauss.clone()),
    ] {
        cases.push(SuiteCase::Moment { g, mu, nu });
    }

    let pg1r2 = FnRef::with("power-gauss", &[("q", 1.0), ("a", 2.0_f64.sqrt())]);
    let bj11 = FnRef::with("besselj", &[("mu", 1.0), ("z", 1.0)]);
    for (f, g) in [
        (gauss.clone(), gauss.clone()),
        (gauss.clone(), pg1r2),
        (gauss.clone(), bj11),
        // bounded member: exercises the skip path
        (FnRef::new("one"), gauss),
    ] {
        cases.push(SuiteCase::Glasser { f, g });
    }
    cases
}

/// Run one case, converting construction or domain errors into failure
/// rows so a suite never aborts.
fn run_case(case: &SuiteCase, cfg: &QuadConfig<f64>) -> (Vec<IdentityReport>, Vec<ParsevalReport>) {
    match case {
        SuiteCase::Identity { id } => match identities::evaluate_default_grid(id, cfg) {
            Ok(rows) => (rows, Vec::new()),
            Err(e) => {
                let mut row = IdentityReport {
                    id: id.clone(),
                    param_tuple: Vec::new(),
                    lhs_value: None,
                    rhs_value: None,
                    abs_err: None,
                    rel_err: None,
                    lhs_error_estimate: None,
                    pass: false,
                    failure: None,
                    notes: None,
                    wall_time: None,
                };
                row.failure = Some(e.to_string());
                (vec![row], Vec::new())
            }
        },
        SuiteCase::Theorem { f, g, nu } => {
            let rows = (|| Ok::<_, Error>(check_theorem(&f.build()?, &g.build()?, *nu, cfg)?))()
                .unwrap_or_else(|e| {
                    vec![ParsevalReport::shell("T1-1", &f.name, &g.name, *nu, 0.0).failed(&e)]
                });
            (Vec::new(), rows)
        }
        SuiteCase::CorollaryNu1 { f, g } => {
            let rows = (|| Ok::<_, Error>(check_corollary_nu1(&f.build()?, &g.build()?, cfg)))()
                .unwrap_or_else(|e| {
                    vec![ParsevalReport::shell("L2W-1", &f.name, &g.name, 1.0, 0.0).failed(&e)]
                });
            (Vec::new(), rows)
        }
        SuiteCase::Moment { g, mu, nu } => {
            let rows = (|| Ok::<_, Error>(check_moment_corollary(&g.build()?, *mu, *nu, cfg)?))()
                .unwrap_or_else(|e| {
                    let mut row =
                        ParsevalReport::shell("MOM-1", &g.name, &g.name, *nu, 0.0).failed(&e);
                    row.mu = Some(*mu);
                    vec![row]
                });
            (Vec::new(), rows)
        }
        SuiteCase::Glasser { f, g } => {
            let row = (|| Ok::<_, Error>(check_glasser_pg(&f.build()?, &g.build()?, cfg)))()
                .unwrap_or_else(|e| {
                    ParsevalReport::shell("GLASSER-PG", &f.name, &g.name, 0.5, 0.0).failed(&e)
                });
            (Vec::new(), vec![row])
        }
    }
}

/// Pass/fail accounting over a whole run. Skipped rows count in neither
/// column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_rel_gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_case: Option<String>,
    /// Seconds; omitted under the deterministic-output flag.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub identities: Vec<IdentityReport>,
    pub parseval: Vec<ParsevalReport>,
    pub summary: SuiteSummary,
}

impl SuiteReport {
    /// Assemble a report from already-evaluated rows, recomputing the
    /// summary counters. Skipped rows count in neither pass column.
    pub fn summarize(
        identities: Vec<IdentityReport>,
        parseval: Vec<ParsevalReport>,
        dt: f64,
    ) -> Self {
        let mut passed = 0;
        let mut failed = 0;
        let mut skipped = 0;
        let mut worst: Option<(f64, String)> = None;
        for r in &identities {
            if r.pass {
                passed += 1;
            } else {
                failed += 1;
            }
        }
        for r in &parseval {
            if r.skipped.is_some() {
                skipped += 1;
            } else if r.pass {
                passed += 1;
            } else {
                failed += 1;
            }
            if let Some(gap) = r.rel_gap {
                if worst.as_ref().is_none_or(|(w, _)| gap > *w) {
                    worst = Some((
                        gap,
                        format!("{} ({}, {})", r.relation, r.f_name, r.g_name),
                    ));
                }
            }
        }
        let (worst_rel_gap, worst_case) = match worst {
            Some((g, c)) => (Some(g), Some(c)),
            None => (None, None),
        };
        SuiteReport {
            summary: SuiteSummary {
                total: identities.len() + parseval.len(),
                passed,
                failed,
                skipped,
                worst_rel_gap,
                worst_case,
                wall_time: Some(dt),
            },
            identities,
            parseval,
        }
    }
}

/// Execute the selected cases concurrently and aggregate deterministically
/// (rows ordered by case position, then by each check's own row order).
/// An empty selection produces an empty report.
pub fn run_suite(cases: &[SuiteCase], cfg: &QuadConfig<f64>) -> SuiteReport {
    let t0 = Instant::now();
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(8)
        .min(cases.len().max(1));
    let next = AtomicUsize::new(0);
    let collected: Mutex<Vec<(usize, Vec<IdentityReport>, Vec<ParsevalReport>)>> =
        Mutex::new(Vec::new());

    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= cases.len() {
                    break;
                }
                let (ident, pars) = run_case(&cases[i], cfg);
                collected.lock().expect("suite lock").push((i, ident, pars));
            });
        }
    });

    let mut rows = collected.into_inner().expect("suite lock");
    rows.sort_by_key(|(i, _, _)| *i);
    let mut identities = Vec::new();
    let mut parseval = Vec::new();
    for (_, mut ident, mut pars) in rows {
        identities.append(&mut ident);
        parseval.append(&mut pars);
    }
    SuiteReport::summarize(identities, parseval, t0.elapsed().as_secs_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg() -> QuadConfig<f64> {
        QuadConfig::default()
    }

    #[test]
    fn same_function_nested_sides_are_bitwise_identical() {
        let g = gauss();
        let rows = check_theorem(&g, &g, 1.5, &cfg()).unwrap();
        assert_eq!(rows.len(), 3);
        for r in &rows {
            assert!(r.pass, "{}: gap {:?} failure {:?}", r.relation, r.rel_gap, r.failure);
        }
        assert_eq!(rows[2].relation, "T1-3");
        assert_eq!(rows[2].rel_gap, Some(0.0));
    }

    #[test]
    fn theorem_holds_for_the_smooth_pair_across_nu() {
        let f = gauss();
        let g = power_gauss(2.0, 2.0).unwrap();
        for nu in [0.75, 1.5] {
            for r in check_theorem(&f, &g, nu, &cfg()).unwrap() {
                assert!(r.skipped.is_none());
                assert!(
                    r.pass && r.rel_gap.unwrap() <= 1e-6,
                    "{} at nu={nu}: gap {:?} failure {:?}",
                    r.relation,
                    r.rel_gap,
                    r.failure
                );
            }
        }
    }

    #[test]
    fn oscillatory_pair_splits_closed_and_raw_pipelines() {
        let f = gauss();
        let g = besselj(0.0, 1.0).unwrap();
        let rows = check_theorem(&f, &g, 1.5, &cfg()).unwrap();
        for r in &rows {
            assert!(r.skipped.is_none());
            assert!(
                r.pass && r.rel_gap.unwrap() <= 1e-4,
                "{}: gap {:?} failure {:?}",
                r.relation,
                r.rel_gap,
                r.failure
            );
        }
    }

    #[test]
    fn out_of_hypothesis_pairs_are_skipped_not_failed() {
        let g = gauss();
        let rows = check_theorem(&g, &g, 2.5, &cfg()).unwrap();
        for r in &rows {
            assert!(r.skipped.as_deref().unwrap().contains("needs nu <"));
            assert!(!r.pass && r.failure.is_none() && r.rel_gap.is_none());
        }

        // bounded member: the nested side against it has a non-decaying tail
        let rows = check_corollary_nu1(&one(), &gauss(), &cfg());
        for r in &rows {
            assert!(r.skipped.as_deref().unwrap().contains("needs nu >"), "{r:?}");
        }
    }

    #[test]
    fn corollary_nu1_matches_theorem_at_nu_one() {
        let f = gauss();
        let g = power_gauss(2.0, 2.0).unwrap();
        let t = check_theorem(&f, &g, 1.0, &cfg()).unwrap();
        let c = check_corollary_nu1(&f, &g, &cfg());
        for (a, b) in t.iter().zip(&c) {
            assert!(a.pass && b.pass, "{} vs {}: {:?} {:?}", a.relation, b.relation, a, b);
            let va = a.side_a.unwrap().value;
            let vb = b.side_a.unwrap().value;
            assert!(rel_gap(va, vb) <= 1e-7, "{va} vs {vb}");
        }
    }

    #[test]
    fn moment_identities_match_the_closed_value_at_the_pinned_tuple() {
        // mu = 1/2, nu = 1, g = u^2 exp(-u^2): all three moment integrals
        // equal pi^(3/2)/8 under the corrected input weight.
        let g = power_gauss(2.0, 1.0).unwrap();
        let rows = check_moment_corollary(&g, 0.5, 1.0, &cfg()).unwrap();
        let expect = PI.powf(1.5) / 8.0;
        for r in &rows {
            assert!(r.pass, "{}: {:?}", r.relation, r);
            for side in [r.side_a.unwrap().value, r.side_b.unwrap().value] {
                assert!(
                    ((side - expect) / expect).abs() <= 1e-6,
                    "{}: side {side} vs {expect}",
                    r.relation
                );
            }
        }
    }

    #[test]
    fn moment_strip_violation_is_a_hard_error() {
        let g = gauss();
        assert!(matches!(
            check_moment_corollary(&g, 1.5, 1.0, &cfg()),
            Err(Error::StripViolation(_))
        ));
        assert!(matches!(
            check_moment_corollary(&g, 1.0, 1.0, &cfg()),
            Err(Error::StripViolation(_))
        ));
    }

    #[test]
    fn moment_out_of_hypothesis_tuple_is_skipped() {
        let g = gauss();
        let rows = check_moment_corollary(&g, 0.75, 2.0, &cfg()).unwrap();
        for r in &rows {
            assert!(r.skipped.is_some(), "{r:?}");
            assert!(r.mu == Some(0.75));
        }
    }

    #[test]
    fn glasser_exchange_matches_its_external_anchor() {
        // int exp(-x^2) G{x exp(-2 x^2)} dx, both orders = 0.31161262007012
        let f = gauss();
        let g = power_gauss(1.0, 2.0_f64.sqrt()).unwrap();
        let r = check_glasser_pg(&f, &g, &cfg());
        assert!(r.pass, "{r:?}");
        let anchor = 0.31161262007012;
        for side in [r.side_a.unwrap().value, r.side_b.unwrap().value] {
            assert!(((side - anchor) / anchor).abs() <= 1e-9, "side {side}");
        }
    }

    #[test]
    fn glasser_same_function_and_skip_paths() {
        let f = gauss();
        let r = check_glasser_pg(&f, &f, &cfg());
        assert!(r.pass && r.rel_gap == Some(0.0));

        let r = check_glasser_pg(&one(), &gauss(), &cfg());
        assert!(r.skipped.as_deref().unwrap().contains("no tail decay"));

        let r = check_glasser_pg(&gauss(), &cos_over_x(1.0).unwrap(), &cfg());
        assert!(r.skipped.as_deref().unwrap().contains("origin"));
    }

    #[test]
    fn empty_selection_gives_an_empty_report() {
        let report = run_suite(&[], &cfg());
        assert!(report.identities.is_empty() && report.parseval.is_empty());
        assert_eq!(report.summary.total, 0);
        assert_eq!(report.summary.passed, 0);
        assert!(report.summary.worst_rel_gap.is_none());
    }

    #[test]
    fn suite_rows_follow_case_order_and_collect_failures() {
        let cases = vec![
            SuiteCase::Glasser { f: FnRef::new("gauss"), g: FnRef::new("gauss") },
            SuiteCase::Moment { g: FnRef::new("gauss"), mu: 1.5, nu: 1.0 },
            SuiteCase::Theorem {
                f: FnRef::new("nonexistent"),
                g: FnRef::new("gauss"),
                nu: 1.0,
            },
        ];
        let report = run_suite(&cases, &cfg());
        assert_eq!(report.parseval.len(), 3);
        assert_eq!(report.parseval[0].relation, "GLASSER-PG");
        assert!(report.parseval[0].pass);
        // strip violation surfaces as a failure row, not a panic
        assert!(report.parseval[1].failure.as_deref().unwrap().contains("0 < mu < nu"));
        assert!(report.parseval[2].failure.as_deref().unwrap().contains("unknown catalog"));
        assert_eq!(report.summary.failed, 2);
        assert_eq!(report.summary.passed, 1);
    }

    #[test]
    fn default_suite_covers_every_relation_and_enough_pairs() {
        let cases = default_suite();
        let pair_cases = cases
            .iter()
            .filter(|c| !matches!(c, SuiteCase::Identity { .. }))
            .count();
        assert!(pair_cases >= 12, "only {pair_cases} exchange cases");
        let identity_cases = cases.len() - pair_cases;
        assert_eq!(identity_cases, identities::catalog().len());
    }
}
