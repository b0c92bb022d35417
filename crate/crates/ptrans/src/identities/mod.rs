//! Catalog of closed-form transform identities.
//!
//! Each entry binds a numerical left-hand pipeline (one or more transforms,
//! possibly nested) to a right-hand side, either a closed form over the
//! special-function layer or an independent pipeline. Entries carry their
//! validity strip, a default in-strip parameter grid, free-text notes, and,
//! where the source text printed a formula that the numerics contradict,
//! the printed variant as an evaluable alternate with the recorded verdict.
//!
//! The catalog layer is pinned to `f64`: the comparisons it makes live at
//! relative levels 1e-4 .. 1e-7 where single precision has no headroom.

mod catalog;
mod verdict;

pub use verdict::{verify_ci2_weight, verify_ci_exponent, CandidateOutcome, ExponentVerdict};

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{QuadConfig, QuadResult};

/// Named real parameters of one identity evaluation, ordered so every
/// serialization of the same tuple is byte-identical.
pub type Params = BTreeMap<String, f64>;

/// Build a parameter map from name/value pairs.
pub fn params_from(pairs: &[(&str, f64)]) -> Params {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

pub(crate) fn param(p: &Params, key: &str) -> Result<f64> {
    p.get(key)
        .copied()
        .ok_or_else(|| Error::Usage(format!("missing parameter '{key}'")))
}

/// Tolerance class of an identity, set by how its LHS is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TolClass {
    /// Absolutely convergent single quadrature against a closed form.
    Smooth,
    /// Conditionally convergent oscillatory quadrature (accelerated tails).
    Oscillatory,
    /// Nested double-transform pipelines on both sides.
    Nested,
}

impl TolClass {
    /// Default relative tolerance of the class.
    pub fn rel_tol(self) -> f64 {
        match self {
            TolClass::Smooth => 1e-6,
            TolClass::Oscillatory => 1e-4,
            TolClass::Nested => 1e-5,
        }
    }
}

type LhsFn = Box<dyn Fn(&Params, &QuadConfig<f64>) -> Result<QuadResult<f64>> + Send + Sync>;
type ClosedFn = Box<dyn Fn(&Params) -> Result<f64> + Send + Sync>;
type StripFn = Box<dyn Fn(&Params) -> Option<String> + Send + Sync>;

/// Right-hand side of an identity.
pub enum Rhs {
    /// Special-function closed form; exact up to specfun accuracy.
    Closed { formula: &'static str, eval: ClosedFn },
    /// Independent transform pipeline (used when no closed form exists).
    Pipeline { formula: &'static str, eval: LhsFn },
}

impl Rhs {
    pub fn formula(&self) -> &'static str {
        match self {
            Rhs::Closed { formula, .. } | Rhs::Pipeline { formula, .. } => formula,
        }
    }

    /// Evaluate to (value, error_estimate_if_numerical).
    pub fn eval(&self, p: &Params, cfg: &QuadConfig<f64>) -> Result<(f64, Option<f64>)> {
        match self {
            Rhs::Closed { eval, .. } => Ok((eval(p)?, None)),
            Rhs::Pipeline { eval, .. } => {
                let r = eval(p, cfg)?;
                Ok((r.value, Some(r.error_estimate)))
            }
        }
    }
}

/// A variant form that the source text prints but the numerics reject (or
/// a competing reading of an ambiguous formula), kept evaluable so the
/// disagreement stays machine-checkable instead of editorial.
pub struct Alternate {
    pub label: &'static str,
    pub formula: &'static str,
    /// What the brute-force comparison concluded about this variant.
    pub verdict: &'static str,
    pub eval: AlternateEval,
}

pub enum AlternateEval {
    Closed(ClosedFn),
    Pipeline(LhsFn),
}

impl Alternate {
    pub fn eval(&self, p: &Params, cfg: &QuadConfig<f64>) -> Result<f64> {
        match &self.eval {
            AlternateEval::Closed(f) => f(p),
            AlternateEval::Pipeline(f) => Ok(f(p, cfg)?.value),
        }
    }
}

/// One identity: a numerical LHS pipeline bound to an RHS with a validity
/// strip, default grid and notes.
pub struct IdentityCase {
    pub id: &'static str,
    /// Opaque label keying this entry to the equation it mechanizes in the
    /// source text; exported as `paper_eq`.
    pub equation_tag: &'static str,
    /// Human-readable statement of the identity, LHS = RHS.
    pub statement: String,
    /// Parameter names in the order grids list them.
    pub param_names: &'static [&'static str],
    /// Validity strip as printable inequalities.
    pub strip: &'static str,
    strip_check: StripFn,
    pub default_grid: Vec<Params>,
    pub tol_class: TolClass,
    pub notes: &'static str,
    pub(crate) lhs: LhsFn,
    /// What the LHS pipeline computes, printable.
    pub lhs_formula: &'static str,
    pub rhs: Rhs,
    pub alternates: Vec<Alternate>,
}

impl IdentityCase {
    /// Check the validity strip, returning the violated inequality.
    pub fn check_strip(&self, p: &Params) -> Result<()> {
        for name in self.param_names {
            if !p.contains_key(*name) {
                return Err(Error::Usage(format!(
                    "{}: missing parameter '{name}' (expects {})",
                    self.id,
                    self.param_names.join(", ")
                )));
            }
        }
        match (self.strip_check)(p) {
            None => Ok(()),
            Some(v) => Err(Error::StripViolation(format!(
                "{}: {v} (strip: {})",
                self.id, self.strip
            ))),
        }
    }

    pub fn lhs_result(&self, p: &Params, cfg: &QuadConfig<f64>) -> Result<QuadResult<f64>> {
        (self.lhs)(p, cfg)
    }
}

/// Report of one identity evaluation at one parameter tuple.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct IdentityReport {
    pub id: String,
    pub param_tuple: Vec<(String, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_err: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_err: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_error_estimate: Option<f64>,
    pub pass: bool,
    /// Populated when a side failed to evaluate (quadrature or special
    /// function error); `pass` is false in that case.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    /// Catalog notes for the entry, when any: printed-variant verdicts,
    /// conditional-convergence caveats. Same text on every tuple of an id.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    /// Seconds; omitted under the deterministic-output flag.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

/// The full immutable identity catalog.
pub fn catalog() -> &'static [IdentityCase] {
    static CATALOG: OnceLock<Vec<IdentityCase>> = OnceLock::new();
    CATALOG.get_or_init(catalog::build)
}

/// Look up one entry by id.
pub fn lookup(id: &str) -> Option<&'static IdentityCase> {
    catalog().iter().find(|c| c.id == id)
}

/// Evaluate one identity at one parameter tuple.
///
/// Unknown ids and out-of-strip parameters are hard errors; evaluation
/// failures inside either side produce a `pass = false` report carrying the
/// reason, so grid runs can keep going.
pub fn evaluate_identity(
    id: &str,
    params: &Params,
    cfg: &QuadConfig<f64>,
    tol_abs: f64,
    tol_rel: f64,
) -> Result<IdentityReport> {
    let case = lookup(id).ok_or_else(|| {
        Error::Usage(format!(
            "unknown identity '{id}'; known ids: {}",
            catalog().iter().map(|c| c.id).collect::<Vec<_>>().join(", ")
        ))
    })?;
    case.check_strip(params)?;

    let start = Instant::now();
    let param_tuple: Vec<(String, f64)> = params.iter().map(|(k, &v)| (k.clone(), v)).collect();
    let mut report = IdentityReport {
        id: case.id.to_string(),
        param_tuple,
        lhs_value: None,
        rhs_value: None,
        abs_err: None,
        rel_err: None,
        lhs_error_estimate: None,
        pass: false,
        failure: None,
        notes: (!case.notes.is_empty()).then(|| case.notes.to_string()),
        wall_time: None,
    };

    let lhs = match (case.lhs)(params, cfg) {
        Ok(r) => r,
        Err(e) => {
            report.failure = Some(format!("lhs: {e}"));
            report.wall_time = Some(start.elapsed().as_secs_f64());
            return Ok(report);
        }
    };
    report.lhs_value = Some(lhs.value);
    report.lhs_error_estimate = Some(lhs.error_estimate);

    let (rhs_value, rhs_err) = match case.rhs.eval(params, cfg) {
        Ok(v) => v,
        Err(e) => {
            report.failure = Some(format!("rhs: {e}"));
            report.wall_time = Some(start.elapsed().as_secs_f64());
            return Ok(report);
        }
    };
    report.rhs_value = Some(rhs_value);

    let abs_err = (lhs.value - rhs_value).abs();
    report.abs_err = Some(abs_err);
    report.rel_err = Some(if rhs_value != 0.0 {
        abs_err / rhs_value.abs()
    } else {
        abs_err
    });
    let tol = tol_abs.max(tol_rel * rhs_value.abs());
    report.pass = abs_err <= tol;
    // The check is only meaningful if the numerics are an order sharper than
    // the decision threshold. The quadratures' own convergence flags answer a
    // stricter question (their internal targets); what gates the verdict here
    // is the achieved error estimate against this identity's tolerance.
    let uncertainty = lhs.error_estimate + rhs_err.unwrap_or(0.0);
    if !(uncertainty <= 0.1 * tol) {
        report.pass = false;
        report.failure = Some(format!(
            "quadrature uncertainty {uncertainty:.3e} cannot adjudicate at tolerance {tol:.3e}"
        ));
    }
    report.wall_time = Some(start.elapsed().as_secs_f64());
    Ok(report)
}

/// Evaluate an entry over its default grid at its class tolerance.
pub fn evaluate_default_grid(id: &str, cfg: &QuadConfig<f64>) -> Result<Vec<IdentityReport>> {
    let case = lookup(id)
        .ok_or_else(|| Error::Usage(format!("unknown identity '{id}'")))?;
    let tol_rel = case.tol_class.rel_tol();
    case.default_grid
        .iter()
        .map(|p| evaluate_identity(id, p, cfg, 0.0, tol_rel))
        .collect()
}

/// JSON-exportable view of the catalog (stable field names).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogExportEntry {
    pub id: String,
    #[serde(rename = "paper_eq")]
    pub equation_tag: String,
    pub statement: String,
    pub strip: String,
    pub params: Vec<String>,
    pub grid: Vec<Vec<(String, f64)>>,
    pub tol_class: TolClass,
    pub tol_rel: f64,
    pub notes: String,
    pub alternates: Vec<CatalogExportAlternate>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogExportAlternate {
    pub label: String,
    pub formula: String,
    pub verdict: String,
}

/// The catalog as serializable records.
pub fn catalog_export() -> Vec<CatalogExportEntry> {
    catalog()
        .iter()
        .map(|c| CatalogExportEntry {
            id: c.id.to_string(),
            equation_tag: c.equation_tag.to_string(),
            statement: c.statement.clone(),
            strip: c.strip.to_string(),
            params: c.param_names.iter().map(|s| s.to_string()).collect(),
            grid: c
                .default_grid
                .iter()
                .map(|p| p.iter().map(|(k, &v)| (k.clone(), v)).collect())
                .collect(),
            tol_class: c.tol_class,
            tol_rel: c.tol_class.rel_tol(),
            notes: c.notes.to_string(),
            alternates: c
                .alternates
                .iter()
                .map(|a| CatalogExportAlternate {
                    label: a.label.to_string(),
                    formula: a.formula.to_string(),
                    verdict: a.verdict.to_string(),
                })
                .collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_complete_and_well_formed() {
        let cat = catalog();
        assert_eq!(cat.len(), 25);
        let mut ids: Vec<&str> = cat.iter().map(|c| c.id).collect();
        let n = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), n, "duplicate ids");
        for c in cat {
            assert!(!c.default_grid.is_empty(), "{} has an empty grid", c.id);
            for p in &c.default_grid {
                assert!(
                    c.check_strip(p).is_ok(),
                    "{}: default grid tuple {p:?} violates its own strip",
                    c.id
                );
            }
        }
    }

    #[test]
    fn unknown_id_is_usage_error() {
        let p = params_from(&[("y", 1.0)]);
        assert!(matches!(
            evaluate_identity("NO-SUCH-ID", &p, &QuadConfig::default(), 0.0, 1e-6),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn strip_violation_is_hard_error() {
        // second-kind kernel order must stay below the strip edge
        let p = params_from(&[("mu", 2.0), ("nu", 1.0), ("z", 1.0), ("y", 1.0)]);
        assert!(matches!(
            evaluate_identity("PNU2-BESSELJ", &p, &QuadConfig::default(), 0.0, 1e-6),
            Err(Error::StripViolation(_))
        ));
    }

    #[test]
    fn export_round_trips_through_json() {
        let entries = catalog_export();
        let text = serde_json::to_string_pretty(&entries).unwrap();
        assert!(text.contains("\"paper_eq\""));
        let back: Vec<CatalogExportEntry> = serde_json::from_str(&text).unwrap();
        assert_eq!(back.len(), entries.len());
        assert_eq!(back[0].id, entries[0].id);
        assert_eq!(back[0].grid, entries[0].grid);
    }
}
