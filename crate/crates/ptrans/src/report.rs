//! Report documents: a schema-versioned JSON envelope around identity and
//! exchange-relation rows, frozen CSV column sets, and aligned text tables.
//!
//! The JSON field names and CSV headers here are external interfaces; they
//! only change together with [`SCHEMA_VERSION`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::IdentityReport;
use crate::parseval::{ParsevalReport, SuiteReport, SuiteSummary};
use crate::quad::QuadResult;

/// Version written into every document and required back when parsing.
pub const SCHEMA_VERSION: u32 = 1;

/// Envelope for identity and exchange-relation runs.
///
/// `timestamp` and the `wall_time` fields inside rows and summary are the
/// only run-to-run volatile content; [`RunReport::strip_volatile`] removes
/// all of them at once, after which identical inputs serialize to identical
/// bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    /// Producing tool, as "name version".
    pub generator: String,
    /// UTC wall-clock time of the run; omitted for reproducible output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    pub identities: Vec<IdentityReport>,
    pub parseval: Vec<ParsevalReport>,
    pub summary: SuiteSummary,
}

impl RunReport {
    pub fn new(
        suite: SuiteReport,
        generator: impl Into<String>,
        timestamp: Option<String>,
    ) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            generator: generator.into(),
            timestamp,
            identities: suite.identities,
            parseval: suite.parseval,
            summary: suite.summary,
        }
    }

    /// Drop the timestamp and every wall-time measurement, keeping only
    /// content that is a pure function of the inputs and configuration.
    pub fn strip_volatile(&mut self) {
        self.timestamp = None;
        for r in &mut self.identities {
            r.wall_time = None;
        }
        self.summary.wall_time = None;
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is total");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: RunReport = serde_json::from_str(s)
            .map_err(|e| Error::Usage(format!("report parse: {e}")))?;
        if r.schema_version != SCHEMA_VERSION {
            return Err(Error::Usage(format!(
                "unsupported report schema_version {} (this build reads {})",
                r.schema_version, SCHEMA_VERSION
            )));
        }
        Ok(r)
    }
}

/// One evaluation point of a single transform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformPoint {
    pub y: f64,
    pub value: f64,
    pub error_estimate: f64,
    pub evals: u64,
    pub converged: bool,
    pub strategy: String,
}

impl TransformPoint {
    pub fn new(y: f64, r: &QuadResult<f64>) -> Self {
        TransformPoint {
            y,
            value: r.value,
            error_estimate: r.error_estimate,
            evals: r.evals,
            converged: r.converged,
            strategy: r.strategy.to_string(),
        }
    }
}

/// Envelope for a `transform` evaluation over a list of points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformReport {
    pub schema_version: u32,
    pub generator: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    /// Transform id as accepted on the command line.
    pub transform: String,
    /// Catalog instance name, parameters included.
    pub function: String,
    /// Transform order where the transform has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<f64>,
    pub points: Vec<TransformPoint>,
}

impl TransformReport {
    pub fn strip_volatile(&mut self) {
        self.timestamp = None;
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is total");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: TransformReport = serde_json::from_str(s)
            .map_err(|e| Error::Usage(format!("report parse: {e}")))?;
        if r.schema_version != SCHEMA_VERSION {
            return Err(Error::Usage(format!(
                "unsupported report schema_version {} (this build reads {})",
                r.schema_version, SCHEMA_VERSION
            )));
        }
        Ok(r)
    }
}

/// CSV columns for identity rows, in order.
pub const IDENTITY_CSV_HEADER: &[&str] = &[
    "id",
    "params",
    "lhs_value",
    "rhs_value",
    "abs_err",
    "rel_err",
    "lhs_error_estimate",
    "pass",
    "failure",
    "notes",
    "wall_time",
];

/// CSV columns for exchange-relation rows, in order.
pub const PARSEVAL_CSV_HEADER: &[&str] = &[
    "relation",
    "f",
    "g",
    "nu",
    "mu",
    "side_a",
    "side_b",
    "side_a_error",
    "side_b_error",
    "rel_gap",
    "tol_rel",
    "pass",
    "skipped",
    "failure",
];

/// CSV columns for transform points, in order.
pub const TRANSFORM_CSV_HEADER: &[&str] =
    &["y", "value", "error_estimate", "evals", "converged", "strategy"];

fn opt_num(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn opt_text(v: &Option<String>) -> String {
    v.clone().unwrap_or_default()
}

/// "mu=0; z=1" with integer values printed bare. Semicolons keep the cell a
/// single CSV field without quoting.
pub fn fmt_params(pairs: &[(String, f64)]) -> String {
    pairs
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Values in [`IDENTITY_CSV_HEADER`] order. Numbers use the shortest
/// round-trip decimal form; absent fields are empty cells.
pub fn identity_csv_row(r: &IdentityReport) -> Vec<String> {
    vec![
        r.id.clone(),
        fmt_params(&r.param_tuple),
        opt_num(r.lhs_value),
        opt_num(r.rhs_value),
        opt_num(r.abs_err),
        opt_num(r.rel_err),
        opt_num(r.lhs_error_estimate),
        r.pass.to_string(),
        opt_text(&r.failure),
        opt_text(&r.notes),
        opt_num(r.wall_time),
    ]
}

/// Values in [`PARSEVAL_CSV_HEADER`] order.
pub fn parseval_csv_row(r: &ParsevalReport) -> Vec<String> {
    vec![
        r.relation.clone(),
        r.f_name.clone(),
        r.g_name.clone(),
        r.nu.to_string(),
        opt_num(r.mu),
        opt_num(r.side_a.map(|s| s.value)),
        opt_num(r.side_b.map(|s| s.value)),
        opt_num(r.side_a.map(|s| s.error_estimate)),
        opt_num(r.side_b.map(|s| s.error_estimate)),
        opt_num(r.rel_gap),
        r.tol_rel.to_string(),
        r.pass.to_string(),
        opt_text(&r.skipped),
        opt_text(&r.failure),
    ]
}

/// Values in [`TRANSFORM_CSV_HEADER`] order.
pub fn transform_csv_row(p: &TransformPoint) -> Vec<String> {
    vec![
        p.y.to_string(),
        p.value.to_string(),
        p.error_estimate.to_string(),
        p.evals.to_string(),
        p.converged.to_string(),
        p.strategy.clone(),
    ]
}

/// Left-aligned monospace table, two spaces between columns, no trailing
/// padding on the last column.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let cols = headers.len();
    let mut width = vec![0usize; cols];
    for (i, h) in headers.iter().enumerate() {
        width[i] = h.chars().count();
    }
    for row in rows {
        for (i, cell) in row.iter().enumerate().take(cols) {
            width[i] = width[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut emit = |cells: Vec<String>| {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i + 1 == cols {
                line.push_str(cell);
            } else {
                line.push_str(&format!("{cell:<w$}  ", w = width[i]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    };
    emit(headers.iter().map(|h| h.to_string()).collect());
    for row in rows {
        emit(row.clone());
    }
    out
}

fn fmt_value(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.9e}")).unwrap_or_else(|| "-".into())
}

fn fmt_gap(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.1e}")).unwrap_or_else(|| "-".into())
}

/// Human-readable table of identity rows: values at 10 significant digits,
/// failures folded into the status column.
pub fn identity_table(rows: &[IdentityReport]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let status = match (&r.failure, r.pass) {
                (Some(f), _) => format!("FAIL: {f}"),
                (None, true) => "pass".into(),
                (None, false) => "FAIL".into(),
            };
            vec![
                r.id.clone(),
                fmt_params(&r.param_tuple),
                fmt_value(r.lhs_value),
                fmt_value(r.rhs_value),
                fmt_gap(r.rel_err),
                status,
            ]
        })
        .collect();
    render_table(
        &["id", "params", "lhs_value", "rhs_value", "rel_err", "status"],
        &body,
    )
}

/// Human-readable table of exchange-relation rows.
pub fn parseval_table(rows: &[ParsevalReport]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let status = if let Some(reason) = &r.skipped {
                format!("skip: {reason}")
            } else if let Some(f) = &r.failure {
                format!("FAIL: {f}")
            } else if r.pass {
                "pass".into()
            } else {
                "FAIL".into()
            };
            vec![
                r.relation.clone(),
                r.f_name.clone(),
                r.g_name.clone(),
                r.nu.to_string(),
                r.mu.map(|m| m.to_string()).unwrap_or_else(|| "-".into()),
                fmt_value(r.side_a.map(|s| s.value)),
                fmt_value(r.side_b.map(|s| s.value)),
                fmt_gap(r.rel_gap),
                format!("{:.0e}", r.tol_rel),
                status,
            ]
        })
        .collect();
    render_table(
        &["relation", "f", "g", "nu", "mu", "side_a", "side_b", "rel_gap", "tol", "status"],
        &body,
    )
}

/// Human-readable table of transform points.
pub fn transform_table(points: &[TransformPoint]) -> String {
    let body: Vec<Vec<String>> = points
        .iter()
        .map(|p| {
            vec![
                p.y.to_string(),
                format!("{:.9e}", p.value),
                format!("{:.1e}", p.error_estimate),
                p.evals.to_string(),
                if p.converged { "yes".into() } else { "NO".into() },
                p.strategy.clone(),
            ]
        })
        .collect();
    render_table(
        &["y", "value", "error_estimate", "evals", "converged", "strategy"],
        &body,
    )
}

/// One-line run outcome: counts, worst relative gap, wall time when kept.
pub fn summary_line(s: &SuiteSummary) -> String {
    let mut line = format!(
        "total {}: {} passed, {} failed, {} skipped",
        s.total, s.passed, s.failed, s.skipped
    );
    if let (Some(gap), Some(case)) = (s.worst_rel_gap, &s.worst_case) {
        line.push_str(&format!("; worst rel_gap {gap:.1e} at {case}"));
    }
    if let Some(dt) = s.wall_time {
        line.push_str(&format!("; wall {dt:.1}s"));
    }
    line
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::Strategy;

    fn sample_identity_row() -> IdentityReport {
        IdentityReport {
            id: "L2-KERNEL".into(),
            param_tuple: vec![("nu".into(), 0.75), ("y".into(), 1.0)],
            lhs_value: Some(0.5),
            rhs_value: Some(0.5000000001),
            abs_err: Some(1e-10),
            rel_err: Some(2e-10),
            lhs_error_estimate: Some(3e-12),
            pass: true,
            failure: None,
            notes: Some("printed and corrected variants both stored".into()),
            wall_time: Some(0.031),
        }
    }

    fn sample_parseval_row() -> ParsevalReport {
        ParsevalReport {
            relation: "T1-1".into(),
            f_name: "gauss".into(),
            g_name: "power-gauss(q=2,a=2)".into(),
            nu: 1.5,
            mu: None,
            side_a: Some(QuadResult {
                value: 0.123,
                error_estimate: 1e-11,
                evals: 777,
                converged: true,
                strategy: Strategy::SemiInfiniteTransformed,
            }),
            side_b: Some(QuadResult {
                value: 0.1230000002,
                error_estimate: 4e-11,
                evals: 991,
                converged: true,
                strategy: Strategy::DecayingTruncated,
            }),
            rel_gap: Some(1.6e-9),
            tol_rel: 1e-6,
            pass: true,
            skipped: None,
            failure: None,
        }
    }

    fn sample_report() -> RunReport {
        let suite = SuiteReport::summarize(
            vec![sample_identity_row()],
            vec![sample_parseval_row()],
            0.25,
        );
        RunReport::new(suite, "ptrans 0.1.0", Some("2026-02-16T12:00:00Z".into()))
    }

    #[test]
    fn json_round_trip_preserves_every_field() {
        let r = sample_report();
        let back = RunReport::from_json(&r.to_json()).unwrap();
        assert_eq!(r, back);
    }

    #[test]
    fn schema_version_mismatch_is_rejected() {
        let doc = sample_report().to_json().replace(
            "\"schema_version\": 1",
            "\"schema_version\": 99",
        );
        let err = RunReport::from_json(&doc).unwrap_err().to_string();
        assert!(err.contains("schema_version 99"), "{err}");
    }

    #[test]
    fn strip_volatile_clears_timestamp_and_wall_times() {
        let mut r = sample_report();
        r.strip_volatile();
        assert!(r.timestamp.is_none());
        assert!(r.identities.iter().all(|i| i.wall_time.is_none()));
        assert!(r.summary.wall_time.is_none());
        let again = RunReport::from_json(&r.to_json()).unwrap();
        assert_eq!(r, again);
        assert!(!r.to_json().contains("wall_time"));
    }

    #[test]
    fn csv_rows_match_their_headers() {
        assert_eq!(identity_csv_row(&sample_identity_row()).len(), IDENTITY_CSV_HEADER.len());
        assert_eq!(parseval_csv_row(&sample_parseval_row()).len(), PARSEVAL_CSV_HEADER.len());
        let p = TransformPoint::new(
            2.0,
            &QuadResult {
                value: 0.125,
                error_estimate: 1e-12,
                evals: 63,
                converged: true,
                strategy: Strategy::DecayingTruncated,
            },
        );
        assert_eq!(transform_csv_row(&p).len(), TRANSFORM_CSV_HEADER.len());
        assert_eq!(transform_csv_row(&p)[1], "0.125");
    }

    #[test]
    fn params_format_is_compact_and_integer_bare() {
        assert_eq!(
            fmt_params(&[("mu".into(), 0.0), ("z".into(), 1.5)]),
            "mu=0; z=1.5"
        );
    }

    #[test]
    fn tables_align_every_row() {
        let table = parseval_table(&[sample_parseval_row()]);
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 2);
        let col = lines[0].find("status").unwrap();
        assert_eq!(&lines[1][col..col + 4], "pass");
    }

    #[test]
    fn transform_round_trip_and_strip() {
        let mut t = TransformReport {
            schema_version: SCHEMA_VERSION,
            generator: "ptrans 0.1.0".into(),
            timestamp: Some("2026-02-16T12:00:00Z".into()),
            transform: "l2".into(),
            function: "one".into(),
            order: None,
            points: vec![TransformPoint::new(
                2.0,
                &QuadResult {
                    value: 0.125,
                    error_estimate: 1e-12,
                    evals: 63,
                    converged: true,
                    strategy: Strategy::DecayingTruncated,
                },
            )],
        };
        let back = TransformReport::from_json(&t.to_json()).unwrap();
        assert_eq!(t, back);
        t.strip_volatile();
        assert!(!t.to_json().contains("timestamp"));
    }
}
