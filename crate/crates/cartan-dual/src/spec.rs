//! Structure files: a versioned JSON format declaring the chart, metric,
//! coframe, connection, orientation, sample points and requested checks.
//! Loading validates everything it can up front and reports *every*
//! violation with a JSON-pointer-style path, not just the first.

use crate::connection::{contorsion_from_torsion, levi_civita_connection, ConnectionField};
use crate::curvature::RicciConvention;
use crate::duality::DualPair;
use crate::structure::{CoFrameField, MetricField};
use crate::symexpr::{parse_expr, Chart, Expr, Point, SymError};
use crate::tensor::{e2, e3, E2, E3};
use serde::Deserialize;
use std::collections::BTreeMap;
use thiserror::Error;

pub const SPEC_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("JSON syntax error: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{}", format_violations(.0))]
    Validation(Vec<Violation>),
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

fn format_violations(violations: &[Violation]) -> String {
    let mut s = format!("{} validation error(s):", violations.len());
    for v in violations {
        s.push_str(&format!("\n  {}: {}", v.path, v.message));
    }
    s
}

/// Declared tolerances; the pass threshold may be overridden per run.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub pass_override: Option<f64>,
    pub fail: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            pass_override: None,
            fail: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Conventions {
    pub ricci: RicciConvention,
    pub dual_pair: DualPair,
}

/// A fully validated structure, ready for the check catalogue.
pub struct Structure {
    pub name: String,
    pub chart: Chart,
    pub metric: MetricField,
    pub coframe: CoFrameField,
    pub connection: ConnectionField,
    pub orientation_sign: i8,
    pub sample_points: Vec<Point>,
    pub checks: Vec<crate::checks::CheckName>,
    pub conventions: Conventions,
    pub tolerances: Tolerances,
    pub candidate: Option<Candidate>,
}

pub struct Candidate {
    pub metric: MetricField,
    pub connection: ConnectionField,
}

// ---------------------------------------------------------------------
// Raw JSON shape
// ---------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    spec_version: u32,
    name: String,
    chart: RawChart,
    metric: BTreeMap<String, String>,
    #[serde(default)]
    coframe: Option<RawCoframe>,
    connection: RawConnection,
    #[serde(default = "default_orientation")]
    orientation: i8,
    sample_points: Vec<Vec<f64>>,
    #[serde(default)]
    tolerances: Option<RawTolerances>,
    #[serde(default)]
    checks: Option<serde_json::Value>,
    #[serde(default)]
    conventions: Option<RawConventions>,
    #[serde(default)]
    candidate: Option<RawCandidate>,
}

fn default_orientation() -> i8 {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChart {
    coords: Vec<String>,
    #[serde(default)]
    params: BTreeMap<String, f64>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum RawCoframe {
    Coordinate,
    Explicit { rows: Vec<Vec<String>> },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum RawConnection {
    LeviCivita,
    Explicit { entries: Vec<Vec<Vec<String>>> },
    LcPlusContorsion { contorsion: Vec<Vec<Vec<String>>> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTolerances {
    #[serde(default)]
    pass: Option<f64>,
    #[serde(default)]
    fail: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConventions {
    #[serde(default)]
    ricci: Option<String>,
    #[serde(default)]
    dual_pair: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCandidate {
    metric: BTreeMap<String, String>,
    connection: RawConnection,
}

// ---------------------------------------------------------------------
// Loading and validation
// ---------------------------------------------------------------------

pub fn load_spec(path: &std::path::Path) -> Result<Structure, SpecError> {
    let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_spec(&text)
}

pub fn parse_spec(text: &str) -> Result<Structure, SpecError> {
    let raw: RawSpec = serde_json::from_str(text)?;
    let mut v = Validator::default();

    if raw.spec_version != SPEC_VERSION {
        v.push(
            "/spec_version",
            format!("unsupported version {} (expected {SPEC_VERSION})", raw.spec_version),
        );
    }

    // Chart.
    let chart = v.chart(&raw.chart);

    // Sample points (needed below for pointwise validation).
    let mut points = Vec::new();
    for (i, coords) in raw.sample_points.iter().enumerate() {
        let path = format!("/sample_points/{i}");
        if coords.len() != 4 {
            v.push(&path, format!("expected 4 coordinates, got {}", coords.len()));
            continue;
        }
        match Point::new([coords[0], coords[1], coords[2], coords[3]]) {
            Ok(p) => points.push(p),
            Err(e) => v.push(&path, e.to_string()),
        }
    }
    if raw.sample_points.is_empty() {
        v.push("/sample_points", "at least one sample point is required".into());
    }

    let (metric, coframe, connection, candidate, conventions) = match &chart {
        Some(chart) => {
            let metric = v.metric(&raw.metric, chart, "/metric");
            let coframe = v.coframe(raw.coframe.as_ref(), chart);
            let connection = match (&metric, &coframe) {
                (Some(g), Some(cf)) => v.connection(&raw.connection, chart, g, cf, "/connection"),
                _ => None,
            };
            let candidate = raw.candidate.as_ref().and_then(|c| {
                let g = v.metric(&c.metric, chart, "/candidate/metric")?;
                let cf = coframe.clone()?;
                let conn = v.connection(&c.connection, chart, &g, &cf, "/candidate/connection")?;
                Some(Candidate {
                    metric: g,
                    connection: conn,
                })
            });
            let conventions = v.conventions(raw.conventions.as_ref());
            (metric, coframe, connection, candidate, conventions)
        }
        None => (None, None, None, None, Conventions::default()),
    };

    // Pointwise checks: nondegenerate coframe, invertible (1,3) metric.
    if let (Some(chart), Some(g), Some(cf)) = (&chart, &metric, &coframe) {
        for (i, p) in points.iter().enumerate() {
            if let Err(e) = cf.check_at(p, chart) {
                v.push(&format!("/sample_points/{i}"), e.to_string());
                continue;
            }
            if let Err(e) = g.check_at(p, chart) {
                v.push(&format!("/sample_points/{i}"), e.to_string());
            }
        }
    }

    // Checks list.
    let checks = v.checks(raw.checks.as_ref());

    // Tolerances.
    let mut tolerances = Tolerances::default();
    if let Some(t) = &raw.tolerances {
        tolerances.pass_override = t.pass;
        if let Some(f) = t.fail {
            tolerances.fail = f;
        }
        if let (Some(p), f) = (t.pass, tolerances.fail) {
            if p >= f {
                v.push("/tolerances", format!("pass tolerance {p:e} must be below fail {f:e}"));
            }
        }
    }

    if raw.orientation != 1 && raw.orientation != -1 {
        v.push("/orientation", format!("must be 1 or -1, got {}", raw.orientation));
    }

    if !v.violations.is_empty() {
        return Err(SpecError::Validation(v.violations));
    }

    Ok(Structure {
        name: raw.name,
        chart: chart.unwrap(),
        metric: metric.unwrap(),
        coframe: coframe.unwrap(),
        connection: connection.unwrap(),
        orientation_sign: raw.orientation,
        sample_points: points,
        checks,
        conventions,
        tolerances,
        candidate,
    })
}

#[derive(Default)]
struct Validator {
    violations: Vec<Violation>,
}

impl Validator {
    fn push(&mut self, path: &str, message: String) {
        self.violations.push(Violation {
            path: path.to_string(),
            message,
        });
    }

    fn chart(&mut self, raw: &RawChart) -> Option<Chart> {
        if raw.coords.len() != 4 {
            self.push(
                "/chart/coords",
                format!("expected 4 coordinate names, got {}", raw.coords.len()),
            );
            return None;
        }
        let coords: [String; 4] = std::array::from_fn(|i| raw.coords[i].clone());
        let params: Vec<(String, f64)> =
            raw.params.iter().map(|(k, v)| (k.clone(), *v)).collect();
        match Chart::new(coords, params) {
            Ok(c) => Some(c),
            Err(e) => {
                self.push("/chart", e.to_string());
                None
            }
        }
    }

    fn expr(&mut self, text: &str, chart: &Chart, path: &str) -> Option<Expr> {
        match parse_expr(text, chart) {
            Ok(e) => Some(e),
            Err(SymError::Syntax { offset, expected }) => {
                self.push(path, format!("syntax error at offset {offset}: expected {expected}"));
                None
            }
            Err(e) => {
                self.push(path, e.to_string());
                None
            }
        }
    }

    /// Metric entries are declared once per symmetric pair as `gIJ`;
    /// declaring both orders is allowed only when the strings agree.
    fn metric(
        &mut self,
        entries: &BTreeMap<String, String>,
        chart: &Chart,
        base: &str,
    ) -> Option<MetricField> {
        let mut texts: [[Option<&String>; 4]; 4] = Default::default();
        let mut ok = true;
        for (key, text) in entries {
            let path = format!("{base}/{key}");
            let idx = key
                .strip_prefix('g')
                .filter(|rest| rest.len() == 2)
                .and_then(|rest| {
                    let b = rest.as_bytes();
                    let i = (b[0] as char).to_digit(10)?;
                    let j = (b[1] as char).to_digit(10)?;
                    if i < 4 && j < 4 {
                        Some((i as usize, j as usize))
                    } else {
                        None
                    }
                });
            let Some((i, j)) = idx else {
                self.push(&path, "metric keys are g00..g33".into());
                ok = false;
                continue;
            };
            if let Some(prev) = texts[j][i] {
                if prev != text {
                    self.push(
                        &path,
                        format!("conflicts with the symmetric entry g{j}{i} = \"{prev}\""),
                    );
                    ok = false;
                    continue;
                }
            }
            texts[i][j] = Some(text);
        }
        let mut g = e2(|_, _| Expr::zero());
        for i in 0..4 {
            for j in 0..4 {
                let text = texts[i][j].or(texts[j][i]);
                if let Some(text) = text {
                    let path = format!("{base}/g{i}{j}");
                    match self.expr(text, chart, &path) {
                        Some(e) => g[i][j] = e,
                        None => ok = false,
                    }
                }
            }
        }
        if !ok {
            return None;
        }
        Some(MetricField::new(g))
    }

    fn coframe(&mut self, raw: Option<&RawCoframe>, chart: &Chart) -> Option<CoFrameField> {
        match raw {
            None | Some(RawCoframe::Coordinate) => Some(CoFrameField::coordinate()),
            Some(RawCoframe::Explicit { rows }) => {
                if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
                    self.push("/coframe/rows", "expected a 4×4 array of expressions".into());
                    return None;
                }
                let mut ok = true;
                let mut h = e2(|_, _| Expr::zero());
                for (i, row) in rows.iter().enumerate() {
                    for (j, text) in row.iter().enumerate() {
                        match self.expr(text, chart, &format!("/coframe/rows/{i}/{j}")) {
                            Some(e) => h[i][j] = e,
                            None => ok = false,
                        }
                    }
                }
                ok.then(|| CoFrameField::explicit(h))
            }
        }
    }

    fn rank3(
        &mut self,
        entries: &[Vec<Vec<String>>],
        chart: &Chart,
        path: &str,
    ) -> Option<E3> {
        if entries.len() != 4
            || entries.iter().any(|a| a.len() != 4)
            || entries.iter().flatten().any(|b| b.len() != 4)
        {
            self.push(path, "expected a 4×4×4 array of expressions".into());
            return None;
        }
        let mut ok = true;
        let mut out = e3(|_, _, _| Expr::zero());
        for (r, plane) in entries.iter().enumerate() {
            for (a, row) in plane.iter().enumerate() {
                for (b, text) in row.iter().enumerate() {
                    match self.expr(text, chart, &format!("{path}/{r}/{a}/{b}")) {
                        Some(e) => out[r][a][b] = e,
                        None => ok = false,
                    }
                }
            }
        }
        ok.then_some(out)
    }

    fn connection(
        &mut self,
        raw: &RawConnection,
        chart: &Chart,
        g: &MetricField,
        cf: &CoFrameField,
        path: &str,
    ) -> Option<ConnectionField> {
        match raw {
            RawConnection::LeviCivita => Some(levi_civita_connection(g, cf)),
            RawConnection::Explicit { entries } => self
                .rank3(entries, chart, &format!("{path}/entries"))
                .map(ConnectionField::new),
            RawConnection::LcPlusContorsion { contorsion } => {
                let k = self.rank3(contorsion, chart, &format!("{path}/contorsion"))?;
                Some(levi_civita_connection(g, cf).plus(&k))
            }
        }
    }

    fn conventions(&mut self, raw: Option<&RawConventions>) -> Conventions {
        let mut out = Conventions::default();
        if let Some(raw) = raw {
            match raw.ricci.as_deref() {
                None | Some("e4") => {}
                Some("appendix-b") => out.ricci = RicciConvention::AppendixB,
                Some(other) => self.push(
                    "/conventions/ricci",
                    format!("unknown convention `{other}` (use `e4` or `appendix-b`)"),
                ),
            }
            match raw.dual_pair.as_deref() {
                None | Some("second") => {}
                Some("first") => out.dual_pair = DualPair::First,
                Some(other) => self.push(
                    "/conventions/dual_pair",
                    format!("unknown dual pair `{other}` (use `second` or `first`)"),
                ),
            }
        }
        out
    }

    fn checks(&mut self, raw: Option<&serde_json::Value>) -> Vec<crate::checks::CheckName> {
        use crate::checks::CheckName;
        match raw {
            None => CheckName::all().to_vec(),
            Some(serde_json::Value::String(s)) if s == "all" => CheckName::all().to_vec(),
            Some(serde_json::Value::Array(items)) => {
                let mut out = Vec::new();
                for (i, item) in items.iter().enumerate() {
                    match item.as_str().and_then(CheckName::from_str) {
                        Some(name) => out.push(name),
                        None => self.push(
                            &format!("/checks/{i}"),
                            format!("unknown check `{item}`"),
                        ),
                    }
                }
                out
            }
            Some(other) => {
                self.push("/checks", format!("expected \"all\" or a list, got {other}"));
                Vec::new()
            }
        }
    }
}

/// Contorsion for a prescribed torsion, exposed for fixture construction.
pub fn contorsion_for(g: &MetricField, torsion: &E3) -> E3 {
    contorsion_from_torsion(g, torsion)
}

/// Serializes a metric back to the one-sided entry map (upper triangle).
pub fn metric_entries(g: &E2, chart: &Chart) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for i in 0..4 {
        for j in i..4 {
            if !g[i][j].is_zero() {
                out.insert(format!("g{i}{j}"), g[i][j].print(chart));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal(metric: &str, extra: &str) -> String {
        format!(
            r#"{{
  "spec_version": 1,
  "name": "test",
  "chart": {{"coords": ["t", "r", "th", "ph"], "params": {{"M": 1.0}}}},
  "metric": {metric},
  "connection": {{"kind": "levi-civita"}},
  "sample_points": [[0.0, 4.0, 1.2, 0.3]]{extra}
}}"#
        )
    }

    #[test]
    fn loads_a_valid_schwarzschild_spec() {
        let text = minimal(
            r#"{"g00": "1 - 2*M/r", "g11": "-1/(1 - 2*M/r)", "g22": "-r^2", "g33": "-r^2*sin(th)^2"}"#,
            "",
        );
        let s = parse_spec(&text).unwrap();
        assert_eq!(s.name, "test");
        assert_eq!(s.sample_points.len(), 1);
        assert_eq!(s.checks.len(), crate::checks::CheckName::all().len());
    }

    #[test]
    fn asymmetric_metric_entry_is_rejected_with_path() {
        let text = minimal(
            r#"{"g00": "1", "g11": "-1", "g22": "-1", "g33": "-1", "g01": "r", "g10": "t"}"#,
            "",
        );
        match parse_spec(&text) {
            Err(SpecError::Validation(violations)) => {
                assert!(
                    violations.iter().any(|v| v.path.contains("/metric/g1")
                        || v.path.contains("/metric/g0")),
                    "{violations:?}"
                );
            }
            other => panic!("expected validation failure, got {:?}", other.is_ok()),
        }
    }

    #[test]
    fn horizon_sample_point_is_rejected() {
        let text = r#"{
  "spec_version": 1,
  "name": "test",
  "chart": {"coords": ["t", "r", "th", "ph"], "params": {"M": 1.0}},
  "metric": {"g00": "1 - 2*M/r", "g11": "-1/(1 - 2*M/r)", "g22": "-r^2", "g33": "-r^2*sin(th)^2"},
  "connection": {"kind": "levi-civita"},
  "sample_points": [[0.0, 2.0, 1.2, 0.3]]
}"#;
        match parse_spec(text) {
            Err(SpecError::Validation(violations)) => {
                assert!(violations.iter().any(|v| v.path == "/sample_points/0"));
            }
            _ => panic!("expected a singular-locus violation"),
        }
    }

    #[test]
    fn all_violations_are_collected() {
        let text = minimal(
            r#"{"g00": "1 - 2*M/q", "gxx": "0", "g11": "-(", "g22": "-1", "g33": "-1"}"#,
            r#",
  "checks": ["bianchi-1", "nope"]"#,
        );
        match parse_spec(&text) {
            Err(SpecError::Validation(violations)) => {
                assert!(violations.len() >= 3, "{violations:?}");
            }
            _ => panic!("expected validation failure"),
        }
    }

    #[test]
    fn syntax_error_is_distinguished() {
        assert!(matches!(
            parse_spec("{not json"),
            Err(SpecError::Syntax(_))
        ));
    }
}
