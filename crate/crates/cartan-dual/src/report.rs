//! Check reports with a byte-deterministic wire format: JSON with sorted
//! keys and fixed `%.12e` float formatting, or a human-readable text
//! rendering that cites the identity tag of every check.

use std::fmt::Write as _;

pub const TOOL_NAME: &str = "cartan-dual";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Indeterminate => "INDETERMINATE",
        }
    }
}

/// Classifies a residual maximum against the pass/fail band.
pub fn verdict_for(max_residual: f64, pass_tol: f64, fail_tol: f64) -> Verdict {
    if max_residual < pass_tol {
        Verdict::Pass
    } else if max_residual > fail_tol {
        Verdict::Fail
    } else {
        Verdict::Indeterminate
    }
}

#[derive(Debug, Clone)]
pub struct Witness {
    pub point: [f64; 4],
    pub residual: f64,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SubCheck {
    pub name: String,
    pub tag: String,
    pub residual_max: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub tag: String,
    pub verdict: Verdict,
    pub residual_max: f64,
    pub pass_tol: f64,
    pub fail_tol: f64,
    pub residual_per_point: Vec<f64>,
    pub witnesses: Vec<Witness>,
    pub subchecks: Vec<SubCheck>,
    /// Informational checks report witness magnitudes and always pass.
    pub informational: bool,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub spec_version: u32,
    pub structure: String,
    pub ricci_convention: &'static str,
    pub dual_pair: &'static str,
    pub orientation_sign: i8,
    pub checks: Vec<CheckOutcome>,
}

impl CheckReport {
    pub fn any_fail(&self) -> bool {
        self.checks.iter().any(|c| c.verdict == Verdict::Fail)
    }

    pub fn any_indeterminate(&self) -> bool {
        self.checks
            .iter()
            .any(|c| c.verdict == Verdict::Indeterminate)
    }

    /// Exit code contract: 0 all pass, 1 any fail, 2 any indeterminate.
    pub fn exit_code(&self) -> i32 {
        if self.any_fail() {
            1
        } else if self.any_indeterminate() {
            2
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn emit_report(report: &CheckReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => emit_json(report).into_bytes(),
        Format::Text => emit_text(report).into_bytes(),
    }
}

/// C-style `%.12e` so the byte stream is stable across platforms.
pub fn fmt_e(x: f64) -> String {
    let s = format!("{:.12e}", x);
    // Rust prints `1.5e0`; normalize to `1.500000000000e+00`.
    match s.split_once('e') {
        Some((mantissa, exp)) => {
            let (sign, digits) = match exp.as_bytes()[0] {
                b'-' => ('-', &exp[1..]),
                _ => ('+', exp),
            };
            format!("{mantissa}e{sign}{digits:0>2}")
        }
        None => s,
    }
}

fn json_string(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

/// Hand-rolled writer: keys are emitted in sorted order within every
/// object and floats use the fixed format, so two runs over the same
/// structure produce identical bytes.
fn emit_json(report: &CheckReport) -> String {
    let mut o = String::new();
    o.push('{');
    // checks
    o.push_str("\"checks\":[");
    for (i, c) in report.checks.iter().enumerate() {
        if i > 0 {
            o.push(',');
        }
        o.push('{');
        let _ = write!(o, "\"fail_tol\":{}", fmt_e(c.fail_tol));
        o.push_str(",\"informational\":");
        o.push_str(if c.informational { "true" } else { "false" });
        o.push_str(",\"name\":");
        json_string(&mut o, &c.name);
        o.push_str(",\"paper_tag\":");
        json_string(&mut o, &c.tag);
        let _ = write!(o, ",\"pass_tol\":{}", fmt_e(c.pass_tol));
        let _ = write!(o, ",\"residual_max\":{}", fmt_e(c.residual_max));
        o.push_str(",\"residual_per_point\":[");
        for (j, r) in c.residual_per_point.iter().enumerate() {
            if j > 0 {
                o.push(',');
            }
            o.push_str(&fmt_e(*r));
        }
        o.push(']');
        o.push_str(",\"subchecks\":[");
        for (j, s) in c.subchecks.iter().enumerate() {
            if j > 0 {
                o.push(',');
            }
            o.push('{');
            o.push_str("\"name\":");
            json_string(&mut o, &s.name);
            o.push_str(",\"paper_tag\":");
            json_string(&mut o, &s.tag);
            let _ = write!(o, ",\"residual_max\":{}", fmt_e(s.residual_max));
            o.push_str(",\"verdict\":");
            json_string(&mut o, s.verdict.as_str());
            o.push('}');
        }
        o.push(']');
        o.push_str(",\"verdict\":");
        json_string(&mut o, c.verdict.as_str());
        o.push_str(",\"witnesses\":[");
        for (j, w) in c.witnesses.iter().enumerate() {
            if j > 0 {
                o.push(',');
            }
            o.push('{');
            o.push_str("\"detail\":");
            json_string(&mut o, &w.detail);
            o.push_str(",\"point\":[");
            for (k, x) in w.point.iter().enumerate() {
                if k > 0 {
                    o.push(',');
                }
                o.push_str(&fmt_e(*x));
            }
            o.push(']');
            let _ = write!(o, ",\"residual\":{}", fmt_e(w.residual));
            o.push('}');
        }
        o.push_str("]}");
    }
    o.push(']');
    // conventions
    o.push_str(",\"conventions\":{\"dual_pair\":");
    json_string(&mut o, report.dual_pair);
    let _ = write!(o, ",\"epsilon_sign\":{}", report.orientation_sign);
    o.push_str(",\"ricci\":");
    json_string(&mut o, report.ricci_convention);
    o.push('}');
    let _ = write!(o, ",\"spec_version\":{}", report.spec_version);
    o.push_str(",\"structure\":");
    json_string(&mut o, &report.structure);
    o.push_str(",\"tool\":{\"name\":");
    json_string(&mut o, TOOL_NAME);
    o.push_str(",\"version\":");
    json_string(&mut o, TOOL_VERSION);
    o.push_str("}}");
    o.push('\n');
    o
}

fn emit_text(report: &CheckReport) -> String {
    let mut o = String::new();
    let _ = writeln!(
        o,
        "structure {} (conventions: ricci={}, dual_pair={}, epsilon_sign={:+})",
        report.structure, report.ricci_convention, report.dual_pair, report.orientation_sign
    );
    for c in &report.checks {
        let _ = writeln!(
            o,
            "{:<13} {:<20} [{}] max {} (pass<{}, fail>{}){}",
            c.verdict.as_str(),
            c.name,
            c.tag,
            fmt_e(c.residual_max),
            fmt_e(c.pass_tol),
            fmt_e(c.fail_tol),
            if c.informational {
                "  [informational: reported witness magnitudes]"
            } else {
                ""
            },
        );
        for s in &c.subchecks {
            let violated = if s.verdict == Verdict::Fail {
                "  <- clearly violated"
            } else {
                ""
            };
            let _ = writeln!(
                o,
                "    {:<13} {:<28} [{}] max {}{}",
                s.verdict.as_str(),
                s.name,
                s.tag,
                fmt_e(s.residual_max),
                violated
            );
        }
        for w in &c.witnesses {
            let _ = writeln!(
                o,
                "    witness at ({}, {}, {}, {}): residual {} — {}",
                w.point[0], w.point[1], w.point[2], w.point[3], fmt_e(w.residual), w.detail
            );
        }
    }
    o
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_is_c_style() {
        assert_eq!(fmt_e(1.5), "1.500000000000e+00");
        assert_eq!(fmt_e(0.0), "0.000000000000e+00");
        assert_eq!(fmt_e(-3.25e-14), "-3.250000000000e-14");
        assert_eq!(fmt_e(1.0e100), "1.000000000000e+100");
    }

    #[test]
    fn empty_check_list_is_valid_json() {
        let report = CheckReport {
            spec_version: 1,
            structure: "empty".into(),
            ricci_convention: "e4",
            dual_pair: "second",
            orientation_sign: 1,
            checks: vec![],
        };
        let bytes = emit_report(&report, Format::Json);
        let value: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(value["structure"], "empty");
        assert_eq!(value["checks"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn report_is_byte_deterministic() {
        let report = CheckReport {
            spec_version: 1,
            structure: "x".into(),
            ricci_convention: "e4",
            dual_pair: "second",
            orientation_sign: 1,
            checks: vec![CheckOutcome {
                name: "bianchi-1".into(),
                tag: "bianchi1/bianchi11".into(),
                verdict: Verdict::Pass,
                residual_max: 1.25e-14,
                pass_tol: 1e-8,
                fail_tol: 1e-3,
                residual_per_point: vec![1.25e-14, 1.0e-15],
                witnesses: vec![],
                subchecks: vec![],
                informational: false,
            }],
        };
        assert_eq!(
            emit_report(&report, Format::Json),
            emit_report(&report, Format::Json)
        );
    }

    #[test]
    fn failing_subcheck_text_is_marked_clearly_violated() {
        let report = CheckReport {
            spec_version: 1,
            structure: "x".into(),
            ricci_convention: "e4",
            dual_pair: "second",
            orientation_sign: 1,
            checks: vec![CheckOutcome {
                name: "particular-case".into(),
                tag: "f31/l1/ff".into(),
                verdict: Verdict::Fail,
                residual_max: 0.3,
                pass_tol: 1e-6,
                fail_tol: 1e-3,
                residual_per_point: vec![0.3],
                witnesses: vec![Witness {
                    point: [0.0, 1.0, 1.2, 0.4],
                    residual: 0.3,
                    detail: "scalar-curvature-zero".into(),
                }],
                subchecks: vec![SubCheck {
                    name: "scalar-curvature-zero".into(),
                    tag: "f31".into(),
                    residual_max: 0.3,
                    verdict: Verdict::Fail,
                }],
                informational: false,
            }],
        };
        let text = String::from_utf8(emit_report(&report, Format::Text)).unwrap();
        assert!(text.contains("clearly violated"), "{text}");
        assert!(text.contains("witness at"), "{text}");
    }
}
