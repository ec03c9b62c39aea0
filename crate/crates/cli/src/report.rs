//! Report rendering in two flavours: compact text for reading, JSON for
//! scripting.
//!
//! Text reports print money to two decimals using the formatter's
//! round-half-to-even behaviour and belief parameters to six. JSON reports
//! carry full-precision values with a fixed field order. Every renderer is a
//! pure function of its inputs, so identical analyses produce byte-identical
//! reports.

use dflex_core::{BrittlenessReport, Envelope, MeuResult, PolicyReport};
use serde::Serialize;
use std::fmt::Write as _;

/// Output flavour selected with `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Money to two decimals, with negative zero normalized away.
pub fn money(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

/// Belief parameters to six decimals.
fn param(p: f64) -> String {
    format!("{p:.6}")
}

fn verify_line(deviation: Option<f64>) -> String {
    match deviation {
        Some(d) => format!("verify: max deviation {d:.3e}\n"),
        None => String::new(),
    }
}

#[derive(Serialize)]
struct VerifyOut {
    max_deviation: f64,
}

fn verify_out(deviation: Option<f64>) -> Option<VerifyOut> {
    deviation.map(|max_deviation| VerifyOut { max_deviation })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serialization");
    text.push('\n');
    text
}

#[derive(Serialize)]
struct MeuOut<'a> {
    best: &'a [String],
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    verify: Option<VerifyOut>,
}

pub fn render_meu(result: &MeuResult, deviation: Option<f64>, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "best: {}", result.best.join(", "));
            let _ = writeln!(out, "value: {}", money(result.value));
            out.push_str(&verify_line(deviation));
            out
        }
        Format::Json => to_json(&MeuOut {
            best: &result.best,
            value: result.value,
            verify: verify_out(deviation),
        }),
    }
}

#[derive(Serialize)]
struct SegmentOut<'a> {
    lo: f64,
    hi: f64,
    alternative: &'a str,
}

#[derive(Serialize)]
struct EnvelopeOut<'a> {
    segments: Vec<SegmentOut<'a>>,
    breakpoints: Vec<f64>,
    p: f64,
    value: f64,
    active: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    verify: Option<VerifyOut>,
}

pub fn render_envelope(
    envelope: &Envelope,
    p: f64,
    value: f64,
    active: &[String],
    deviation: Option<f64>,
    format: Format,
) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for seg in envelope.segments() {
                let _ = writeln!(
                    out,
                    "segment [{}, {}]: {}",
                    param(seg.lo),
                    param(seg.hi),
                    seg.line.label
                );
            }
            let breakpoints = envelope.breakpoints();
            if breakpoints.is_empty() {
                let _ = writeln!(out, "breakpoints: none");
            } else {
                let listed: Vec<String> = breakpoints.iter().map(|b| param(*b)).collect();
                let _ = writeln!(out, "breakpoints: {}", listed.join(", "));
            }
            let _ = writeln!(
                out,
                "value at p = {}: {} ({})",
                param(p),
                money(value),
                active.join(", ")
            );
            out.push_str(&verify_line(deviation));
            out
        }
        Format::Json => to_json(&EnvelopeOut {
            segments: envelope
                .segments()
                .iter()
                .map(|seg| SegmentOut { lo: seg.lo, hi: seg.hi, alternative: &seg.line.label })
                .collect(),
            breakpoints: envelope.breakpoints(),
            p,
            value,
            active,
            verify: verify_out(deviation),
        }),
    }
}

#[derive(Serialize)]
struct RankedOut<'a> {
    alternative: &'a str,
    value: f64,
}

#[derive(Serialize)]
struct BrittlenessOut<'a> {
    definition: String,
    ranking: Vec<RankedOut<'a>>,
    least_brittle: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    verify: Option<VerifyOut>,
}

/// Renders a brittleness report with alternatives in ascending order of
/// brittleness (ties keep declaration order).
pub fn render_brittleness(
    report: &BrittlenessReport,
    deviation: Option<f64>,
    format: Format,
) -> String {
    let mut ranked: Vec<&(String, f64)> = report.values.iter().collect();
    ranked.sort_by(|a, b| a.1.total_cmp(&b.1));
    match format {
        Format::Text => {
            let mut out = String::new();
            for (alternative, value) in &ranked {
                let _ = writeln!(out, "{alternative} {}", money(*value));
            }
            out.push_str(&verify_line(deviation));
            out
        }
        Format::Json => to_json(&BrittlenessOut {
            definition: report.kind.to_string(),
            ranking: ranked
                .iter()
                .map(|(alternative, value)| RankedOut { alternative, value: *value })
                .collect(),
            least_brittle: &report.least_brittle,
            verify: verify_out(deviation),
        }),
    }
}

#[derive(Serialize)]
struct RowOut<'a> {
    evidence: Option<&'a str>,
    probability: f64,
    action: &'a str,
    net_value: f64,
}

#[derive(Serialize)]
struct CommitmentValueOut<'a> {
    commitment: &'a str,
    rows: Vec<RowOut<'a>>,
    value_with_flexibility: f64,
    baseline: f64,
    flexibility_value: f64,
}

#[derive(Serialize)]
struct MostFlexibleOut<'a> {
    commitment: &'a str,
    value: f64,
}

#[derive(Serialize)]
struct FlexvalueOut<'a> {
    commitments: Vec<CommitmentValueOut<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    most_flexible: Option<Option<MostFlexibleOut<'a>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verify: Option<VerifyOut>,
}

/// Renders flexibility reports. `survey` carries the model-wide winner when
/// every commitment was evaluated, and is absent when the caller asked for a
/// single commitment.
pub fn render_flexvalue(
    reports: &[PolicyReport],
    survey: Option<&Option<(String, f64)>>,
    deviation: Option<f64>,
    format: Format,
) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for report in reports {
                let _ = writeln!(out, "commitment: {}", report.commitment);
                for row in &report.rows {
                    match &row.evidence {
                        Some(outcome) => {
                            let _ = writeln!(
                                out,
                                "  on {outcome} (p = {:.2}): {}, net {}",
                                row.probability,
                                row.action,
                                money(row.net_value)
                            );
                        }
                        None => {
                            let _ = writeln!(
                                out,
                                "  unconditionally: {}, net {}",
                                row.action,
                                money(row.net_value)
                            );
                        }
                    }
                }
                let _ = writeln!(
                    out,
                    "  value with flexibility: {}",
                    money(report.value_with_flexibility)
                );
                let _ = writeln!(out, "  baseline: {}", money(report.baseline));
                let _ = writeln!(out, "  flexibility value: {}", money(report.flexibility_value));
            }
            if let Some(winner) = survey {
                match winner {
                    Some((label, value)) => {
                        let _ = writeln!(out, "most flexible: {label} ({})", money(*value));
                    }
                    None => {
                        let _ = writeln!(out, "most flexible: none");
                    }
                }
            }
            out.push_str(&verify_line(deviation));
            out
        }
        Format::Json => to_json(&FlexvalueOut {
            commitments: reports
                .iter()
                .map(|report| CommitmentValueOut {
                    commitment: &report.commitment,
                    rows: report
                        .rows
                        .iter()
                        .map(|row| RowOut {
                            evidence: row.evidence.as_deref(),
                            probability: row.probability,
                            action: &row.action,
                            net_value: row.net_value,
                        })
                        .collect(),
                    value_with_flexibility: report.value_with_flexibility,
                    baseline: report.baseline,
                    flexibility_value: report.flexibility_value,
                })
                .collect(),
            most_flexible: survey.map(|winner| {
                winner
                    .as_ref()
                    .map(|(commitment, value)| MostFlexibleOut { commitment, value: *value })
            }),
            verify: verify_out(deviation),
        }),
    }
}
