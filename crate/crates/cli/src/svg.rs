//! Deterministic SVG plots of the certainty-equivalent geometry.
//!
//! The canvas is fixed at 640×420 with the belief parameter on the x axis
//! over `[0, 1]` and expected value on the y axis, auto-scaled to the drawn
//! lines with a 5% margin. Layers are selected by name:
//!
//! * `ce` — one straight line per alternative, labelled in the right margin;
//! * `envelope` — the upper envelope drawn as one heavy path;
//! * `clairvoyance` — the dashed line of a decision maker who learns the
//!   state before acting;
//! * `shade:LABEL` — the region where the envelope exceeds alternative
//!   `LABEL`, filled in that alternative's colour;
//! * `prior` — a dashed vertical marker at the belief parameter in force;
//! * `twostage` — the first observing commitment's cost-shifted lines
//!   (dotted), the heavy line joining their best values at the two
//!   endpoints, and the flexibility gap `F` at the prior marker.
//!
//! Every coordinate is written with two decimals and no timestamps or
//! randomness are involved, so identical inputs give byte-identical
//! documents.

use dflex_core::{ce_lines, clairvoyance_line, upper_envelope, Line};
use std::fmt::Write as _;

use crate::error::CliError;
use crate::model_file::ParsedModel;
use crate::report::money;

/// Which layers [`render_svg`] draws.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Layers {
    pub ce: bool,
    pub envelope: bool,
    pub clairvoyance: bool,
    pub prior: bool,
    pub two_stage: bool,
    pub shade: Option<String>,
}

/// Parses a comma-separated layer list such as
/// `ce,envelope,shade:porch,prior`.
pub fn parse_layers(text: &str) -> Result<Layers, CliError> {
    let mut layers = Layers::default();
    for token in text.split(',') {
        let token = token.trim();
        match token {
            "ce" => layers.ce = true,
            "envelope" => layers.envelope = true,
            "clairvoyance" => layers.clairvoyance = true,
            "prior" => layers.prior = true,
            "twostage" => layers.two_stage = true,
            _ => {
                if let Some(label) = token.strip_prefix("shade:") {
                    if label.is_empty() {
                        return Err(CliError::Usage(
                            "the shade layer needs an alternative, as in shade:LABEL".into(),
                        ));
                    }
                    layers.shade = Some(label.to_owned());
                } else if token.is_empty() {
                    return Err(CliError::Usage("empty entry in the layer list".into()));
                } else {
                    return Err(CliError::Usage(format!("unknown plot layer `{token}`")));
                }
            }
        }
    }
    Ok(layers)
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 54.0;
const RIGHT_MARGIN: f64 = 120.0;
const TOP: f64 = 16.0;
const BOTTOM_MARGIN: f64 = 36.0;
const PLOT_W: f64 = WIDTH - LEFT - RIGHT_MARGIN;
const PLOT_H: f64 = HEIGHT - TOP - BOTTOM_MARGIN;
const BOTTOM: f64 = TOP + PLOT_H;

const PALETTE: [&str; 6] =
    ["#2563ab", "#c2402a", "#2e8540", "#7d4a9e", "#b8860b", "#3a7d85"];
const INK: &str = "#1a1a1a";
const GRID: &str = "#333333";
const ACCENT: &str = "#a61c3c";

fn color(index: usize) -> &'static str {
    PALETTE[index % PALETTE.len()]
}

fn esc(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// A dotted cost-shifted line in the two-stage overlay.
struct Shifted {
    line: Line,
    color: &'static str,
    label: String,
}

fn two_stage_overlay(parsed: &ParsedModel, lines: &[Line]) -> Result<Vec<Shifted>, CliError> {
    let ts = parsed.two_stage.as_ref().ok_or_else(|| {
        CliError::Model("the twostage layer needs commitments and evidence in the model".into())
    })?;
    let commitment = ts
        .commitments()
        .iter()
        .find(|c| c.observes_evidence)
        .ok_or_else(|| {
            CliError::Model("the twostage layer needs a commitment that observes evidence".into())
        })?;
    let info = ts.evidence().info_cost();
    let mut shifted = Vec::new();
    let mut add = |action: &str, deduction: f64| {
        let d = parsed
            .model
            .alternative_index(action)
            .expect("two-stage actions are validated at construction");
        shifted.push(Shifted {
            line: Line::new(lines[d].intercept - deduction, lines[d].slope, action),
            color: color(d),
            label: format!("{action} -{}", money(deduction)),
        });
    };
    add(&commitment.initial_action, info);
    for target in &commitment.revision_targets {
        add(target, info + commitment.switch_cost);
    }
    Ok(shifted)
}

/// Renders the selected layers for a parsed model. See the module docs for
/// the layer vocabulary.
pub fn render_svg(parsed: &ParsedModel, layers: &Layers) -> Result<String, CliError> {
    let model = &parsed.model;
    let lines = ce_lines(model, &parsed.family)?;
    let envelope = upper_envelope(&lines)?;

    let shade = match &layers.shade {
        Some(label) => Some(
            model
                .alternative_index(label)
                .ok_or_else(|| dflex_core::Error::UnknownAlternative(label.clone()))?,
        ),
        None => None,
    };
    let clair = if layers.clairvoyance {
        Some(clairvoyance_line(model, &parsed.family)?)
    } else {
        None
    };
    let overlay = if layers.two_stage {
        Some(two_stage_overlay(parsed, &lines)?)
    } else {
        None
    };

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut cover = |line: &Line| {
        lo = lo.min(line.value_at(0.0)).min(line.value_at(1.0));
        hi = hi.max(line.value_at(0.0)).max(line.value_at(1.0));
    };
    for line in &lines {
        cover(line);
    }
    if let Some(line) = &clair {
        cover(line);
    }
    if let Some(overlay) = &overlay {
        for s in overlay {
            cover(&s.line);
        }
    }
    let margin = if hi - lo > 1e-9 { 0.05 * (hi - lo) } else { 1.0 };
    let (ymin, ymax) = (lo - margin, hi + margin);

    let x = |p: f64| LEFT + p * PLOT_W;
    let y = |v: f64| BOTTOM - (v - ymin) / (ymax - ymin) * PLOT_H;

    let mut out = String::new();
    let _ = writeln!(out, r##"<?xml version="1.0" encoding="UTF-8"?>"##);
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">"##
    );
    let _ = writeln!(
        out,
        r##"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##
    );

    // Shading goes first so every line stays visible on top of it.
    if let Some(d) = shade {
        let target = &lines[d];
        let segments = envelope.segments();
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for (i, seg) in segments.iter().enumerate() {
            let mid = 0.5 * (seg.lo + seg.hi);
            if seg.line.value_at(mid) - target.value_at(mid) > 1e-9 {
                match runs.last_mut() {
                    Some((_, end)) if *end == i => *end = i + 1,
                    _ => runs.push((i, i + 1)),
                }
            }
        }
        for (start, end) in runs {
            let mut d_attr = String::new();
            let first = &segments[start];
            let _ = write!(
                d_attr,
                "M {:.2},{:.2}",
                x(first.lo),
                y(first.line.value_at(first.lo))
            );
            for seg in &segments[start..end] {
                let _ =
                    write!(d_attr, " L {:.2},{:.2}", x(seg.hi), y(seg.line.value_at(seg.hi)));
            }
            let last = &segments[end - 1];
            let _ = write!(d_attr, " L {:.2},{:.2}", x(last.hi), y(target.value_at(last.hi)));
            let _ =
                write!(d_attr, " L {:.2},{:.2} Z", x(first.lo), y(target.value_at(first.lo)));
            let _ = writeln!(
                out,
                r##"<path d="{d_attr}" fill="{}" fill-opacity="0.18" stroke="none"/>"##,
                color(d)
            );
        }
    }

    // Axes and ticks.
    let _ = writeln!(
        out,
        r##"<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{BOTTOM}" stroke="{GRID}" stroke-width="1"/>"##
    );
    let _ = writeln!(
        out,
        r##"<line x1="{LEFT}" y1="{BOTTOM}" x2="{:.2}" y2="{BOTTOM}" stroke="{GRID}" stroke-width="1"/>"##,
        LEFT + PLOT_W
    );
    for i in 0..=4 {
        let p = f64::from(i) / 4.0;
        let tx = x(p);
        let _ = writeln!(
            out,
            r##"<line x1="{tx:.2}" y1="{BOTTOM}" x2="{tx:.2}" y2="{:.2}" stroke="{GRID}" stroke-width="1"/>"##,
            BOTTOM + 4.0
        );
        let _ = writeln!(
            out,
            r##"<text x="{tx:.2}" y="{:.2}" font-size="11" fill="{GRID}" text-anchor="middle">{p:.2}</text>"##,
            BOTTOM + 16.0
        );
    }
    for i in 0..=4 {
        let v = ymin + (ymax - ymin) * f64::from(i) / 4.0;
        let ty = y(v);
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{ty:.2}" x2="{LEFT}" y2="{ty:.2}" stroke="{GRID}" stroke-width="1"/>"##,
            LEFT - 4.0
        );
        let _ = writeln!(
            out,
            r##"<text x="{:.2}" y="{:.2}" font-size="11" fill="{GRID}" text-anchor="end">{}</text>"##,
            LEFT - 7.0,
            ty + 4.0,
            money(v)
        );
    }
    let _ = writeln!(
        out,
        r##"<text x="{:.2}" y="{:.2}" font-size="12" fill="{GRID}" text-anchor="middle">p</text>"##,
        LEFT + PLOT_W / 2.0,
        HEIGHT - 6.0
    );

    let label_x = LEFT + PLOT_W + 6.0;
    let label = |out: &mut String, text: &str, v: f64, fill: &str| {
        let _ = writeln!(
            out,
            r##"<text x="{label_x:.2}" y="{:.2}" font-size="12" fill="{fill}">{}</text>"##,
            y(v) + 4.0,
            esc(text)
        );
    };

    if layers.ce {
        for (d, line) in lines.iter().enumerate() {
            let _ = writeln!(
                out,
                r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-width="1.5"/>"##,
                x(0.0),
                y(line.value_at(0.0)),
                x(1.0),
                y(line.value_at(1.0)),
                color(d)
            );
            label(&mut out, &line.label, line.value_at(1.0), color(d));
        }
    }

    if layers.envelope {
        let mut d_attr = String::new();
        let first = &envelope.segments()[0];
        let _ =
            write!(d_attr, "M {:.2},{:.2}", x(first.lo), y(first.line.value_at(first.lo)));
        for seg in envelope.segments() {
            let _ = write!(d_attr, " L {:.2},{:.2}", x(seg.hi), y(seg.line.value_at(seg.hi)));
        }
        let _ = writeln!(
            out,
            r##"<path d="{d_attr}" fill="none" stroke="{INK}" stroke-width="3" stroke-linejoin="round" stroke-linecap="round"/>"##
        );
    }

    if let Some(line) = &clair {
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#444444" stroke-width="1.8" stroke-dasharray="7 4"/>"##,
            x(0.0),
            y(line.value_at(0.0)),
            x(1.0),
            y(line.value_at(1.0))
        );
        label(&mut out, &line.label, line.value_at(1.0), "#444444");
    }

    if let Some(overlay) = &overlay {
        for s in overlay {
            let _ = writeln!(
                out,
                r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-width="1.2" stroke-dasharray="2 3"/>"##,
                x(0.0),
                y(s.line.value_at(0.0)),
                x(1.0),
                y(s.line.value_at(1.0)),
                s.color
            );
            label(&mut out, &s.label, s.line.value_at(1.0), s.color);
        }
        let best_at = |p: f64| {
            overlay
                .iter()
                .map(|s| s.line.value_at(p))
                .fold(f64::NEG_INFINITY, f64::max)
        };
        let (m0, m1) = (best_at(0.0), best_at(1.0));
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{ACCENT}" stroke-width="2.5"/>"##,
            x(0.0),
            y(m0),
            x(1.0),
            y(m1)
        );
        label(&mut out, "information", m1, ACCENT);
        let p0 = parsed.prior_p;
        let (static_best, _) = envelope.evaluate(p0)?;
        let with_info = m0 + (m1 - m0) * p0;
        let gx = x(p0);
        let _ = writeln!(
            out,
            r##"<line x1="{gx:.2}" y1="{:.2}" x2="{gx:.2}" y2="{:.2}" stroke="{ACCENT}" stroke-width="2"/>"##,
            y(static_best),
            y(with_info)
        );
        let _ = writeln!(
            out,
            r##"<text x="{:.2}" y="{:.2}" font-size="12" fill="{ACCENT}">F</text>"##,
            gx + 5.0,
            (y(static_best) + y(with_info)) / 2.0 + 4.0
        );
    }

    if layers.prior {
        let gx = x(parsed.prior_p);
        let _ = writeln!(
            out,
            r##"<line x1="{gx:.2}" y1="{TOP}" x2="{gx:.2}" y2="{BOTTOM}" stroke="#777777" stroke-width="1" stroke-dasharray="4 3"/>"##
        );
        let _ = writeln!(
            out,
            r##"<text x="{:.2}" y="{:.2}" font-size="11" fill="#777777">p = {:.2}</text>"##,
            gx + 4.0,
            TOP + 10.0,
            parsed.prior_p
        );
    }

    out.push_str("</svg>\n");
    Ok(out)
}
