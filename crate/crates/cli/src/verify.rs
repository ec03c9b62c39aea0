//! Cross-checks behind the `--verify` flag.
//!
//! Each check recomputes a reported quantity along an independent route —
//! numerical quadrature against closed-form integrals, brute-force policy
//! enumeration against the optimized two-stage recursion, an additive
//! identity for the outcome measure — and returns the largest absolute
//! deviation found. Callers print the deviation; a small number is the
//! evidence that the exact code paths agree with the naive ones.

use dflex_core::{
    brittleness_belief, brittleness_clairvoyance, brittleness_outcomes, ce_lines,
    enumerate_two_stage, meu, quadrature, upper_envelope, BeliefFamily, BrittlenessKind,
    DecisionModel, Line, PolicyReport, QuadratureSpec, TwoStageModel,
};

use crate::error::CliError;

/// Panel count for the quadrature cross-checks: fine enough that any real
/// disagreement dwarfs the integration error, coarse enough to stay quick.
const VERIFY_PANELS: usize = 200_000;

fn spec() -> QuadratureSpec {
    QuadratureSpec::midpoint(VERIFY_PANELS)
}

fn tallest(lines: &[Line], p: f64) -> f64 {
    lines
        .iter()
        .map(|l| l.value_at(p))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Deviation between the recommendation value and the tallest certainty
/// equivalent line at `p`.
pub fn verify_meu(
    model: &DecisionModel,
    family: &BeliefFamily,
    p: f64,
) -> Result<f64, CliError> {
    let result = meu(model, &family.at(p)?)?;
    let lines = ce_lines(model, family)?;
    Ok((result.value - tallest(&lines, p)).abs())
}

/// Deviation between the envelope's closed-form integral over `[0, 1]` and a
/// quadrature of the pointwise maximum of the certainty equivalent lines.
pub fn verify_envelope(model: &DecisionModel, family: &BeliefFamily) -> Result<f64, CliError> {
    let lines = ce_lines(model, family)?;
    let envelope = upper_envelope(&lines)?;
    let closed = envelope.integral(0.0, 1.0)?;
    let quad = quadrature(|p| tallest(&lines, p), 0.0, 1.0, &spec())?;
    Ok((closed - quad).abs())
}

/// Deviation of a brittleness report from its independent recomputation.
///
/// The belief and clairvoyance measures are re-integrated by quadrature; the
/// outcome measure is checked against the identity that brittleness plus
/// expected payoff is the same constant for every alternative.
pub fn verify_brittleness(
    model: &DecisionModel,
    family: &BeliefFamily,
    kind: BrittlenessKind,
    p: f64,
) -> Result<f64, CliError> {
    let lines = ce_lines(model, family)?;
    let mut worst = 0.0f64;
    match kind {
        BrittlenessKind::Outcomes => {
            let dist = family.at(p)?;
            let report = brittleness_outcomes(model, &dist)?;
            let mut ceiling = 0.0;
            for (x, w) in dist.weights().iter().enumerate() {
                let best = (0..model.alternatives().len())
                    .map(|d| model.payoff_at(d, x))
                    .fold(f64::NEG_INFINITY, f64::max);
                ceiling += w * best;
            }
            for (d, (_, b)) in report.values.iter().enumerate() {
                worst = worst.max((b + lines[d].value_at(p) - ceiling).abs());
            }
        }
        BrittlenessKind::Belief => {
            let report = brittleness_belief(model, family)?;
            for (d, (_, b)) in report.values.iter().enumerate() {
                let quad = quadrature(
                    |p| tallest(&lines, p) - lines[d].value_at(p),
                    0.0,
                    1.0,
                    &spec(),
                )?;
                worst = worst.max((b - quad).abs());
            }
        }
        BrittlenessKind::Clairvoyance => {
            let report = brittleness_clairvoyance(model, family)?;
            let e0 = family.endpoint0().weights().to_vec();
            let e1 = family.endpoint1().weights().to_vec();
            let best: Vec<f64> = (0..model.states().len())
                .map(|x| {
                    (0..model.alternatives().len())
                        .map(|d| model.payoff_at(d, x))
                        .fold(f64::NEG_INFINITY, f64::max)
                })
                .collect();
            let clair = |p: f64| -> f64 {
                best.iter()
                    .enumerate()
                    .map(|(x, b)| ((1.0 - p) * e0[x] + p * e1[x]) * b)
                    .sum()
            };
            for (d, (_, b)) in report.values.iter().enumerate() {
                let quad =
                    quadrature(|p| clair(p) - lines[d].value_at(p), 0.0, 1.0, &spec())?;
                worst = worst.max((b - quad).abs());
            }
        }
    }
    Ok(worst)
}

/// Deviation between each report's value-with-flexibility and the value of
/// the best policy found by exhaustive enumeration.
pub fn verify_flexvalue(
    ts: &TwoStageModel,
    reports: &[PolicyReport],
) -> Result<f64, CliError> {
    let enumerations = enumerate_two_stage(ts)?;
    let mut worst = 0.0f64;
    for report in reports {
        let brute = enumerations
            .iter()
            .find(|e| e.commitment == report.commitment)
            .expect("enumeration covers every commitment");
        worst = worst.max((report.value_with_flexibility - brute.best().value).abs());
    }
    Ok(worst)
}
