//! Recommendations and how much they have to lose.
//!
//! [`meu`] picks the alternative with the highest expected payoff under a
//! fixed belief. The three brittleness measures then quantify exposure, each
//! against a different benchmark:
//!
//! * outcomes: expected shortfall against the best payoff in each state,
//!   state by state, under a fixed distribution;
//! * belief: area between the upper envelope and the alternative's own line,
//!   i.e. average shortfall when the belief parameter could be anything in
//!   `[0, 1]`;
//! * clairvoyance: the same area measured against the line of a decision
//!   maker who will learn the true state before acting.
//!
//! Low brittleness is good. The least brittle alternative under the outcomes
//! measure is always the expected-value recommendation, and the clairvoyance
//! measure exceeds the belief measure by the same constant for every
//! alternative (the average value of perfect information), so all three
//! orderings agree on who is least exposed.

use crate::envelope::{ce_lines, upper_envelope, Line};
use crate::error::Error;
use crate::model::{BeliefFamily, DecisionModel, Distribution};
use crate::tol;

/// Result of an expected-value recommendation.
#[derive(Debug, Clone, PartialEq)]
pub struct MeuResult {
    /// Every alternative within [`tol::VALUE_EPS`] of the best expected
    /// payoff, in declaration order.
    pub best: Vec<String>,
    pub value: f64,
}

/// Which benchmark a brittleness report measures against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrittlenessKind {
    Outcomes,
    Belief,
    Clairvoyance,
}

impl std::fmt::Display for BrittlenessKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BrittlenessKind::Outcomes => "outcomes",
            BrittlenessKind::Belief => "belief",
            BrittlenessKind::Clairvoyance => "clairvoyance",
        })
    }
}

/// Brittleness of every alternative under one measure.
#[derive(Debug, Clone, PartialEq)]
pub struct BrittlenessReport {
    pub kind: BrittlenessKind,
    /// `(alternative, brittleness)` in declaration order.
    pub values: Vec<(String, f64)>,
    /// Alternatives within [`tol::VALUE_EPS`] of the minimum, in declaration
    /// order.
    pub least_brittle: Vec<String>,
}

impl BrittlenessReport {
    pub fn value(&self, alternative: &str) -> Option<f64> {
        self.values
            .iter()
            .find(|(a, _)| a == alternative)
            .map(|(_, v)| *v)
    }

    fn build(kind: BrittlenessKind, model: &DecisionModel, values: Vec<f64>) -> Self {
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let least_brittle = model
            .alternatives()
            .iter()
            .zip(&values)
            .filter(|(_, v)| **v <= min + tol::VALUE_EPS)
            .map(|(a, _)| a.clone())
            .collect();
        let values = model
            .alternatives()
            .iter()
            .cloned()
            .zip(values)
            .collect();
        BrittlenessReport { kind, values, least_brittle }
    }
}

/// Maximum-expected-payoff recommendation under `dist`.
pub fn meu(model: &DecisionModel, dist: &Distribution) -> crate::Result<MeuResult> {
    if !dist.matches(model.states()) {
        return Err(Error::StateMismatch);
    }
    let evs: Vec<f64> = (0..model.alternatives().len())
        .map(|d| model.expected_payoff(d, dist))
        .collect();
    let value = evs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let best = model
        .alternatives()
        .iter()
        .zip(&evs)
        .filter(|(_, ev)| **ev >= value - tol::VALUE_EPS)
        .map(|(a, _)| a.clone())
        .collect();
    Ok(MeuResult { best, value })
}

/// Expected shortfall of each alternative against the best payoff available
/// in each state, under `dist`.
pub fn brittleness_outcomes(
    model: &DecisionModel,
    dist: &Distribution,
) -> crate::Result<BrittlenessReport> {
    if !dist.matches(model.states()) {
        return Err(Error::StateMismatch);
    }
    let best: Vec<f64> = (0..model.states().len())
        .map(|x| model.best_payoff_in_state(x))
        .collect();
    let values = (0..model.alternatives().len())
        .map(|d| {
            dist.weights()
                .iter()
                .enumerate()
                .map(|(x, w)| w * (best[x] - model.payoff_at(d, x)))
                .sum()
        })
        .collect();
    Ok(BrittlenessReport::build(BrittlenessKind::Outcomes, model, values))
}

/// Area between the upper envelope and each alternative's own line, over the
/// whole belief parameter range.
pub fn brittleness_belief(
    model: &DecisionModel,
    family: &BeliefFamily,
) -> crate::Result<BrittlenessReport> {
    let lines = ce_lines(model, family)?;
    let env = upper_envelope(&lines)?;
    let env_integral = env.integral(0.0, 1.0)?;
    let mut values = Vec::with_capacity(lines.len());
    for line in &lines {
        values.push(env_integral - line.integral(0.0, 1.0)?);
    }
    Ok(BrittlenessReport::build(BrittlenessKind::Belief, model, values))
}

/// Expected payoff line of a decision maker who learns the true state before
/// acting: at each parameter, the mixture of per-state best payoffs.
pub fn clairvoyance_line(
    model: &DecisionModel,
    family: &BeliefFamily,
) -> crate::Result<Line> {
    if family.states() != model.states() {
        return Err(Error::StateMismatch);
    }
    let best: Vec<f64> = (0..model.states().len())
        .map(|x| model.best_payoff_in_state(x))
        .collect();
    let blend = |weights: &[f64]| -> f64 {
        weights.iter().zip(&best).map(|(w, b)| w * b).sum()
    };
    let at0 = blend(family.endpoint0().weights());
    let at1 = blend(family.endpoint1().weights());
    Ok(Line::new(at0, at1 - at0, "clairvoyance"))
}

/// Area between the clairvoyance line and each alternative's own line.
pub fn brittleness_clairvoyance(
    model: &DecisionModel,
    family: &BeliefFamily,
) -> crate::Result<BrittlenessReport> {
    let lines = ce_lines(model, family)?;
    let clairvoyant = clairvoyance_line(model, family)?.integral(0.0, 1.0)?;
    let mut values = Vec::with_capacity(lines.len());
    for line in &lines {
        values.push(clairvoyant - line.integral(0.0, 1.0)?);
    }
    Ok(BrittlenessReport::build(BrittlenessKind::Clairvoyance, model, values))
}

/// Alternatives ranked from least to most brittle under `kind`. The outcomes
/// measure needs `dist`; the other two ignore it. Equal values keep
/// declaration order.
pub fn flexibility_ranking(
    model: &DecisionModel,
    family: &BeliefFamily,
    kind: BrittlenessKind,
    dist: Option<&Distribution>,
) -> crate::Result<Vec<(String, f64)>> {
    let report = match kind {
        BrittlenessKind::Outcomes => {
            let dist = dist.ok_or(Error::MissingDistribution)?;
            brittleness_outcomes(model, dist)?
        }
        BrittlenessKind::Belief => brittleness_belief(model, family)?,
        BrittlenessKind::Clairvoyance => brittleness_clairvoyance(model, family)?,
    };
    let mut ranked = report.values;
    ranked.sort_by(|a, b| a.1.total_cmp(&b.1));
    Ok(ranked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn party() -> (DecisionModel, BeliefFamily) {
        let model = DecisionModel::new(
            vec!["sun".into(), "rain".into()],
            vec!["outdoors".into(), "porch".into(), "indoors".into()],
            vec![vec![100.0, 0.0], vec![90.0, 20.0], vec![40.0, 50.0]],
        )
        .unwrap();
        let family = BeliefFamily::bernoulli(model.states().to_vec(), "sun").unwrap();
        (model, family)
    }

    fn close(a: f64, b: f64) {
        assert!((a - b).abs() < 1e-9, "{a} != {b}");
    }

    #[test]
    fn meu_prefers_outdoors_at_high_sun_probability() {
        let (model, family) = party();
        let r = meu(&model, &family.at(0.8).unwrap()).unwrap();
        assert_eq!(r.best, ["outdoors"]);
        close(r.value, 80.0);
    }

    #[test]
    fn meu_reports_ties_in_declaration_order() {
        let (model, family) = party();
        // At the porch/indoors crossing both yield 46.25.
        let r = meu(&model, &family.at(0.375).unwrap()).unwrap();
        assert_eq!(r.best, ["porch", "indoors"]);
        close(r.value, 46.25);
    }

    #[test]
    fn meu_with_one_alternative_recommends_it() {
        let model = DecisionModel::new(
            vec!["up".into(), "down".into()],
            vec!["only".into()],
            vec![vec![3.0, -4.0]],
        )
        .unwrap();
        let d = Distribution::new(model.states().to_vec(), vec![0.5, 0.5]).unwrap();
        let r = meu(&model, &d).unwrap();
        assert_eq!(r.best, ["only"]);
        close(r.value, -0.5);
    }

    #[test]
    fn meu_rejects_a_foreign_distribution() {
        let (model, _) = party();
        let d = Distribution::new(vec!["hot".into(), "cold".into()], vec![0.5, 0.5]).unwrap();
        assert_eq!(meu(&model, &d), Err(Error::StateMismatch));
    }

    #[test]
    fn outcome_brittleness_at_the_party_prior() {
        let (model, family) = party();
        let r = brittleness_outcomes(&model, &family.at(0.8).unwrap()).unwrap();
        // Best payoffs: 100 under sun, 50 under rain.
        close(r.value("outdoors").unwrap(), 10.0);
        close(r.value("porch").unwrap(), 14.0);
        close(r.value("indoors").unwrap(), 48.0);
        assert_eq!(r.least_brittle, ["outdoors"]);
    }

    #[test]
    fn outcome_brittleness_under_a_point_mass() {
        let (model, _) = party();
        let d = Distribution::point_mass(model.states().to_vec(), "sun").unwrap();
        let r = brittleness_outcomes(&model, &d).unwrap();
        close(r.value("outdoors").unwrap(), 0.0);
        close(r.value("porch").unwrap(), 10.0);
        close(r.value("indoors").unwrap(), 60.0);
    }

    #[test]
    fn sole_alternative_has_zero_outcome_brittleness() {
        let model = DecisionModel::new(
            vec!["up".into(), "down".into()],
            vec!["only".into()],
            vec![vec![3.0, -4.0]],
        )
        .unwrap();
        let d = Distribution::new(model.states().to_vec(), vec![0.25, 0.75]).unwrap();
        let r = brittleness_outcomes(&model, &d).unwrap();
        close(r.value("only").unwrap(), 0.0);
        assert_eq!(r.least_brittle, ["only"]);
    }

    #[test]
    fn belief_brittleness_of_the_party_model() {
        let (model, family) = party();
        let r = brittleness_belief(&model, &family).unwrap();
        // Envelope integral 1495/24 minus line integrals 50, 55, 45.
        close(r.value("outdoors").unwrap(), 295.0 / 24.0);
        close(r.value("porch").unwrap(), 175.0 / 24.0);
        close(r.value("indoors").unwrap(), 415.0 / 24.0);
        assert_eq!(r.least_brittle, ["porch"]);
    }

    #[test]
    fn alternative_owning_the_whole_envelope_has_zero_belief_brittleness() {
        let model = DecisionModel::new(
            vec!["up".into(), "down".into()],
            vec!["steady".into(), "shaky".into()],
            vec![vec![10.0, 10.0], vec![2.0, 1.0]],
        )
        .unwrap();
        let family = BeliefFamily::bernoulli(model.states().to_vec(), "up").unwrap();
        let r = brittleness_belief(&model, &family).unwrap();
        close(r.value("steady").unwrap(), 0.0);
        close(r.value("shaky").unwrap(), 8.5);
    }

    #[test]
    fn party_clairvoyance_line_blends_per_state_bests() {
        let (model, family) = party();
        let line = clairvoyance_line(&model, &family).unwrap();
        close(line.intercept, 50.0);
        close(line.slope, 50.0);
        assert_eq!(line.label, "clairvoyance");
    }

    #[test]
    fn clairvoyance_line_of_a_single_alternative_is_its_own_line() {
        let model = DecisionModel::new(
            vec!["up".into(), "down".into()],
            vec!["only".into()],
            vec![vec![3.0, -4.0]],
        )
        .unwrap();
        let family = BeliefFamily::bernoulli(model.states().to_vec(), "up").unwrap();
        let line = clairvoyance_line(&model, &family).unwrap();
        close(line.intercept, -4.0);
        close(line.slope, 7.0);
    }

    #[test]
    fn clairvoyance_brittleness_of_the_party_model() {
        let (model, family) = party();
        let r = brittleness_clairvoyance(&model, &family).unwrap();
        // Clairvoyance integral is 75.
        close(r.value("outdoors").unwrap(), 25.0);
        close(r.value("porch").unwrap(), 20.0);
        close(r.value("indoors").unwrap(), 30.0);
        assert_eq!(r.least_brittle, ["porch"]);
    }

    #[test]
    fn clairvoyance_exceeds_belief_by_the_same_gap_everywhere() {
        let (model, family) = party();
        let belief = brittleness_belief(&model, &family).unwrap();
        let clair = brittleness_clairvoyance(&model, &family).unwrap();
        let gap = 305.0 / 24.0; // 75 - 1495/24
        for a in model.alternatives() {
            close(clair.value(a).unwrap() - belief.value(a).unwrap(), gap);
        }
    }

    #[test]
    fn rankings_sort_ascending_per_measure() {
        let (model, family) = party();
        let prior = family.at(0.8).unwrap();

        let by_outcomes =
            flexibility_ranking(&model, &family, BrittlenessKind::Outcomes, Some(&prior))
                .unwrap();
        let order: Vec<&str> = by_outcomes.iter().map(|(a, _)| a.as_str()).collect();
        assert_eq!(order, ["outdoors", "porch", "indoors"]);

        let by_belief =
            flexibility_ranking(&model, &family, BrittlenessKind::Belief, None).unwrap();
        let order: Vec<&str> = by_belief.iter().map(|(a, _)| a.as_str()).collect();
        assert_eq!(order, ["porch", "outdoors", "indoors"]);
        close(by_belief[0].1, 175.0 / 24.0);

        let by_clair =
            flexibility_ranking(&model, &family, BrittlenessKind::Clairvoyance, None).unwrap();
        let order: Vec<&str> = by_clair.iter().map(|(a, _)| a.as_str()).collect();
        assert_eq!(order, ["porch", "outdoors", "indoors"]);
    }

    #[test]
    fn outcomes_ranking_without_a_distribution_is_an_error() {
        let (model, family) = party();
        assert_eq!(
            flexibility_ranking(&model, &family, BrittlenessKind::Outcomes, None),
            Err(Error::MissingDistribution)
        );
    }
}
