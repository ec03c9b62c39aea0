//! Evidence and belief revision.
//!
//! An [`EvidenceModel`] is a finite set of report outcomes with a likelihood
//! `P(outcome | state)` for every pair, plus the price of looking at the
//! report. [`posterior`] conditions a prior on one observed outcome;
//! [`preposterior`] gives the marginal probability of each outcome before it
//! arrives. Conditioning on an outcome whose marginal probability is zero
//! (at or below [`crate::tol::ZERO_EVIDENCE_EPS`]) is an error rather than a
//! silent 0/0.

use crate::error::Error;
use crate::model::Distribution;
use crate::tol;

/// A noisy report about the state: outcomes, per-state outcome
/// probabilities, and the cost of observing the report.
#[derive(Debug, Clone, PartialEq)]
pub struct EvidenceModel {
    outcomes: Vec<String>,
    states: Vec<String>,
    /// State-major: `likelihood[x][e]` is `P(outcome e | state x)`, so each
    /// row is a distribution over outcomes.
    likelihood: Vec<Vec<f64>>,
    info_cost: f64,
}

impl EvidenceModel {
    /// Builds an evidence model from a state-major likelihood table. Every
    /// row must be a probability distribution over the outcomes and the
    /// observation cost must be a nonnegative finite amount.
    pub fn new(
        outcomes: Vec<String>,
        states: Vec<String>,
        likelihood: Vec<Vec<f64>>,
        info_cost: f64,
    ) -> crate::Result<Self> {
        if outcomes.is_empty() {
            return Err(Error::InvalidEvidence("outcome list is empty".into()));
        }
        if states.is_empty() {
            return Err(Error::InvalidEvidence("state list is empty".into()));
        }
        for (i, o) in outcomes.iter().enumerate() {
            if o.is_empty() {
                return Err(Error::InvalidEvidence(format!("outcome {i} has an empty label")));
            }
            if outcomes[..i].contains(o) {
                return Err(Error::InvalidEvidence(format!("duplicate outcome label `{o}`")));
            }
        }
        if likelihood.len() != states.len() {
            return Err(Error::InvalidEvidence(format!(
                "likelihood has {} rows for {} states",
                likelihood.len(),
                states.len()
            )));
        }
        for (x, row) in likelihood.iter().enumerate() {
            let state = &states[x];
            if row.len() != outcomes.len() {
                return Err(Error::InvalidEvidence(format!(
                    "likelihood row for `{state}` has {} entries for {} outcomes",
                    row.len(),
                    outcomes.len()
                )));
            }
            for (p, o) in row.iter().zip(&outcomes) {
                if !p.is_finite() || *p < 0.0 || *p > 1.0 {
                    return Err(Error::InvalidEvidence(format!(
                        "P(`{o}` | `{state}`) is {p}"
                    )));
                }
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > tol::VALUE_EPS {
                return Err(Error::InvalidEvidence(format!(
                    "likelihood row for `{state}` sums to {sum}"
                )));
            }
        }
        if !info_cost.is_finite() || info_cost < 0.0 {
            return Err(Error::InvalidEvidence(format!(
                "observation cost {info_cost} is not a nonnegative amount"
            )));
        }
        Ok(EvidenceModel { outcomes, states, likelihood, info_cost })
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn info_cost(&self) -> f64 {
        self.info_cost
    }

    /// `P(outcome | state)` by label.
    pub fn likelihood(&self, outcome: &str, state: &str) -> crate::Result<f64> {
        let e = self.outcome_index(outcome)?;
        let x = self
            .states
            .iter()
            .position(|s| s == state)
            .ok_or_else(|| Error::UnknownState(state.to_owned()))?;
        Ok(self.likelihood[x][e])
    }

    /// `P(outcome | state)` by index. Indices must come from this model.
    pub fn likelihood_at(&self, outcome: usize, state: usize) -> f64 {
        self.likelihood[state][outcome]
    }

    pub fn outcome_index(&self, outcome: &str) -> crate::Result<usize> {
        self.outcomes
            .iter()
            .position(|o| o == outcome)
            .ok_or_else(|| Error::UnknownEvidence(outcome.to_owned()))
    }

    /// Marginal probability of `outcome` (by index) under `prior`.
    fn marginal(&self, outcome: usize, prior: &Distribution) -> f64 {
        prior
            .weights()
            .iter()
            .enumerate()
            .map(|(x, w)| w * self.likelihood[x][outcome])
            .sum()
    }
}

/// Belief after observing `outcome`, by Bayes' rule.
pub fn posterior(
    prior: &Distribution,
    evidence: &EvidenceModel,
    outcome: &str,
) -> crate::Result<Distribution> {
    if !prior.matches(evidence.states()) {
        return Err(Error::StateMismatch);
    }
    let e = evidence.outcome_index(outcome)?;
    let marginal = evidence.marginal(e, prior);
    if marginal <= tol::ZERO_EVIDENCE_EPS {
        return Err(Error::ZeroProbabilityEvidence(outcome.to_owned()));
    }
    let weights = prior
        .weights()
        .iter()
        .enumerate()
        .map(|(x, w)| w * evidence.likelihood[x][e] / marginal)
        .collect();
    Distribution::new(evidence.states.clone(), weights)
}

/// Marginal probability of every outcome under `prior`, in outcome
/// declaration order.
pub fn preposterior(
    prior: &Distribution,
    evidence: &EvidenceModel,
) -> crate::Result<Vec<(String, f64)>> {
    if !prior.matches(evidence.states()) {
        return Err(Error::StateMismatch);
    }
    Ok(evidence
        .outcomes
        .iter()
        .enumerate()
        .map(|(e, o)| (o.clone(), evidence.marginal(e, prior)))
        .collect())
}
