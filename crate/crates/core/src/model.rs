//! Core model types: the payoff table, state distributions, and the
//! one-parameter belief family.
//!
//! A [`DecisionModel`] is a finite table of money payoffs indexed by
//! (alternative, state). Belief about the state is a [`Distribution`], and a
//! [`BeliefFamily`] is the line segment between two endpoint distributions:
//! `family.at(p)` blends `(1 - p) * endpoint0 + p * endpoint1`. The two-state
//! special case where the endpoints are opposite point masses is constructed
//! with [`BeliefFamily::bernoulli`].
//!
//! Construction validates. A `DecisionModel` that exists is well-formed, so
//! downstream operations only ever fail on lookups (unknown label) or
//! cross-model mismatches, never on shape.

use std::fmt;

use crate::error::Error;
use crate::tol;

/// A single defect found while checking candidate model parts.
///
/// Violations are plain data so a caller can collect and display all of them
/// at once; see [`DecisionModel::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    EmptyStates,
    EmptyAlternatives,
    EmptyStateLabel { index: usize },
    EmptyAlternativeLabel { index: usize },
    DuplicateState { label: String },
    DuplicateAlternative { label: String },
    /// The payoff table has the wrong number of rows for the alternative list.
    PayoffRowCount { expected: usize, found: usize },
    /// No payoff entry for this (alternative, state) pair.
    MissingPayoff { alternative: String, state: String },
    /// A payoff row has more entries than there are states.
    ExtraPayoffs { alternative: String, expected: usize, found: usize },
    NonFinitePayoff { alternative: String, state: String, value: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyStates => write!(f, "state list is empty"),
            Violation::EmptyAlternatives => write!(f, "alternative list is empty"),
            Violation::EmptyStateLabel { index } => {
                write!(f, "state {index} has an empty label")
            }
            Violation::EmptyAlternativeLabel { index } => {
                write!(f, "alternative {index} has an empty label")
            }
            Violation::DuplicateState { label } => {
                write!(f, "duplicate state label `{label}`")
            }
            Violation::DuplicateAlternative { label } => {
                write!(f, "duplicate alternative label `{label}`")
            }
            Violation::PayoffRowCount { expected, found } => {
                write!(f, "payoff table has {found} rows for {expected} alternatives")
            }
            Violation::MissingPayoff { alternative, state } => {
                write!(f, "no payoff for (`{alternative}`, `{state}`)")
            }
            Violation::ExtraPayoffs { alternative, expected, found } => {
                write!(
                    f,
                    "payoff row for `{alternative}` has {found} entries for {expected} states"
                )
            }
            Violation::NonFinitePayoff { alternative, state, value } => {
                write!(f, "payoff for (`{alternative}`, `{state}`) is {value}")
            }
        }
    }
}

/// The full list of violations that kept a [`DecisionModel`] from being built.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelViolations(pub Vec<Violation>);

impl fmt::Display for ModelViolations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.0 {
            if !first {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl std::error::Error for ModelViolations {}

fn duplicates(labels: &[String]) -> Vec<String> {
    let mut seen = std::collections::HashSet::new();
    let mut dups = Vec::new();
    for l in labels {
        if !seen.insert(l.as_str()) && !dups.contains(l) {
            dups.push(l.clone());
        }
    }
    dups
}

/// A finite single-stage decision problem: alternatives, states, and a money
/// payoff for every pair. Always well-formed once constructed.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionModel {
    states: Vec<String>,
    alternatives: Vec<String>,
    /// Alternative-major: `payoffs[d][x]` pays alternative `d` in state `x`.
    payoffs: Vec<Vec<f64>>,
}

impl DecisionModel {
    /// Builds a model from candidate parts, returning every violation if the
    /// parts do not form a complete finite payoff table.
    pub fn new(
        states: Vec<String>,
        alternatives: Vec<String>,
        payoffs: Vec<Vec<f64>>,
    ) -> Result<Self, ModelViolations> {
        let violations = Self::validate(&states, &alternatives, &payoffs);
        if violations.is_empty() {
            Ok(DecisionModel { states, alternatives, payoffs })
        } else {
            Err(ModelViolations(violations))
        }
    }

    /// Checks candidate parts and returns all defects found, in a fixed
    /// order: list-level problems first, then per-entry problems row by row.
    /// An empty result means [`DecisionModel::new`] will accept the parts.
    pub fn validate(
        states: &[String],
        alternatives: &[String],
        payoffs: &[Vec<f64>],
    ) -> Vec<Violation> {
        let mut out = Vec::new();
        if states.is_empty() {
            out.push(Violation::EmptyStates);
        }
        if alternatives.is_empty() {
            out.push(Violation::EmptyAlternatives);
        }
        for (i, s) in states.iter().enumerate() {
            if s.is_empty() {
                out.push(Violation::EmptyStateLabel { index: i });
            }
        }
        for (i, a) in alternatives.iter().enumerate() {
            if a.is_empty() {
                out.push(Violation::EmptyAlternativeLabel { index: i });
            }
        }
        for label in duplicates(states) {
            out.push(Violation::DuplicateState { label });
        }
        for label in duplicates(alternatives) {
            out.push(Violation::DuplicateAlternative { label });
        }
        if payoffs.len() != alternatives.len() {
            out.push(Violation::PayoffRowCount {
                expected: alternatives.len(),
                found: payoffs.len(),
            });
        }
        for (d, row) in payoffs.iter().enumerate().take(alternatives.len()) {
            let alt = &alternatives[d];
            if row.len() > states.len() {
                out.push(Violation::ExtraPayoffs {
                    alternative: alt.clone(),
                    expected: states.len(),
                    found: row.len(),
                });
            }
            for (x, state) in states.iter().enumerate() {
                match row.get(x) {
                    None => out.push(Violation::MissingPayoff {
                        alternative: alt.clone(),
                        state: state.clone(),
                    }),
                    Some(v) if !v.is_finite() => out.push(Violation::NonFinitePayoff {
                        alternative: alt.clone(),
                        state: state.clone(),
                        value: *v,
                    }),
                    Some(_) => {}
                }
            }
        }
        out
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s == label)
    }

    pub fn alternative_index(&self, label: &str) -> Option<usize> {
        self.alternatives.iter().position(|a| a == label)
    }

    /// Payoff of `alternative` in `state`, by label.
    pub fn payoff(&self, alternative: &str, state: &str) -> crate::Result<f64> {
        let d = self
            .alternative_index(alternative)
            .ok_or_else(|| Error::UnknownAlternative(alternative.to_owned()))?;
        let x = self
            .state_index(state)
            .ok_or_else(|| Error::UnknownState(state.to_owned()))?;
        Ok(self.payoffs[d][x])
    }

    /// Payoff by index. Indices must come from this model.
    pub fn payoff_at(&self, alternative: usize, state: usize) -> f64 {
        self.payoffs[alternative][state]
    }

    /// Best payoff available in `state` across all alternatives, i.e. what a
    /// decision maker who already knew the state would collect.
    pub fn best_payoff_in_state(&self, state: usize) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for row in &self.payoffs {
            if row[state] > best {
                best = row[state];
            }
        }
        best
    }

    /// Expected payoff of the alternative at `alternative` under `dist`,
    /// which must be indexed by this model's state list.
    pub fn expected_payoff(&self, alternative: usize, dist: &Distribution) -> f64 {
        debug_assert!(dist.matches(&self.states));
        let mut total = 0.0;
        for (x, w) in dist.weights().iter().enumerate() {
            total += w * self.payoffs[alternative][x];
        }
        total
    }
}

/// A probability distribution over a fixed state list. Weights are
/// nonnegative and sum to one within [`tol::VALUE_EPS`].
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    states: Vec<String>,
    weights: Vec<f64>,
}

impl Distribution {
    pub fn new(states: Vec<String>, weights: Vec<f64>) -> crate::Result<Self> {
        if states.is_empty() {
            return Err(Error::InvalidDistribution("state list is empty".into()));
        }
        if weights.len() != states.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} weights for {} states",
                weights.len(),
                states.len()
            )));
        }
        for (s, w) in states.iter().zip(&weights) {
            if !w.is_finite() || *w < -tol::VALUE_EPS || *w > 1.0 + tol::VALUE_EPS {
                return Err(Error::InvalidDistribution(format!(
                    "weight {w} for `{s}` lies outside [0, 1]"
                )));
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > tol::VALUE_EPS {
            return Err(Error::InvalidDistribution(format!(
                "weights sum to {sum}, expected 1"
            )));
        }
        Ok(Distribution { states, weights })
    }

    /// All mass on a single state.
    pub fn point_mass(states: Vec<String>, state: &str) -> crate::Result<Self> {
        let idx = states
            .iter()
            .position(|s| s == state)
            .ok_or_else(|| Error::UnknownState(state.to_owned()))?;
        let mut weights = vec![0.0; states.len()];
        weights[idx] = 1.0;
        Ok(Distribution { states, weights })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Probability of `state`, by label.
    pub fn weight(&self, state: &str) -> crate::Result<f64> {
        let idx = self
            .states
            .iter()
            .position(|s| s == state)
            .ok_or_else(|| Error::UnknownState(state.to_owned()))?;
        Ok(self.weights[idx])
    }

    /// True when this distribution is indexed by exactly `states`, in order.
    pub fn matches(&self, states: &[String]) -> bool {
        self.states == states
    }
}

/// The line segment of distributions between `endpoint0` (parameter 0) and
/// `endpoint1` (parameter 1). Both endpoints share one state list.
#[derive(Debug, Clone, PartialEq)]
pub struct BeliefFamily {
    endpoint0: Distribution,
    endpoint1: Distribution,
}

impl BeliefFamily {
    pub fn new(endpoint0: Distribution, endpoint1: Distribution) -> crate::Result<Self> {
        if endpoint0.states != endpoint1.states {
            return Err(Error::StateMismatch);
        }
        Ok(BeliefFamily { endpoint0, endpoint1 })
    }

    /// Two-state family whose parameter is the probability of
    /// `success_state`: endpoint 1 is all mass on `success_state`, endpoint 0
    /// all mass on the other state.
    pub fn bernoulli(states: Vec<String>, success_state: &str) -> crate::Result<Self> {
        if states.len() != 2 {
            return Err(Error::InvalidDistribution(format!(
                "a bernoulli family needs exactly 2 states, got {}",
                states.len()
            )));
        }
        let success = states
            .iter()
            .position(|s| s == success_state)
            .ok_or_else(|| Error::UnknownState(success_state.to_owned()))?;
        let failure = states[1 - success].clone();
        let endpoint0 = Distribution::point_mass(states.clone(), &failure)?;
        let endpoint1 = Distribution::point_mass(states, success_state)?;
        Ok(BeliefFamily { endpoint0, endpoint1 })
    }

    pub fn endpoint0(&self) -> &Distribution {
        &self.endpoint0
    }

    pub fn endpoint1(&self) -> &Distribution {
        &self.endpoint1
    }

    pub fn states(&self) -> &[String] {
        &self.endpoint0.states
    }

    /// The member distribution at parameter `p`:
    /// `(1 - p) * endpoint0 + p * endpoint1`.
    pub fn at(&self, p: f64) -> crate::Result<Distribution> {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(Error::ParameterOutOfRange(p));
        }
        let weights = self
            .endpoint0
            .weights
            .iter()
            .zip(&self.endpoint1.weights)
            .map(|(w0, w1)| (1.0 - p) * w0 + p * w1)
            .collect();
        Distribution::new(self.endpoint0.states.clone(), weights)
    }
}
