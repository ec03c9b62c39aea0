//! Two-stage commitments and the value of being able to change your mind.
//!
//! The first stage picks a [`Commitment`]: an initial action plus the terms
//! under which it may later be revised. A commitment that observes the
//! evidence pays the observation cost, waits for the report, and may then
//! switch to one of its revision targets for a switching fee. A hard
//! commitment observes nothing, pays nothing, and keeps its initial action.
//!
//! [`value_with_flexibility`] is the expected net value of a commitment when
//! every later revision is made optimally. [`flexibility_value`] compares
//! that against [`baseline_value`], the best the decision maker could do by
//! committing today without any of the machinery: the difference is what the
//! revision option is worth.

use crate::bayes::{posterior, preposterior, EvidenceModel};
use crate::error::Error;
use crate::model::{DecisionModel, Distribution};
use crate::tol;

/// An initial action bundled with its revision terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Commitment {
    pub label: String,
    pub initial_action: String,
    /// Alternatives the commitment may switch to after seeing the evidence.
    /// Never contains the initial action; staying is always allowed anyway.
    pub revision_targets: Vec<String>,
    pub switch_cost: f64,
    pub observes_evidence: bool,
}

/// A complete two-stage decision problem. Always well-formed once
/// constructed: every action named by a commitment exists in the base model
/// and the prior and evidence are indexed by the base model's states.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoStageModel {
    base: DecisionModel,
    prior: Distribution,
    evidence: EvidenceModel,
    commitments: Vec<Commitment>,
}

impl TwoStageModel {
    pub fn new(
        base: DecisionModel,
        prior: Distribution,
        evidence: EvidenceModel,
        commitments: Vec<Commitment>,
    ) -> crate::Result<Self> {
        if !prior.matches(base.states()) {
            return Err(Error::InvalidTwoStage(
                "prior is indexed by a different state list than the base model".into(),
            ));
        }
        if evidence.states() != base.states() {
            return Err(Error::InvalidTwoStage(
                "evidence is indexed by a different state list than the base model".into(),
            ));
        }
        if commitments.is_empty() {
            return Err(Error::InvalidTwoStage("commitment list is empty".into()));
        }
        for (i, c) in commitments.iter().enumerate() {
            if c.label.is_empty() {
                return Err(Error::InvalidTwoStage(format!("commitment {i} has an empty label")));
            }
            if commitments[..i].iter().any(|prev| prev.label == c.label) {
                return Err(Error::InvalidTwoStage(format!(
                    "duplicate commitment label `{}`",
                    c.label
                )));
            }
            let who = &c.label;
            if base.alternative_index(&c.initial_action).is_none() {
                return Err(Error::InvalidTwoStage(format!(
                    "commitment `{who}`: unknown initial action `{}`",
                    c.initial_action
                )));
            }
            if !c.switch_cost.is_finite() || c.switch_cost < 0.0 {
                return Err(Error::InvalidTwoStage(format!(
                    "commitment `{who}`: switch cost {} is not a nonnegative amount",
                    c.switch_cost
                )));
            }
            for (j, t) in c.revision_targets.iter().enumerate() {
                if base.alternative_index(t).is_none() {
                    return Err(Error::InvalidTwoStage(format!(
                        "commitment `{who}`: unknown revision target `{t}`"
                    )));
                }
                if *t == c.initial_action {
                    return Err(Error::InvalidTwoStage(format!(
                        "commitment `{who}`: revision target `{t}` is the initial action"
                    )));
                }
                if c.revision_targets[..j].contains(t) {
                    return Err(Error::InvalidTwoStage(format!(
                        "commitment `{who}`: duplicate revision target `{t}`"
                    )));
                }
            }
            if !c.revision_targets.is_empty() && !c.observes_evidence {
                return Err(Error::InvalidTwoStage(format!(
                    "commitment `{who}`: revision targets require observing the evidence"
                )));
            }
        }
        Ok(TwoStageModel { base, prior, evidence, commitments })
    }

    pub fn base(&self) -> &DecisionModel {
        &self.base
    }

    pub fn prior(&self) -> &Distribution {
        &self.prior
    }

    pub fn evidence(&self) -> &EvidenceModel {
        &self.evidence
    }

    pub fn commitments(&self) -> &[Commitment] {
        &self.commitments
    }

    pub fn commitment(&self, label: &str) -> crate::Result<&Commitment> {
        self.commitments
            .iter()
            .find(|c| c.label == label)
            .ok_or_else(|| Error::UnknownCommitment(label.to_owned()))
    }
}

/// One evidence branch of a resolved commitment: what gets done and what it
/// nets. `evidence` is `None` for a commitment that observes nothing and has
/// a single unconditional branch.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyRow {
    pub evidence: Option<String>,
    pub probability: f64,
    pub action: String,
    pub net_value: f64,
}

/// Full accounting for one commitment: its optimal branch-by-branch policy
/// and how the resulting value compares to committing outright.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyReport {
    pub commitment: String,
    pub rows: Vec<PolicyRow>,
    pub value_with_flexibility: f64,
    pub baseline: f64,
    pub flexibility_value: f64,
}

/// Expected payoff of ending up on `action` under `dist`, net of the
/// commitment's observation cost and, if `action` is not the initial action,
/// its switch cost.
pub fn net_value(
    ts: &TwoStageModel,
    commitment: &Commitment,
    action: &str,
    dist: &Distribution,
) -> crate::Result<f64> {
    if !dist.matches(ts.base.states()) {
        return Err(Error::StateMismatch);
    }
    let staying = action == commitment.initial_action;
    if !staying && !commitment.revision_targets.iter().any(|t| t == action) {
        return Err(Error::IllegalRevision {
            commitment: commitment.label.clone(),
            action: action.to_owned(),
        });
    }
    let d = ts
        .base
        .alternative_index(action)
        .ok_or_else(|| Error::UnknownAlternative(action.to_owned()))?;
    let mut value = ts.base.expected_payoff(d, dist);
    if commitment.observes_evidence {
        value -= ts.evidence.info_cost();
    }
    if !staying {
        value -= commitment.switch_cost;
    }
    Ok(value)
}

/// Best action after observing `outcome`: the initial action and every
/// revision target are scored by [`net_value`] under the posterior, and the
/// first strict maximum in declaration order wins.
pub fn revision_policy(
    ts: &TwoStageModel,
    commitment: &Commitment,
    outcome: &str,
) -> crate::Result<(String, f64)> {
    if !commitment.observes_evidence {
        return Err(Error::NoEvidenceAccess(commitment.label.clone()));
    }
    let post = posterior(&ts.prior, &ts.evidence, outcome)?;
    let mut best: Option<(String, f64)> = None;
    for action in std::iter::once(&commitment.initial_action).chain(&commitment.revision_targets)
    {
        let value = net_value(ts, commitment, action, &post)?;
        match &best {
            Some((_, v)) if value <= *v => {}
            _ => best = Some((action.clone(), value)),
        }
    }
    Ok(best.expect("a commitment always has its initial action as an option"))
}

/// The evidence branches of a commitment under optimal revision, each with
/// its preposterior probability. Branches with zero probability are skipped;
/// a commitment that observes nothing gets a single unconditional branch.
fn policy_rows(ts: &TwoStageModel, commitment: &Commitment) -> crate::Result<Vec<PolicyRow>> {
    if !commitment.observes_evidence {
        let value = net_value(ts, commitment, &commitment.initial_action, &ts.prior)?;
        return Ok(vec![PolicyRow {
            evidence: None,
            probability: 1.0,
            action: commitment.initial_action.clone(),
            net_value: value,
        }]);
    }
    let mut rows = Vec::new();
    for (outcome, probability) in preposterior(&ts.prior, &ts.evidence)? {
        if probability <= tol::ZERO_EVIDENCE_EPS {
            continue;
        }
        let (action, value) = revision_policy(ts, commitment, &outcome)?;
        rows.push(PolicyRow {
            evidence: Some(outcome),
            probability,
            action,
            net_value: value,
        });
    }
    Ok(rows)
}

/// Expected net value of `commitment` when each evidence branch is resolved
/// by [`revision_policy`].
pub fn value_with_flexibility(
    ts: &TwoStageModel,
    commitment: &Commitment,
) -> crate::Result<f64> {
    let rows = policy_rows(ts, commitment)?;
    Ok(rows.iter().map(|r| r.probability * r.net_value).sum())
}

/// The best expected payoff available by committing to one of the listed
/// initial actions today, with no observation and no switching. This is the
/// bar a revisable commitment has to clear.
pub fn baseline_value(ts: &TwoStageModel) -> f64 {
    ts.commitments
        .iter()
        .map(|c| {
            let d = ts
                .base
                .alternative_index(&c.initial_action)
                .expect("validated at construction");
            ts.base.expected_payoff(d, &ts.prior)
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Branch-by-branch report for one commitment, including the comparison
/// against [`baseline_value`].
pub fn flexibility_value(
    ts: &TwoStageModel,
    commitment: &Commitment,
) -> crate::Result<PolicyReport> {
    let rows = policy_rows(ts, commitment)?;
    let value_with_flexibility: f64 = rows.iter().map(|r| r.probability * r.net_value).sum();
    let baseline = baseline_value(ts);
    Ok(PolicyReport {
        commitment: commitment.label.clone(),
        rows,
        value_with_flexibility,
        baseline,
        flexibility_value: value_with_flexibility - baseline,
    })
}

/// The commitment with the highest flexibility value, provided that value is
/// positive beyond [`tol::VALUE_EPS`]. Ties keep the earliest declared
/// commitment; `None` means no commitment beats committing outright.
pub fn most_flexible_commitment(ts: &TwoStageModel) -> Option<(String, f64)> {
    let baseline = baseline_value(ts);
    let mut best: Option<(String, f64)> = None;
    for c in &ts.commitments {
        let value = value_with_flexibility(ts, c)
            .expect("a validated two-stage model evaluates every commitment")
            - baseline;
        match &best {
            Some((_, v)) if value <= *v => {}
            _ => best = Some((c.label.clone(), value)),
        }
    }
    best.filter(|(_, v)| *v > tol::VALUE_EPS)
}
