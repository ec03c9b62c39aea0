//! The JSON model file format.
//!
//! A document names its states and alternatives, gives an
//! alternative-major payoff matrix, and describes belief as either a
//! `bernoulli` family (two states, parameter = probability of
//! `success_state`) or a general `mixture` family with explicit endpoint
//! weight vectors. Two optional sections extend the model: `evidence` (a
//! state-major likelihood table over report outcomes plus an observation
//! cost) and `commitments`. When `commitments` is present the document also
//! needs `evidence`, and the whole two-stage model is built with the prior
//! taken from the belief family at the document's `p` (or a caller
//! override).
//!
//! Parsing is total: every accepted document maps to fully validated domain
//! values, and every rejection names the offending key path.

use dflex_core::{
    BeliefFamily, Commitment, DecisionModel, Distribution, EvidenceModel, TwoStageModel,
    Violation,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDoc {
    states: Vec<String>,
    alternatives: Vec<String>,
    payoffs: Vec<Vec<f64>>,
    belief: BeliefDoc,
    #[serde(default)]
    evidence: Option<EvidenceDoc>,
    #[serde(default)]
    commitments: Option<Vec<CommitmentDoc>>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum BeliefDoc {
    Bernoulli { success_state: String, p: f64 },
    Mixture { endpoint0: Vec<f64>, endpoint1: Vec<f64>, p: f64 },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EvidenceDoc {
    outcomes: Vec<String>,
    /// State-major: row `i` is the outcome distribution in state `i`.
    likelihood: Vec<Vec<f64>>,
    info_cost: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CommitmentDoc {
    label: String,
    initial_action: String,
    #[serde(default)]
    revision_targets: Vec<String>,
    #[serde(default)]
    switch_cost: f64,
    #[serde(default)]
    observes_evidence: bool,
}

/// A fully validated model file.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedModel {
    pub model: DecisionModel,
    pub family: BeliefFamily,
    /// The belief parameter in force: the file's `p` unless overridden.
    pub prior_p: f64,
    pub two_stage: Option<TwoStageModel>,
}

fn violation_path(v: &Violation) -> &'static str {
    match v {
        Violation::EmptyStates
        | Violation::EmptyStateLabel { .. }
        | Violation::DuplicateState { .. } => "states",
        Violation::EmptyAlternatives
        | Violation::EmptyAlternativeLabel { .. }
        | Violation::DuplicateAlternative { .. } => "alternatives",
        Violation::PayoffRowCount { .. }
        | Violation::MissingPayoff { .. }
        | Violation::ExtraPayoffs { .. }
        | Violation::NonFinitePayoff { .. } => "payoffs",
    }
}

fn check_probability(p: f64, path: &str) -> Result<(), CliError> {
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(CliError::Model(format!("{path}: {p} lies outside [0, 1]")));
    }
    Ok(())
}

fn build_family(doc: &BeliefDoc, model: &DecisionModel) -> Result<BeliefFamily, CliError> {
    let states = model.states().to_vec();
    match doc {
        BeliefDoc::Bernoulli { success_state, p } => {
            check_probability(*p, "belief.p")?;
            BeliefFamily::bernoulli(states, success_state)
                .map_err(|e| CliError::Model(format!("belief: {e}")))
        }
        BeliefDoc::Mixture { endpoint0, endpoint1, p } => {
            check_probability(*p, "belief.p")?;
            let e0 = Distribution::new(states.clone(), endpoint0.clone())
                .map_err(|e| CliError::Model(format!("belief.endpoint0: {e}")))?;
            let e1 = Distribution::new(states, endpoint1.clone())
                .map_err(|e| CliError::Model(format!("belief.endpoint1: {e}")))?;
            BeliefFamily::new(e0, e1).map_err(|e| CliError::Model(format!("belief: {e}")))
        }
    }
}

fn build_evidence(doc: &EvidenceDoc, states: &[String]) -> Result<EvidenceModel, CliError> {
    if doc.outcomes.is_empty() {
        return Err(CliError::Model("evidence.outcomes: list is empty".into()));
    }
    for (i, o) in doc.outcomes.iter().enumerate() {
        if o.is_empty() {
            return Err(CliError::Model(format!("evidence.outcomes[{i}]: empty label")));
        }
        if doc.outcomes[..i].contains(o) {
            return Err(CliError::Model(format!(
                "evidence.outcomes: duplicate label `{o}`"
            )));
        }
    }
    if doc.likelihood.len() != states.len() {
        return Err(CliError::Model(format!(
            "evidence.likelihood: {} rows for {} states",
            doc.likelihood.len(),
            states.len()
        )));
    }
    for (x, row) in doc.likelihood.iter().enumerate() {
        if row.len() != doc.outcomes.len() {
            return Err(CliError::Model(format!(
                "evidence.likelihood[{x}]: {} entries for {} outcomes",
                row.len(),
                doc.outcomes.len()
            )));
        }
        for p in row {
            if !p.is_finite() || *p < 0.0 || *p > 1.0 {
                return Err(CliError::Model(format!(
                    "evidence.likelihood[{x}]: entry {p} lies outside [0, 1]"
                )));
            }
        }
        let sum: f64 = row.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(CliError::Model(format!(
                "evidence.likelihood[{x}]: row for state `{}` sums to {sum}",
                states[x]
            )));
        }
    }
    if !doc.info_cost.is_finite() || doc.info_cost < 0.0 {
        return Err(CliError::Model(format!(
            "evidence.info_cost: {} is not a nonnegative amount",
            doc.info_cost
        )));
    }
    EvidenceModel::new(
        doc.outcomes.clone(),
        states.to_vec(),
        doc.likelihood.clone(),
        doc.info_cost,
    )
    .map_err(|e| CliError::Model(format!("evidence: {e}")))
}

/// Parses and validates a model document. `p_override` replaces the file's
/// belief parameter for everything downstream, including the two-stage
/// prior; the file's own `p` must be a probability either way.
pub fn parse_model(text: &str, p_override: Option<f64>) -> Result<ParsedModel, CliError> {
    let doc: ModelDoc =
        serde_json::from_str(text).map_err(|e| CliError::Model(e.to_string()))?;

    let model = DecisionModel::new(doc.states, doc.alternatives, doc.payoffs).map_err(|vs| {
        let listed: Vec<String> =
            vs.0.iter().map(|v| format!("{}: {v}", violation_path(v))).collect();
        CliError::Model(listed.join("; "))
    })?;

    let family = build_family(&doc.belief, &model)?;
    let file_p = match doc.belief {
        BeliefDoc::Bernoulli { p, .. } | BeliefDoc::Mixture { p, .. } => p,
    };
    let prior_p = p_override.unwrap_or(file_p);

    let evidence = match &doc.evidence {
        Some(ev) => Some(build_evidence(ev, model.states())?),
        None => None,
    };

    let two_stage = match doc.commitments {
        None => None,
        Some(commitment_docs) => {
            let evidence = evidence.ok_or_else(|| {
                CliError::Model(
                    "commitments: an evidence section is required when commitments are present"
                        .into(),
                )
            })?;
            let commitments: Vec<Commitment> = commitment_docs
                .into_iter()
                .map(|c| Commitment {
                    label: c.label,
                    initial_action: c.initial_action,
                    revision_targets: c.revision_targets,
                    switch_cost: c.switch_cost,
                    observes_evidence: c.observes_evidence,
                })
                .collect();
            let prior = family
                .at(prior_p)
                .map_err(|e| CliError::Model(format!("belief.p: {e}")))?;
            Some(
                TwoStageModel::new(model.clone(), prior, evidence, commitments)
                    .map_err(|e| CliError::Model(format!("commitments: {e}")))?,
            )
        }
    };

    Ok(ParsedModel { model, family, prior_p, two_stage })
}

#[derive(Serialize)]
struct ModelOut {
    states: Vec<String>,
    alternatives: Vec<String>,
    payoffs: Vec<Vec<f64>>,
    belief: BeliefOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    evidence: Option<EvidenceOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    commitments: Option<Vec<CommitmentOut>>,
}

#[derive(Serialize)]
struct BeliefOut {
    kind: &'static str,
    endpoint0: Vec<f64>,
    endpoint1: Vec<f64>,
    p: f64,
}

#[derive(Serialize)]
struct EvidenceOut {
    outcomes: Vec<String>,
    likelihood: Vec<Vec<f64>>,
    info_cost: f64,
}

#[derive(Serialize)]
struct CommitmentOut {
    label: String,
    initial_action: String,
    revision_targets: Vec<String>,
    switch_cost: f64,
    observes_evidence: bool,
}

/// Renders a parsed model back into document form. The belief family is
/// always written in its canonical `mixture` form, so re-parsing the output
/// yields exactly the same domain values.
pub fn render_model(parsed: &ParsedModel) -> String {
    let model = &parsed.model;
    let payoffs = (0..model.alternatives().len())
        .map(|d| (0..model.states().len()).map(|x| model.payoff_at(d, x)).collect())
        .collect();
    let out = ModelOut {
        states: model.states().to_vec(),
        alternatives: model.alternatives().to_vec(),
        payoffs,
        belief: BeliefOut {
            kind: "mixture",
            endpoint0: parsed.family.endpoint0().weights().to_vec(),
            endpoint1: parsed.family.endpoint1().weights().to_vec(),
            p: parsed.prior_p,
        },
        evidence: parsed.two_stage.as_ref().map(|ts| {
            let ev = ts.evidence();
            EvidenceOut {
                outcomes: ev.outcomes().to_vec(),
                likelihood: (0..ev.states().len())
                    .map(|x| {
                        (0..ev.outcomes().len()).map(|e| ev.likelihood_at(e, x)).collect()
                    })
                    .collect(),
                info_cost: ev.info_cost(),
            }
        }),
        commitments: parsed.two_stage.as_ref().map(|ts| {
            ts.commitments()
                .iter()
                .map(|c| CommitmentOut {
                    label: c.label.clone(),
                    initial_action: c.initial_action.clone(),
                    revision_targets: c.revision_targets.clone(),
                    switch_cost: c.switch_cost,
                    observes_evidence: c.observes_evidence,
                })
                .collect()
        }),
    };
    let mut text = serde_json::to_string_pretty(&out).expect("model serialization");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    const PARTY: &str = r#"{
        "states": ["sun", "rain"],
        "alternatives": ["outdoors", "porch", "indoors"],
        "payoffs": [[100, 0], [90, 20], [40, 50]],
        "belief": {"kind": "bernoulli", "success_state": "sun", "p": 0.8}
    }"#;

    const PARTY_DYNAMIC: &str = r#"{
        "states": ["sun", "rain"],
        "alternatives": ["outdoors", "porch", "indoors"],
        "payoffs": [[100, 0], [90, 20], [40, 50]],
        "belief": {"kind": "bernoulli", "success_state": "sun", "p": 0.7},
        "evidence": {
            "outcomes": ["sun-report", "rain-report"],
            "likelihood": [[0.9, 0.1], [0.1, 0.9]],
            "info_cost": 1.0
        },
        "commitments": [
            {"label": "hard-outdoors", "initial_action": "outdoors"},
            {"label": "hard-indoors", "initial_action": "indoors"},
            {"label": "porch-option", "initial_action": "porch",
             "revision_targets": ["outdoors", "indoors"],
             "switch_cost": 5.0, "observes_evidence": true}
        ]
    }"#;

    #[test]
    fn party_document_parses() {
        let parsed = parse_model(PARTY, None).unwrap();
        assert_eq!(parsed.model.states(), ["sun", "rain"]);
        assert_eq!(parsed.model.alternatives(), ["outdoors", "porch", "indoors"]);
        assert_eq!(parsed.model.payoff("porch", "rain").unwrap(), 20.0);
        assert_eq!(parsed.prior_p, 0.8);
        assert!(parsed.two_stage.is_none());
        let expected =
            BeliefFamily::bernoulli(vec!["sun".into(), "rain".into()], "sun").unwrap();
        assert_eq!(parsed.family, expected);
    }

    #[test]
    fn the_parameter_override_wins() {
        let parsed = parse_model(PARTY, Some(0.25)).unwrap();
        assert_eq!(parsed.prior_p, 0.25);
    }

    #[test]
    fn mixture_beliefs_parse_to_the_same_family() {
        let doc = r#"{
            "states": ["sun", "rain"],
            "alternatives": ["porch"],
            "payoffs": [[90, 20]],
            "belief": {"kind": "mixture", "endpoint0": [0.0, 1.0],
                       "endpoint1": [1.0, 0.0], "p": 0.8}
        }"#;
        let parsed = parse_model(doc, None).unwrap();
        let expected =
            BeliefFamily::bernoulli(vec!["sun".into(), "rain".into()], "sun").unwrap();
        assert_eq!(parsed.family, expected);
    }

    #[test]
    fn dynamic_document_parses() {
        let parsed = parse_model(PARTY_DYNAMIC, None).unwrap();
        let ts = parsed.two_stage.as_ref().unwrap();
        assert_eq!(ts.commitments().len(), 3);
        assert_eq!(ts.evidence().info_cost(), 1.0);
        assert_eq!(ts.evidence().likelihood("rain-report", "rain").unwrap(), 0.9);
        assert!((ts.prior().weights()[0] - 0.7).abs() < 1e-12);
        let option = ts.commitment("porch-option").unwrap();
        assert!(option.observes_evidence);
        assert_eq!(option.switch_cost, 5.0);
        let hard = ts.commitment("hard-outdoors").unwrap();
        assert!(!hard.observes_evidence);
        assert_eq!(hard.switch_cost, 0.0);
        assert!(hard.revision_targets.is_empty());
    }

    #[test]
    fn rendering_round_trips_to_identical_domain_values() {
        for doc in [PARTY, PARTY_DYNAMIC] {
            let parsed = parse_model(doc, None).unwrap();
            let rendered = render_model(&parsed);
            let reparsed = parse_model(&rendered, None).unwrap();
            assert_eq!(parsed, reparsed);
        }
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let err = parse_model("{\n  \"states\": [,]\n}", None).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        let message = err.to_string();
        assert!(message.contains("line 2"), "{message}");
        assert!(message.contains("column"), "{message}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let doc = PARTY.replacen("\"states\"", "\"notes\": [], \"states\"", 1);
        let err = parse_model(&doc, None).unwrap_err();
        assert!(err.to_string().contains("notes"), "{err}");
    }

    #[test]
    fn model_violations_name_their_section() {
        let doc = r#"{
            "states": ["sun", "rain"],
            "alternatives": ["outdoors", "porch", "indoors"],
            "payoffs": [[100, 0], [90, 20]],
            "belief": {"kind": "bernoulli", "success_state": "sun", "p": 0.8}
        }"#;
        let err = parse_model(doc, None).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("payoffs:"), "{err}");
    }

    #[test]
    fn belief_parameter_must_be_a_probability() {
        let doc = PARTY.replace("0.8", "1.5");
        let err = parse_model(&doc, None).unwrap_err();
        assert!(err.to_string().contains("belief.p"), "{err}");
        // The file's own parameter is checked even when overridden.
        let err = parse_model(&doc, Some(0.5)).unwrap_err();
        assert!(err.to_string().contains("belief.p"), "{err}");
    }

    #[test]
    fn unknown_success_state_is_a_belief_error() {
        let doc = PARTY.replace("\"success_state\": \"sun\"", "\"success_state\": \"snow\"");
        let err = parse_model(&doc, None).unwrap_err();
        assert!(err.to_string().contains("belief:"), "{err}");
        assert!(err.to_string().contains("snow"), "{err}");
    }

    #[test]
    fn bad_likelihood_rows_name_their_path() {
        let doc = PARTY_DYNAMIC.replace("[0.9, 0.1]", "[0.85, 0.1]");
        let err = parse_model(&doc, None).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("evidence.likelihood[0]"), "{message}");
        assert!(message.contains("`sun`"), "{message}");
        assert!(message.contains("0.95"), "{message}");
    }

    #[test]
    fn evidence_shape_errors_name_their_path() {
        let wrong_rows = PARTY_DYNAMIC.replace("[[0.9, 0.1], [0.1, 0.9]]", "[[0.9, 0.1]]");
        let err = parse_model(&wrong_rows, None).unwrap_err();
        assert!(err.to_string().contains("evidence.likelihood"), "{err}");

        let negative_cost = PARTY_DYNAMIC.replace("\"info_cost\": 1.0", "\"info_cost\": -1.0");
        let err = parse_model(&negative_cost, None).unwrap_err();
        assert!(err.to_string().contains("evidence.info_cost"), "{err}");

        let duplicate = PARTY_DYNAMIC.replace("\"rain-report\"", "\"sun-report\"");
        let err = parse_model(&duplicate, None).unwrap_err();
        assert!(err.to_string().contains("evidence.outcomes"), "{err}");
    }

    #[test]
    fn commitments_require_an_evidence_section() {
        let doc = r#"{
            "states": ["sun", "rain"],
            "alternatives": ["outdoors", "porch", "indoors"],
            "payoffs": [[100, 0], [90, 20], [40, 50]],
            "belief": {"kind": "bernoulli", "success_state": "sun", "p": 0.7},
            "commitments": [{"label": "hard", "initial_action": "porch"}]
        }"#;
        let err = parse_model(doc, None).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("evidence section"), "{err}");
    }

    #[test]
    fn commitment_problems_carry_the_commitments_prefix() {
        let doc = PARTY_DYNAMIC.replace(
            "\"initial_action\": \"porch\"",
            "\"initial_action\": \"veranda\"",
        );
        let err = parse_model(&doc, None).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("commitments:"), "{message}");
        assert!(message.contains("veranda"), "{message}");
    }

    #[test]
    fn a_document_with_evidence_but_no_commitments_is_static() {
        let doc = r#"{
            "states": ["sun", "rain"],
            "alternatives": ["porch"],
            "payoffs": [[90, 20]],
            "belief": {"kind": "bernoulli", "success_state": "sun", "p": 0.5},
            "evidence": {
                "outcomes": ["hint"],
                "likelihood": [[1.0], [1.0]],
                "info_cost": 0.0
            }
        }"#;
        let parsed = parse_model(doc, None).unwrap();
        assert!(parsed.two_stage.is_none());
    }
}

