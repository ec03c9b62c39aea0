//! Independent cross-checks for the exact routines.
//!
//! Everything in this module is deliberately naive and shares no code with
//! the computations it checks. [`quadrature`] integrates by summing panels
//! where the rest of the crate integrates in closed form;
//! [`enumerate_two_stage`] scores every contingency policy of a commitment
//! by brute force where [`crate::value_with_flexibility`] optimizes branch
//! by branch. Agreement between the two routes is what the test suite and
//! the CLI's `--verify` flag assert.

use crate::error::Error;
use crate::tol;
use crate::two_stage::TwoStageModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureRule {
    Midpoint,
    Trapezoid,
}

/// A composite quadrature rule with a fixed panel count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    pub panels: usize,
    pub rule: QuadratureRule,
}

impl QuadratureSpec {
    pub fn midpoint(panels: usize) -> Self {
        QuadratureSpec { panels, rule: QuadratureRule::Midpoint }
    }

    pub fn trapezoid(panels: usize) -> Self {
        QuadratureSpec { panels, rule: QuadratureRule::Trapezoid }
    }
}

/// Composite numeric integration of `f` over `[lo, hi]`, a subinterval of
/// `[0, 1]`. Panel contributions are accumulated with compensated summation
/// so the panel count can be large without drift swamping the result.
pub fn quadrature(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    spec: &QuadratureSpec,
) -> crate::Result<f64> {
    if spec.panels == 0 {
        return Err(Error::InvalidQuadrature("panel count must be at least 1"));
    }
    if !lo.is_finite() || !hi.is_finite() || lo > hi || lo < 0.0 || hi > 1.0 {
        return Err(Error::BadInterval { lo, hi });
    }
    let n = spec.panels;
    let h = (hi - lo) / n as f64;
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut add = |term: f64| {
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };
    match spec.rule {
        QuadratureRule::Midpoint => {
            for i in 0..n {
                add(f(lo + (i as f64 + 0.5) * h));
            }
        }
        QuadratureRule::Trapezoid => {
            add((f(lo) + f(hi)) / 2.0);
            for i in 1..n {
                add(f(lo + i as f64 * h));
            }
        }
    }
    Ok(sum * h)
}

/// One fully specified contingency plan: the action taken after each
/// evidence outcome, aligned with the outcome declaration order, and its
/// expected net value.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyValue {
    pub actions: Vec<String>,
    pub value: f64,
}

/// Every contingency policy of one commitment.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyEnumeration {
    pub commitment: String,
    pub policies: Vec<PolicyValue>,
}

impl PolicyEnumeration {
    /// The best policy; on exact ties, the first in enumeration order.
    pub fn best(&self) -> &PolicyValue {
        let mut best = &self.policies[0];
        for p in &self.policies[1..] {
            if p.value > best.value {
                best = p;
            }
        }
        best
    }
}

/// Scores every contingency policy of every commitment by direct summation
/// over the joint distribution of (outcome, state).
///
/// A commitment that observes the evidence may map each outcome to its
/// initial action or any revision target; one that does not observe has the
/// single constant policy. Policies are enumerated in lexicographic order of
/// those options with the last outcome varying fastest. Errs when a
/// commitment admits more than [`tol::POLICY_CAP`] policies.
pub fn enumerate_two_stage(ts: &TwoStageModel) -> crate::Result<Vec<PolicyEnumeration>> {
    let base = ts.base();
    let evidence = ts.evidence();
    let prior = ts.prior();
    let n_outcomes = evidence.outcomes().len();

    // Joint weight of (outcome, state) straight from the inputs; the
    // posterior machinery is exactly what this oracle must not rely on.
    let joint = |e: usize, x: usize| evidence.likelihood_at(e, x) * prior.weights()[x];

    let mut out = Vec::new();
    for c in ts.commitments() {
        let mut options: Vec<&str> = vec![&c.initial_action];
        if c.observes_evidence {
            options.extend(c.revision_targets.iter().map(|t| t.as_str()));
        }

        let mut count: u128 = 1;
        for _ in 0..n_outcomes {
            count = count.saturating_mul(options.len() as u128);
            if count > tol::POLICY_CAP as u128 {
                return Err(Error::PolicyExplosion {
                    commitment: c.label.clone(),
                    count: (options.len() as u128).pow(n_outcomes as u32),
                    cap: tol::POLICY_CAP,
                });
            }
        }

        let option_indices: Vec<usize> = options
            .iter()
            .map(|a| base.alternative_index(a).expect("validated at construction"))
            .collect();

        let mut policies = Vec::with_capacity(count as usize);
        let mut choice = vec![0usize; n_outcomes];
        loop {
            let mut value = 0.0;
            for e in 0..n_outcomes {
                let action = option_indices[choice[e]];
                let mut cost = 0.0;
                if c.observes_evidence {
                    cost += evidence.info_cost();
                }
                if choice[e] != 0 {
                    cost += c.switch_cost;
                }
                for x in 0..base.states().len() {
                    value += joint(e, x) * (base.payoff_at(action, x) - cost);
                }
            }
            policies.push(PolicyValue {
                actions: choice.iter().map(|i| options[*i].to_owned()).collect(),
                value,
            });

            // Odometer step, last outcome fastest.
            let mut pos = n_outcomes;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < options.len() {
                    break;
                }
                choice[pos] = 0;
            }
            if choice.iter().all(|i| *i == 0) {
                break;
            }
        }
        out.push(PolicyEnumeration { commitment: c.label.clone(), policies });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bayes::EvidenceModel;
    use crate::model::{DecisionModel, Distribution};
    use crate::two_stage::Commitment;

    fn close_to(a: f64, b: f64, eps: f64) {
        assert!((a - b).abs() < eps, "{a} != {b} within {eps}");
    }

    #[test]
    fn midpoint_integrates_a_line_to_high_accuracy() {
        let f = |p: f64| 20.0 + 70.0 * p;
        let v = quadrature(f, 0.0, 1.0, &QuadratureSpec::midpoint(1_000_000)).unwrap();
        close_to(v, 55.0, 1e-6);
    }

    #[test]
    fn trapezoid_agrees_on_the_same_line() {
        let f = |p: f64| 20.0 + 70.0 * p;
        let v = quadrature(f, 0.0, 1.0, &QuadratureSpec::trapezoid(1_000_000)).unwrap();
        close_to(v, 55.0, 1e-6);
    }

    #[test]
    fn quadrature_of_zero_is_zero() {
        let v = quadrature(|_| 0.0, 0.0, 1.0, &QuadratureSpec::midpoint(1000)).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn empty_interval_integrates_to_zero() {
        let v = quadrature(|p| p * 3.0, 0.5, 0.5, &QuadratureSpec::midpoint(10)).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn single_midpoint_panel_samples_the_middle() {
        let v = quadrature(|p| p, 0.0, 1.0, &QuadratureSpec::midpoint(1)).unwrap();
        close_to(v, 0.5, 1e-15);
    }

    #[test]
    fn quadrature_rejects_bad_specs_and_intervals() {
        assert!(matches!(
            quadrature(|p| p, 0.0, 1.0, &QuadratureSpec::midpoint(0)),
            Err(Error::InvalidQuadrature(_))
        ));
        assert!(matches!(
            quadrature(|p| p, 0.7, 0.2, &QuadratureSpec::midpoint(10)),
            Err(Error::BadInterval { .. })
        ));
        assert!(matches!(
            quadrature(|p| p, 0.0, 1.5, &QuadratureSpec::midpoint(10)),
            Err(Error::BadInterval { .. })
        ));
    }

    #[test]
    fn doubling_panels_shrinks_the_error_on_a_kinked_integrand() {
        // f has a kink at 1/3; exact integral is 5/3.
        let f = |p: f64| (p - 1.0 / 3.0).abs() * 6.0;
        let exact = 5.0 / 3.0;
        let mut prev = f64::INFINITY;
        for n in [100, 200, 400, 800] {
            let err =
                (quadrature(f, 0.0, 1.0, &QuadratureSpec::midpoint(n)).unwrap() - exact).abs();
            assert!(err <= prev / 2.0 + 1e-12, "error {err} after {prev}");
            prev = err;
        }
    }

    fn party_two_stage(info_cost: f64, switch_cost: f64) -> TwoStageModel {
        let base = DecisionModel::new(
            vec!["sun".into(), "rain".into()],
            vec!["outdoors".into(), "porch".into(), "indoors".into()],
            vec![vec![100.0, 0.0], vec![90.0, 20.0], vec![40.0, 50.0]],
        )
        .unwrap();
        let prior =
            Distribution::new(vec!["sun".into(), "rain".into()], vec![0.7, 0.3]).unwrap();
        let evidence = EvidenceModel::new(
            vec!["sun-report".into(), "rain-report".into()],
            vec!["sun".into(), "rain".into()],
            vec![vec![0.9, 0.1], vec![0.1, 0.9]],
            info_cost,
        )
        .unwrap();
        let commitments = vec![
            Commitment {
                label: "hard-outdoors".into(),
                initial_action: "outdoors".into(),
                revision_targets: vec![],
                switch_cost: 0.0,
                observes_evidence: false,
            },
            Commitment {
                label: "porch-option".into(),
                initial_action: "porch".into(),
                revision_targets: vec!["outdoors".into(), "indoors".into()],
                switch_cost,
                observes_evidence: true,
            },
        ];
        TwoStageModel::new(base, prior, evidence, commitments).unwrap()
    }

    #[test]
    fn porch_option_enumeration_finds_the_revision_policy() {
        let ts = party_two_stage(1.0, 5.0);
        let all = enumerate_two_stage(&ts).unwrap();
        let porch = all.iter().find(|p| p.commitment == "porch-option").unwrap();
        // Three options on each of two outcomes.
        assert_eq!(porch.policies.len(), 9);
        let best = porch.best();
        assert_eq!(best.actions, ["outdoors", "indoors"]);
        close_to(best.value, 73.3, 1e-9);
    }

    #[test]
    fn hard_commitment_has_exactly_one_policy() {
        let ts = party_two_stage(1.0, 5.0);
        let all = enumerate_two_stage(&ts).unwrap();
        let hard = all.iter().find(|p| p.commitment == "hard-outdoors").unwrap();
        assert_eq!(hard.policies.len(), 1);
        assert_eq!(hard.policies[0].actions, ["outdoors", "outdoors"]);
        close_to(hard.policies[0].value, 70.0, 1e-9);
    }

    #[test]
    fn free_perfect_information_reaches_the_clairvoyant_value() {
        let base = DecisionModel::new(
            vec!["sun".into(), "rain".into()],
            vec!["outdoors".into(), "porch".into(), "indoors".into()],
            vec![vec![100.0, 0.0], vec![90.0, 20.0], vec![40.0, 50.0]],
        )
        .unwrap();
        let prior =
            Distribution::new(vec!["sun".into(), "rain".into()], vec![0.7, 0.3]).unwrap();
        let evidence = EvidenceModel::new(
            vec!["saw-sun".into(), "saw-rain".into()],
            vec!["sun".into(), "rain".into()],
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            0.0,
        )
        .unwrap();
        let porch = Commitment {
            label: "porch-option".into(),
            initial_action: "porch".into(),
            revision_targets: vec!["outdoors".into(), "indoors".into()],
            switch_cost: 0.0,
            observes_evidence: true,
        };
        let ts = TwoStageModel::new(base, prior, evidence, vec![porch]).unwrap();
        let all = enumerate_two_stage(&ts).unwrap();
        close_to(all[0].best().value, 85.0, 1e-9);
    }

    #[test]
    fn oversized_policy_spaces_are_refused() {
        // Fourteen outcomes with three options each: 3^14 > 1_000_000.
        let n = 14;
        let outcomes: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let mut row_sun = vec![0.0; n];
        row_sun[0] = 1.0;
        let mut row_rain = vec![0.0; n];
        row_rain[1] = 1.0;
        let base = DecisionModel::new(
            vec!["sun".into(), "rain".into()],
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.5, 0.5]],
        )
        .unwrap();
        let prior =
            Distribution::new(vec!["sun".into(), "rain".into()], vec![0.5, 0.5]).unwrap();
        let evidence = EvidenceModel::new(
            outcomes,
            vec!["sun".into(), "rain".into()],
            vec![row_sun, row_rain],
            0.0,
        )
        .unwrap();
        let c = Commitment {
            label: "wide".into(),
            initial_action: "a".into(),
            revision_targets: vec!["b".into(), "c".into()],
            switch_cost: 0.0,
            observes_evidence: true,
        };
        let ts = TwoStageModel::new(base, prior, evidence, vec![c]).unwrap();
        match enumerate_two_stage(&ts) {
            Err(Error::PolicyExplosion { commitment, count, cap }) => {
                assert_eq!(commitment, "wide");
                assert_eq!(count, 3u128.pow(14));
                assert_eq!(cap, 1_000_000);
            }
            other => panic!("expected a policy explosion, got {other:?}"),
        }
    }
}
