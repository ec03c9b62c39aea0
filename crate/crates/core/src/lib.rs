//! Decision analysis for a finite set of alternatives whose payoff depends on
//! an uncertain state, where belief about the state slides along a
//! one-parameter mixture family.
//!
//! The engine answers three questions about such a model:
//!
//! * Which alternative maximizes expected value right now? ([`meu`])
//! * How much does each alternative stand to lose if the outcome, the belief
//!   parameter, or a clairvoyant's report turns out unfavourably? (the
//!   brittleness measures in [`brittleness`])
//! * What is a revisable commitment worth compared to locking in today?
//!   ([`two_stage`])
//!
//! Because belief moves along a line between two endpoint distributions, the
//! certainty equivalent of every alternative is a straight line in the
//! parameter, and the best achievable value is the upper envelope of those
//! lines. The [`envelope`] module builds that envelope exactly and integrates
//! it in closed form; no numerical integration is involved anywhere in the
//! main computation path.
//!
//! The [`oracle`] module holds deliberately naive reimplementations
//! (quadrature, brute-force policy enumeration) used to cross-check the exact
//! routines. They share no code with the routines they check.
//!
//! All iteration follows declaration order and every tie breaks toward the
//! alternative declared first, so results are deterministic and reproducible
//! across runs and platforms.

pub mod bayes;
pub mod brittleness;
pub mod envelope;
mod error;
pub mod model;
pub mod oracle;
pub mod tol;
pub mod two_stage;

pub use bayes::{posterior, preposterior, EvidenceModel};
pub use brittleness::{
    brittleness_belief, brittleness_clairvoyance, brittleness_outcomes, clairvoyance_line,
    flexibility_ranking, meu, BrittlenessKind, BrittlenessReport, MeuResult,
};
pub use envelope::{ce_line, ce_lines, upper_envelope, Envelope, Line, Segment};
pub use error::Error;
pub use model::{BeliefFamily, DecisionModel, Distribution, ModelViolations, Violation};
pub use oracle::{
    enumerate_two_stage, quadrature, PolicyEnumeration, PolicyValue, QuadratureRule,
    QuadratureSpec,
};
pub use two_stage::{
    baseline_value, flexibility_value, most_flexible_commitment, net_value, revision_policy,
    value_with_flexibility, Commitment, PolicyReport, PolicyRow, TwoStageModel,
};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
