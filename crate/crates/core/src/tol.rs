//! Numeric tolerances shared across the crate.
//!
//! Every comparison against one of these constants is an absolute comparison;
//! payoffs are money-valued and stay within a few orders of magnitude of 1,
//! so relative tolerances would buy nothing but noise.

/// Tolerance for money and probability comparisons: tie detection in argmax
/// and argmin sets, membership in an envelope's active set, distribution
/// normalization checks.
pub const VALUE_EPS: f64 = 1e-9;

/// Envelope breakpoints closer together than this are merged and segments
/// narrower than this are dropped. Far below anything the value tolerance can
/// see, so merging never changes a reported number.
pub const BREAKPOINT_EPS: f64 = 1e-12;

/// An evidence outcome whose marginal probability is at or below this bound
/// is treated as impossible: conditioning on it is an error and expectation
/// branches over it contribute zero.
pub const ZERO_EVIDENCE_EPS: f64 = 1e-15;

/// Upper bound on the number of contingency policies the brute-force
/// enumeration oracle will walk for a single commitment.
pub const POLICY_CAP: u64 = 1_000_000;
