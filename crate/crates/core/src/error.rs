use thiserror::Error;

/// Errors reported by operations in this crate.
///
/// Model construction problems are not listed here; constructors collect
/// those into [`crate::ModelViolations`] so a caller sees every defect at
/// once instead of the first one hit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown alternative `{0}`")]
    UnknownAlternative(String),
    #[error("unknown evidence outcome `{0}`")]
    UnknownEvidence(String),
    #[error("unknown commitment `{0}`")]
    UnknownCommitment(String),
    #[error("belief parameter {0} lies outside [0, 1]")]
    ParameterOutOfRange(f64),
    #[error("bad integration interval [{lo}, {hi}]")]
    BadInterval { lo: f64, hi: f64 },
    #[error("cannot build an envelope from an empty line set")]
    NoLines,
    #[error("line `{0}` has a non-finite coefficient")]
    NonFiniteLine(String),
    #[error("distribution is indexed by a different state list than the model")]
    StateMismatch,
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid evidence model: {0}")]
    InvalidEvidence(String),
    #[error("invalid two-stage model: {0}")]
    InvalidTwoStage(String),
    #[error("invalid quadrature spec: {0}")]
    InvalidQuadrature(&'static str),
    #[error("evidence outcome `{0}` has probability zero under the prior")]
    ZeroProbabilityEvidence(String),
    #[error("`{action}` is not the initial action or a revision target of commitment `{commitment}`")]
    IllegalRevision { commitment: String, action: String },
    #[error("commitment `{0}` does not observe evidence")]
    NoEvidenceAccess(String),
    #[error("commitment `{commitment}` admits {count} contingency policies, above the enumeration cap of {cap}")]
    PolicyExplosion {
        commitment: String,
        count: u128,
        cap: u64,
    },
    #[error("the outcomes measure needs a state distribution")]
    MissingDistribution,
}
