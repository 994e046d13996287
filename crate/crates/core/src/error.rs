use thiserror::Error;

use crate::poly::Monomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("a polynomial needs at least one variable")]
    NoVariables,

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("variable index {index} out of range for {vars} variables")]
    VariableOutOfRange { index: usize, vars: usize },

    #[error("invalid polynomial document: {0}")]
    Document(String),

    #[error("not a member of {class}: {detail}")]
    Membership { class: &'static str, detail: String },

    #[error("{u} is not a subpolynomial of {p}")]
    NotSubpolynomial { u: String, p: String },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("polynomial is not affine in any variable")]
    NotAffine,

    #[error("invalid chain step {step}: {detail}")]
    InvalidChainStep { step: usize, detail: String },

    #[error("map does not fit: {terms} terms into {vars} variables")]
    MapDoesNotFit { terms: usize, vars: usize },

    #[error("invalid variable partition: {0}")]
    InvalidPartition(String),

    #[error("invalid hyperplane map: {0}")]
    InvalidMap(String),

    #[error("unknown {kind} `{name}`")]
    UnknownStrategy { kind: &'static str, name: String },

    #[error("monomial {0:?} has degree outside the supported range")]
    MonomialOutOfUniverse(Monomial),

    #[error("search space too large: {0}")]
    SearchTooLarge(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("invalid certificate: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
