use thiserror::Error;

use crate::rational::Q;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coefficients, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("intersection form is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("intersection form has signature (+{pos}, -{neg}, 0:{zero}); expected (1, rank-1)")]
    Signature { pos: usize, neg: usize, zero: usize },
    #[error("curve {label}: K.C + C^2 = {value} is not an even integer")]
    Adjunction { label: String, value: Q },
    #[error("curve {label}: declared genus {declared} but adjunction gives {computed}")]
    GenusMismatch { label: String, declared: u64, computed: Q },
    #[error("curve {label}: negative curve listed more than once in a complete roster")]
    DuplicateNegativeCurve { label: String },
    #[error("no orientation class: need a roster curve of positive square or a reference class of positive square")]
    NoOrientation,
    #[error("invalid basis label {0:?}")]
    BadLabel(String),
    #[error("invalid polarisation: {0}")]
    InvalidPolarisation(String),
    #[error("not a -1 curve: {0}")]
    NotMinusOneCurve(String),
    #[error("class is not a roster curve")]
    NotInRoster,
    #[error("cannot contract a curve on a rank-1 model")]
    RankOneContraction,
    #[error("divisor is proportional to the polarisation")]
    ProportionalToPolarisation,
    #[error("L.D = {0} is not positive")]
    NonPositiveDegree(Q),
    #[error("slope denominator vanishes")]
    ZeroDenominator,
    #[error("c = {0} is not positive")]
    NonPositiveC(Q),
    #[error("configuration is not exceptional")]
    NotExceptional,
    #[error("configuration is not connected ({0} components)")]
    NotConnected(usize),
    #[error("configuration is empty")]
    EmptyConfig,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("numerical cycle has arithmetic genus {0}; the surface data is inconsistent")]
    NegativeCycleGenus(Q),
    #[error("K.L = {0} is negative; the genus filter does not apply")]
    NegativeCanonicalDegree(Q),
    #[error("F^2 = {0} is not negative")]
    NonNegativeSquare(Q),
    #[error("curve roster is not marked complete")]
    RosterIncomplete,
    #[error("adjoint reduction stuck at curve {curve} after {steps} steps")]
    Stuck { curve: String, steps: usize },
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("perturbation search exhausted {halvings} halvings; last failing condition: {condition}")]
    PerturbationCap { halvings: u32, condition: String },
    #[error("monomial ideal has infinite colength")]
    InfiniteColength,
    #[error("colength fit failed to validate up to J = {0}")]
    FitFailed(u32),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("class syntax error at token {token:?}: {msg}")]
    ClassSyntax { token: String, msg: String },
    #[error("unknown catalog key {0:?}")]
    UnknownCatalogKey(String),
    #[error("search would visit {candidates} candidates, above the cap of {cap}")]
    BoundTooLarge { candidates: u128, cap: u64 },
    #[error("{0}")]
    Invalid(String),
}
