//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An entry of a probability vector is zero or negative, violating
    /// mutual absolute continuity.
    ZeroEntry { index: usize, value: f64 },
    /// A probability row does not sum to one within tolerance.
    RowSumMismatch { state: u8, sum: f64 },
    /// Two outcomes carry the same label.
    DuplicateLabel { label: String },
    /// Input slices have inconsistent lengths.
    LengthMismatch { expected: usize, got: usize },
    /// An enumeration or product would exceed the configured size cap.
    SizeOverflow { size: u128, cap: u128 },
    /// A garbling's shape does not match the experiment it is applied to.
    DimensionMismatch { expected: usize, got: usize },
    /// A distribution fails the change-of-measure identity ∑e⁻ᵘ dF₁(u) = 1
    /// and therefore is not a state-1 log-likelihood-ratio distribution.
    InvalidLlr { gap: f64 },
    /// Posterior-belief distributions with different means cannot be
    /// compared as mean-preserving spreads.
    MeanMismatch { left: f64, right: f64 },
    /// The two Blackwell decision procedures disagreed (cross-validate mode).
    OracleDisagreement {
        perfected: &'static str,
        mps: &'static str,
    },
    /// A piecewise-linear utility is not convex.
    NonConvexUtility { at: f64 },
    /// A parameter is outside the domain of the requested quantity.
    DomainError(String),
    /// The threshold lies outside the support of the distribution.
    OutOfSupport { a: f64, min: f64, max: f64 },
    /// The operation is undefined for a trivial experiment.
    TrivialExperiment,
    /// The η ladder was exhausted without certifying the rate inequalities.
    NoEtaFound,
    /// A documented precondition of the operation does not hold.
    PreconditionFailed(String),
    /// An internally verified postcondition failed.
    VerificationFailed(String),
    /// Multi-state experiments with different state counts.
    StateMismatch { expected: usize, got: usize },
    /// Probability mass functions with different support sizes.
    SupportMismatch { expected: usize, got: usize },
    /// A state index outside the experiment's state set.
    IndexError { index: usize, states: usize },
    /// The pair fails the genericity assumption required here.
    NonGeneric,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroEntry { index, value } => write!(
                f,
                "entry {index} is {value}; probabilities must be strictly positive"
            ),
            Error::RowSumMismatch { state, sum } => {
                write!(f, "state-{state} probabilities sum to {sum}, not 1")
            }
            Error::DuplicateLabel { label } => write!(f, "duplicate outcome label {label:?}"),
            Error::LengthMismatch { expected, got } => {
                write!(f, "expected {expected} entries, got {got}")
            }
            Error::SizeOverflow { size, cap } => {
                write!(f, "size {size} exceeds cap {cap}")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::InvalidLlr { gap } => write!(
                f,
                "change-of-measure identity violated by {gap:e}; not a state-1 LLR distribution"
            ),
            Error::MeanMismatch { left, right } => write!(
                f,
                "posterior means {left} and {right} differ; upstream distributions corrupt"
            ),
            Error::OracleDisagreement { perfected, mps } => write!(
                f,
                "perfected-FOSD verdict {perfected} disagrees with MPS verdict {mps}"
            ),
            Error::NonConvexUtility { at } => {
                write!(f, "utility is not convex near belief {at}")
            }
            Error::DomainError(what) => write!(f, "domain error: {what}"),
            Error::OutOfSupport { a, min, max } => {
                write!(f, "threshold {a} outside support [{min}, {max}]")
            }
            Error::TrivialExperiment => write!(f, "operation undefined for a trivial experiment"),
            Error::NoEtaFound => write!(f, "no eta in the ladder certifies the rate inequalities"),
            Error::PreconditionFailed(what) => write!(f, "precondition failed: {what}"),
            Error::VerificationFailed(what) => write!(f, "internal verification failed: {what}"),
            Error::StateMismatch { expected, got } => {
                write!(f, "state count mismatch: expected {expected}, got {got}")
            }
            Error::SupportMismatch { expected, got } => {
                write!(f, "support size mismatch: expected {expected}, got {got}")
            }
            Error::IndexError { index, states } => {
                write!(f, "state index {index} out of range for {states} states")
            }
            Error::NonGeneric => write!(f, "pair is not generic"),
        }
    }
}

impl core::error::Error for Error {}
