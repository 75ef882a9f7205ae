use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("field of dimension {found_n} and degree {found_degree} does not belong to slice (n = {n}, degree {degree})")]
    SliceMismatch {
        n: usize,
        degree: usize,
        found_n: usize,
        found_degree: usize,
    },
    #[error("invalid degree: {0}")]
    DegreeError(String),
    #[error("vector field has a nonzero constant part")]
    NonzeroConstant,
    #[error("group generator {index} is not invertible")]
    SingularGenerator { index: usize },
    #[error("group closure exceeded {cap} elements")]
    NotFinite { cap: usize },
    #[error("a group element was reached with both signs; sigma is not a homomorphism")]
    SigmaInconsistent,
    #[error("trace average {numerator}/{denominator} is not an integer")]
    NonIntegerTrace {
        numerator: String,
        denominator: String,
    },
    #[error("linear part is not reversible-equivariant for the group")]
    LinearPartNotReversible,
    #[error("degree-{degree} part of the jet is not reversible-equivariant")]
    JetNotReversible { degree: usize },
    #[error("degree-{degree} field is not in the reversible-equivariant slice")]
    NotInTargetSlice { degree: usize },
    #[error("degree-{degree} field could not be split into normal-form and image parts")]
    SplitFailed { degree: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
