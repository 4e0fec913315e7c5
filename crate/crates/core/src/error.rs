use thiserror::Error;

use crate::scalars::Field;

/// Failures raised by the algebraic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("invalid quadratic field parameter {0}: must be a square-free integer other than 0 and 1")]
    InvalidField(i64),
    #[error("conjugation is only defined over a quadratic field, not {0}")]
    ConjugationOverRationals(Field),
    #[error("the radical part must be zero over Q")]
    RadicalOverRationals,
    #[error("algebra context mismatch")]
    ContextMismatch,
    #[error("variable index {index} out of range for {vars} generators")]
    VariableOutOfRange { index: usize, vars: usize },
    #[error("expected {expected} images, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("operation requires the associative kind")]
    NotAssociative,
    #[error("affine matrix is singular")]
    SingularMatrix,
    #[error("affine matrix must be {vars}x{vars} with a shift of length {vars}")]
    AffineShape { vars: usize },
    #[error("elementary addend depends on its own variable x{0}")]
    ElementaryDependsOnOwnVariable(usize),
    #[error("scaling factor of a linear bijection must be nonzero")]
    DegenerateLinear,
    #[error("mirror bijection requires the associative kind")]
    MirrorInCommutative,
    #[error("{0}")]
    Decomposition(DecomposeError),
    #[error("centrality candidate is empty")]
    EmptyCandidate,
    #[error("duplicate table key {0}")]
    DuplicateKey(alloc::string::String),
}

/// Reasons a black-box decomposition can be rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("table lacks the probe {0}")]
    MissingProbe(alloc::string::String),
    #[error("mu(0) equals mu(1), so no linear normalization exists")]
    ZeroEqualsOne,
    #[error("normalized generator images match no supplied witness")]
    NoMatchingWitness,
    #[error("scalar probe {0} is not mapped by any field automorphism")]
    InconsistentScalar(alloc::string::String),
    #[error("product probe {0} matches neither the direct nor the reversed order")]
    ProductMismatch(alloc::string::String),
    #[error("product probes cannot distinguish the two orders")]
    AmbiguousOrder,
}

impl From<DecomposeError> for Error {
    fn from(e: DecomposeError) -> Self {
        Error::Decomposition(e)
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
