use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} unsupported")]
    UnsupportedCharacteristic(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported range")]
    PrimeTooLarge(u64),
    #[error("bad field spec `{0}` (expected `q` or `fp:<p>`)")]
    BadFieldSpec(String),
    #[error("bad scalar `{0}`")]
    BadScalar(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed-field operands: {0} and {1}")]
    MixedFields(Field, Field),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("half-dimension n = {0} outside 1..=12")]
    BadDimension(usize),
    #[error("generator index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("grade {k} out of range 0..={max}")]
    GradeOutOfRange { k: usize, max: usize },
    #[error("configuration mismatch: n = {0} vs n = {1}")]
    ConfigMismatch(usize, usize),
    #[error("orthonormal labels must be strictly ascending and below {0}")]
    BadLabels(usize),
    #[error("spinor norm solution space has dimension {0}, expected 1")]
    NormDimension(usize),
    #[error("bilinear form is not the plain spinor norm")]
    NotPlainNorm,
    #[error("bilinear form is not a graded spinor norm")]
    NotGradedNorm,
    #[error("polarisation change needs I∩J∩K = ∅ and Iᶜ∩Jᶜ∩Kᶜ = ∅")]
    PolarisationPrecondition,
    #[error("element does not lie in the span of the algebra basis: {0}")]
    NotInBasisSpan(String),
    #[error("no bracket constants satisfy the Jacobi identity")]
    NoJacobiSolution,
    #[error("basis vector {0} is not a simultaneous ad-eigenvector of the Cartan subalgebra")]
    NotWeightVector(String),
    #[error("root decomposition requires the rational field")]
    RequiresRational,
    #[error("{0}")]
    Other(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
