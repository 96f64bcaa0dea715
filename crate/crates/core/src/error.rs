use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} outside the supported range")]
    DimensionOutOfRange(usize),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("repeated index {0}")]
    RepeatedIndex(usize),
    #[error("wrong degree: expected {expected}, found {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("not a Lie algebra: d^2 does not vanish")]
    NotLieAlgebra,
    #[error("not nilpotent")]
    NotNilpotent,
    #[error("dimension {0} is odd")]
    OddDimension(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("J^2 is not -1")]
    NotAlmostComplex,
    #[error("almost-complex structure is not real")]
    NotReal,
    #[error("span meets its conjugate")]
    DegenerateSpan,
    #[error("almost-complex structure is not integrable")]
    NotIntegrable,
    #[error("almost-complex structure is not abelian")]
    NotAbelian,
    #[error("zero volume form")]
    ZeroVolume,
    #[error("leading coefficient a must be nonzero")]
    ZeroLeading,
    #[error("form is not simple")]
    NotSimple,
    #[error("forms are linearly dependent")]
    Dependent,
    #[error("form is not closed")]
    NotClosed,
    #[error("basis is not triangular")]
    NotTriangular,
    #[error("element is not in the deformation kernel")]
    NotInKernel,
    #[error("inadmissible chart parameter")]
    Inadmissible,
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
