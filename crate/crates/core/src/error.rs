use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("gcd(m, n) = gcd({m}, {n}) must be 1")]
    GcdViolation { m: u32, n: u32 },
    #[error("field of order {order} exceeds the cap of 2^20 elements")]
    FieldTooLarge { order: u64 },
    #[error("bad field parameters: {0}")]
    BadFieldParams(String),
    #[error("no monic irreducible polynomial of degree {degree} over F_{p} found")]
    NoIrreducible { p: u32, degree: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("encoded value {value} is not an element of a field of order {order}")]
    ElementOutOfRange { value: u64, order: u32 },
    #[error("element does not lie in the subfield F_q")]
    NotInSubfield,
    #[error("argument must be non-zero")]
    ZeroArgument,
    #[error("the zero vector does not define a projective point")]
    ZeroVector,
    #[error("points coincide")]
    CoincidentPoints,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("expected {expected} points, found {found}")]
    WrongCardinality { expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("expected a matrix of rank {expected}, found rank {found}")]
    WrongRank { expected: usize, found: usize },
    #[error("frame points are not in general position")]
    DegenerateFrame,
    #[error("pencil vertices coincide")]
    CoincidentVertices,
    #[error("operation requires a non-degenerate set in canonical position")]
    DegenerateInput,
    #[error("the replacement set T must contain 1")]
    MissingOne,
    #[error("leading coefficient must be non-zero")]
    ZeroLeadingCoefficient,
    #[error("no cardinality theorem applies to extension degree {degree}")]
    BadDegreeParity { degree: u32 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("code needs at least two matrices")]
    TooSmall,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("{count} matrices exceed the exhaustive cap of {cap}; use random mode")]
    TooLargeForExhaustive { count: u128, cap: u128 },
}
