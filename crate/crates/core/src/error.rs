use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Basis indices carried by variants are 1-based so that messages match the
/// way brackets are written in manifests and reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("automorphism image #{0} is not a root of the minimal polynomial")]
    NonRoot(usize),
    #[error("automorphism list is not closed under composition")]
    NotClosed,
    #[error("extension degree must be at least 2 (got {0})")]
    Degenerate(usize),
    #[error("minimal polynomial must be monic")]
    NotMonic,
    #[error("minimal polynomial is reducible over the rationals")]
    Reducible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements live in different field towers")]
    TowerMismatch,
    #[error("extension is not Galois: {found} automorphisms for relative degree {degree}")]
    NotGalois { found: usize, degree: usize },
    #[error("requested field is not a level of the tower")]
    NotSubLevel,
    #[error("target field does not contain the algebra's field as a level")]
    NotSuperLevel,
    #[error("polynomial of degree {0} exceeds the factorization bound")]
    DegreeTooLarge(usize),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiFailure(usize, usize, usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("vector does not belong to the algebra")]
    OwnerMismatch,
    #[error("algebras are defined over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("decomposition has summands without an indecomposability certificate")]
    UncertifiedDecomposition,
    #[error("isomorphism oracle could not decide: {0}")]
    OracleUndecided(String),
    #[error("algebra is not nilpotent of class at most 2")]
    NotTwoStep,
    #[error("complement dimension p = {0} is odd")]
    OddP(usize),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("form has the wrong shape: {0}")]
    WrongShape(String),
    #[error("invariant T vanishes, so c is undefined")]
    TVanishes,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
