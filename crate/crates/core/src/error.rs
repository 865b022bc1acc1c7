use thiserror::Error;

/// Errors raised by the Laurent-polynomial and linear-algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ring rank mismatch: {left} variables vs {right} variables")]
    RankMismatch { left: usize, right: usize },
    #[error("exponent overflow (exponents are 64-bit per variable)")]
    ExponentOverflow,
    #[error("number of {k}x{k} minors ({count}) exceeds the cap {cap}")]
    SizeExceeded { k: usize, count: u128, cap: u128 },
    #[error("all input polynomials are zero")]
    AllZero,
    #[error("zero is not an element of the multiplicative group")]
    ZeroElement,
    #[error("torsion counts require a rank-1 class; ring rank is {0}")]
    RankTooHigh(usize),
    #[error("bundle coordinate {0} is zero; monodromies must be invertible")]
    ZeroCoordinate(usize),
    #[error("sample point has {got} coordinates, ring rank is {expected}")]
    PointDimension { expected: usize, got: usize },
    #[error("could not factor integer content {0} within the trial-division budget")]
    Unfactorable(String),
}

/// Errors raised while parsing presentations and validating classes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown generator `{name}` at byte {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("zero exponent at byte {pos}")]
    ZeroExponent { pos: usize },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("character row has {got} entries, presentation has {expected} generators")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("character row {row} does not vanish on relator {relator} (value {value})")]
    RelatorNonvanishing { relator: usize, row: usize, value: String },
    #[error("the cohomology class is zero")]
    ZeroClass,
    #[error("character rows are linearly dependent")]
    DependentRows,
    #[error("malformed character value `{0}`")]
    MalformedValue(String),
}

/// Errors raised while building or loading a boundary complex.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("d{k} * d{next} is nonzero at entry ({row}, {col})", next = .k + 1)]
    BoundarySquareNonzero { k: usize, row: usize, col: usize },
    #[error("malformed term: {0}")]
    MalformedTerm(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Top-level error for the Novikov and certificate layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("the abelianization has rank 0: there is no nonzero cohomology class")]
    NoClass,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True when the error is a resource cap rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::Algebra(AlgebraError::SizeExceeded { .. } | AlgebraError::Unfactorable(_))
                | Error::Complex(ComplexError::Algebra(
                    AlgebraError::SizeExceeded { .. } | AlgebraError::Unfactorable(_)
                ))
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
