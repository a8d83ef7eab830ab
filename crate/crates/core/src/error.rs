use thiserror::Error;

/// Which Kac-Moody matrix axiom an input violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcmAxiom {
    /// `a_ii = 2`
    Diagonal,
    /// `a_ij <= 0` for `i != j`
    OffDiagonalSign,
    /// `a_ij = 0` iff `a_ji = 0`
    ZeroPattern,
}

impl std::fmt::Display for GcmAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GcmAxiom::Diagonal => write!(f, "(i) diagonal entries must be 2"),
            GcmAxiom::OffDiagonalSign => write!(f, "(ii) off-diagonal entries must be <= 0"),
            GcmAxiom::ZeroPattern => write!(f, "(iii) a_ij = 0 must hold iff a_ji = 0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a generalized Cartan matrix at ({i}, {j}): axiom {axiom}")]
    NotGcm { i: usize, j: usize, axiom: GcmAxiom },
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("root datum is not free: {0}")]
    NotFree(String),
    #[error("root datum is inconsistent: {0}")]
    BadRootDatum(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("generator index {0} out of range")]
    BadIndex(usize),
    #[error("vector {0} is not dominant")]
    NotDominant(String),
    #[error("vector {0} is not in the Weyl orbit of the shape")]
    NotInOrbit(String),
    #[error("height bound {bound} too small: a root of height {needed} is required")]
    HeightBoundTooSmall { bound: u32, needed: u32 },
    #[error("parameter {0} out of range")]
    OutOfRange(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("not a lambda-path: {0}")]
    NotLambdaPath(String),
    #[error("path is not a Hecke path: {0}")]
    NotHecke(String),
    #[error("LS cross-check mismatch: {0}")]
    CrossCheckMismatch(String),
    #[error("word {0} is not reduced")]
    NotReduced(String),
    #[error("operator undefined: {0}")]
    Undefined(String),
    #[error("fold {0} not applicable: {1}")]
    FoldNotApplicable(usize, String),
    #[error("generation cap hit: {0}")]
    CapHit(String),
    #[error("unsupported root system type: {0}")]
    UnsupportedType(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
