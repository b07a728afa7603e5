use thiserror::Error;

/// Every failure mode of the toolkit. Variant names match the invariant that
/// was violated so callers (and the CLI) can report it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is degenerate (determinant 0)")]
    Degenerate,
    #[error("gram matrix must be square and nonempty")]
    NotSquare,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not an isometry of the lattice")]
    NotAnIsometry,
    #[error("cone generator is zero")]
    ZeroGenerator,
    #[error("empty input")]
    EmptyInput,
    #[error("reflection in {0:?} is not integral")]
    NonIntegralReflection(Vec<String>),
    #[error("vector does not have negative square and cannot be a root")]
    NotARoot,
    #[error("vector is not in the positive cone: {0}")]
    NotInPositiveCone(String),
    #[error("chamber walk exceeded {0} reflections")]
    WalkDiverged(usize),
    #[error("lattice signature must be (1, rank-1), got ({0}, {1})")]
    WrongSignature(usize, usize),
    #[error("unbounded region: {0}")]
    UnboundedRegion(String),
    #[error("Dirichlet domain did not stabilize by word radius {0}")]
    NotStabilized(usize),
    #[error("group action does not preserve the root set: {0}")]
    ActionDoesNotPreserveRoots(String),
    #[error("roots are equal up to sign")]
    EqualRoots,
    #[error("roots have different self-pairings")]
    UnequalNorms,
    #[error("orbit roots have a negative mutual pairing and are not a simple system")]
    NegativeOrbitPairing,
    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("map is not a 1-cocycle")]
    NotACocycle,
    #[error("invalid extension datum: {0}")]
    InvalidExtensionDatum(String),
    #[error("no lift of a quotient cocycle found within search bound {0}")]
    LiftSearchExhausted(i64),
    #[error("group generated by the given matrices exceeds {0} elements")]
    GroupTooLarge(usize),
    #[error("matrix is not invertible over the integers")]
    NotUnimodular,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
