use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("no leading term of zero")]
    ZeroPolynomial,
    #[error("zero divisor in division sequence")]
    ZeroDivisor,
    #[error("variable x{0} missing from assignment")]
    MissingVariable(u32),
    #[error("interlacing decomposition unavailable")]
    InterlacingUnavailable,
    #[error("polynomial is not a 2-terms polynomial of the expected class")]
    NotTwoTerms,
    #[error("shape does not define relation")]
    ShapeMismatch,
    #[error("unknown relation `{0}` in constraint")]
    UnknownRelation(String),
    #[error("scope length {got} does not match arity {want} of relation `{name}`")]
    ArityMismatch { name: String, want: usize, got: usize },
    #[error("variable index {0} out of range (1-based, num_vars = {1})")]
    VariableOutOfRange(u32, u32),
    #[error("strategy does not match generator provenance")]
    StrategyMismatch,
    #[error("basis budget exceeded ({0} polynomials)")]
    BasisBudgetExceeded(usize),
    #[error("candidate budget exceeded ({0} candidates)")]
    CandidateBudgetExceeded(usize),
    #[error("instance too large for fallback ({0} variables, limit {1})")]
    InstanceTooLarge(u32, u32),
    #[error("class not supported at this size")]
    UnsupportedClass,
    #[error("polynomial is not {0}-sparse of the required shape")]
    NotSparse(String),
    #[error("no pinned variables of the required polarity")]
    NoPinnedVariables,
    #[error("degree {got} exceeds declared bound {bound}")]
    DegreeBound { bound: u32, got: u32 },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
