use thiserror::Error;

/// Errors raised by the algebra engine.
///
/// Variants fall into two families: input validation (bad words, bad
/// twist data, out-of-range classes) and internal invariant failures,
/// which signal a bug upstream and must abort the computation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for {generators} generators")]
    GeneratorOutOfRange { index: usize, generators: usize },

    #[error("genus must be ≥ 2 (got {0})")]
    GenusTooSmall(usize),

    #[error("cannot parse word: {0}")]
    WordSyntax(String),

    #[error("cannot parse mapping class expression: {0}")]
    ExpressionSyntax(String),

    #[error("unknown twist `{0}`")]
    UnknownTwist(String),

    #[error("invalid twist `{name}`: {reason}")]
    InvalidTwist { name: String, reason: String },

    #[error("class {requested} exceeds configured maximum {max}")]
    ClassTooLarge { requested: usize, max: usize },

    #[error("class must be at least {min} (got {got})")]
    ClassTooSmall { min: usize, got: usize },

    #[error("series has constant term {found}, expected {expected}")]
    ConstantTerm { expected: &'static str, found: String },

    #[error("mapping class `{0}` is not in the Torelli group (acts nontrivially on H_1)")]
    NotTorelli(String),

    #[error("Massey product undefined: {0}")]
    MasseyUndefined(String),

    #[error("depth {0} < 3: partial formality clause unavailable")]
    DepthTooShallow(usize),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("internal invariant failure: {0}")]
    Invariant(String),
}

impl Error {
    /// True for failures that indicate an inconsistency in the engine
    /// rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_) | Error::BudgetExceeded(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
