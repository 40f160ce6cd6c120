use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("characteristic {0} is not a prime below 2^31")]
    NonPrimeCharacteristic(u32),
    #[error("inhomogeneous input")]
    InhomogeneousInput,
    #[error("objects live over different rings")]
    RingMismatch,
    #[error("exponent vectors have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("unsupported number of variables: {0}")]
    TooManyVariables(usize),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("second argument of scalar multiplication is not a constant")]
    NotAScalar,
    #[error("polynomial syntax error at column {col}: {msg}")]
    PolySyntax { col: usize, msg: String },
    #[error("column {0} does not lift")]
    NoLift(usize),
    #[error("map is not well defined: {0}")]
    IllDefinedMap(String),
    #[error("zero module")]
    ZeroModule,
    #[error("grade mismatch: expected {expected}, found {found}")]
    GradeMismatch { expected: usize, found: usize },
    #[error("ring is not Cohen-Macaulay")]
    NotCohenMacaulay,
    #[error("epimorphism is injective")]
    InjectivePhi,
    #[error("map is not surjective")]
    NotSurjective,
    #[error("not a regular sequence")]
    NotRegularSequence,
    #[error("ideals are equal")]
    EqualIdeals,
    #[error("no regular sequence of length {n} found with coefficient budget {budget}")]
    NotFound { n: usize, budget: u32 },
    #[error("chain map lifting failed at step {0}")]
    LiftFailed(usize),
    #[error("broken liaison chain at step {0}")]
    BrokenChain(usize),
    #[error("evaluation map is not an isomorphism")]
    NuNotIso,
    #[error("Bass class membership undecided at bound {0}")]
    BassMembershipUndecided(usize),
    #[error("Foxby class membership undecided at bound {0}")]
    ClassMembershipUndecided(usize),
    #[error("category certification failed: {0}")]
    NotInCategory(String),
    #[error("module has dimension zero")]
    ZeroDimensional,
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
