use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("value {value} is not a residue modulo {p}")]
    OutOfField { value: u64, p: u64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("point arity mismatch: expected {expected} coordinates, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("batch base coordinate {0} is used by more than one batch")]
    DuplicateX(u64),
    #[error("fiber coordinate {0} repeats")]
    DuplicateY(String),
    #[error("batch {batch} has {found} points, expected {expected}")]
    BatchSizeMismatch { batch: usize, expected: usize, found: usize },
    #[error("batch {0} does not share a single base coordinate")]
    InconsistentBatchX(usize),
    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),
    #[error("batch {batch} is not in general position")]
    GeneralPositionViolated { batch: usize },
    #[error("no general-position batch found after {attempts} attempts")]
    GeneralPositionExhausted { attempts: usize },
    #[error("evaluation map is not injective (rank {rank} < dimension {k})")]
    InjectivityFailure { rank: usize, k: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("position {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("recovery set {set} for position {position} is unavailable")]
    SetUnavailable { position: usize, set: usize },
    #[error("positions {0:?} cannot be recovered")]
    Unrecoverable(Vec<usize>),
    #[error("search needs {needed} codewords, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("search exceeded its node budget of {0}")]
    SearchExploded(u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no dependent set of size at most {0}")]
    NotFound(usize),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("the chosen positions admit no nonzero interpolant")]
    NoKernel,
    #[error("no non-optimal configuration within {0} candidates")]
    Exhausted(usize),
    #[error("codes are not comparable: {0}")]
    SpecMismatch(String),
    #[error("schema error: {0}")]
    Schema(String),
}
