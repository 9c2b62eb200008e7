use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("trigonometric core with omega={omega} is not Chebyshev on a span of length {length} (omega*length must be < pi)")]
    ChebyshevViolation { omega: f64, length: f64 },
    #[error("degenerate span [{left}, {right}]")]
    DegenerateSpan { left: f64, right: f64 },
    #[error("invalid section core: {0}")]
    InvalidCore(String),
    #[error("invalid knot vector: {0}")]
    InvalidKnots(String),
    #[error("knot {value} has multiplicity {multiplicity}, order is {order}")]
    MultiplicityTooHigh { value: f64, multiplicity: usize, order: usize },
    #[error("expected {expected} section cores, got {got}")]
    CoreCountMismatch { expected: usize, got: usize },
    #[error("basis index {index} out of range ({len} functions)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("knot {value} lies outside [{min}, {max})")]
    KnotOutsideDomain { value: f64, min: f64, max: f64 },
    #[error("inserting {value} would raise its multiplicity to {multiplicity} > order {order}")]
    MultiplicityOverflow { value: f64, multiplicity: usize, order: usize },
    #[error("function vectors are incompatible with knot insertion: {0}")]
    IncompatibleCores(String),
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("mesh is not admissible: {0}")]
    NotAdmissible(String),
    #[error("dual compatibility requires an admissible-plus mesh")]
    RequiresAdPlus,
    #[error("not enough skeleton intersections to build an index vector: {0}")]
    InsufficientIntersections(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("rational surface denominator vanishes at ({s}, {t})")]
    ZeroDenominator { s: f64, t: f64 },
    #[error("least-squares fit is singular (rank {rank} < {unknowns})")]
    SingularFit { rank: usize, unknowns: usize },
    #[error("requested {steps} refinement steps, limit is {limit}")]
    StepLimitExceeded { steps: usize, limit: usize },
    #[error("cannot parse input: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
