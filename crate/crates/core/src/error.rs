use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfeError {
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("Hensel condition v(f(x0)) > 2 v(f'(x0)) fails")]
    HenselConditionFailed,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown curve label {0}")]
    UnknownLabel(String),
    #[error("singular curve (discriminant vanishes)")]
    SingularCurve,
    #[error("a and b are both even")]
    NotCoprimeAt2,
    #[error("a and b are both divisible by 3")]
    NotCoprimeAt3,
    #[error("p divides the valuation {0}")]
    PDividesValuation(i64),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("brute-force enumeration limited to p <= {0}")]
    BruteForceBoundExceeded(u64),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("{0} is not prime")]
    CompositeP(u64),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("roots lie in a ramified extension (root valuations {0})")]
    RamifiedRoots(String),
    #[error("no Q_l-rational root in the fibre")]
    NoRationalRoot,
    #[error("point outside the domain: {0}")]
    OutsideDomain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GfeError>;
