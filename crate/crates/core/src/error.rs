use thiserror::Error;

/// Errors raised by the exact-arithmetic toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid interval: lower endpoint {lo} exceeds upper endpoint {hi}")]
    InvalidInterval { lo: String, hi: String },

    #[error("box must be {expected}-dimensional, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("degree error: {0}")]
    Degree(String),

    #[error("polynomial is zero")]
    ZeroPolynomial,

    #[error("division is not exact: {0}")]
    InexactDivision(String),

    #[error("interval does not isolate exactly one root (found {0})")]
    NotIsolating(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("enclosure of a divisor may contain zero")]
    DivisionByPossiblyZero,

    #[error("square root of a possibly negative quantity")]
    SqrtOfPossiblyNegative,

    #[error("unbound variable `{0}` in expression")]
    UnboundVariable(String),

    #[error("requested precision 10^-{0} not reached within the iteration cap")]
    PrecisionUnreachable(u32),

    #[error("box touches or crosses a coordinate axis; monomial bounds need a positive box")]
    NonPositiveBox,

    #[error("parameter error on {face}: bound M = {m} is smaller than the computed remainder majorant {m_bar}")]
    Parameter { face: String, m: String, m_bar: String },

    #[error("orbit linking failed: {0}")]
    Orbit(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("certificate check failed: {0}")]
    Recheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
