use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("divisor is not monic")]
    NonMonicDivisor,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("valuation of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("ring context mismatch: c={left} vs c={right}")]
    CtxMismatch { left: usize, right: usize },
    #[error("coefficient has a nonzero zeta component")]
    NotRational,
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
