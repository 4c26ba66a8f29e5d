use thiserror::Error;

/// Which parameter failed the primality test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamName {
    P,
    Q,
}

impl std::fmt::Display for ParamName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamName::P => f.write_str("p"),
            ParamName::Q => f.write_str("q"),
        }
    }
}

/// Errors raised by the group arithmetic and protocol operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no inverse modulo q")]
    ZeroInverse,
    #[error("random source failed: {0}")]
    RngFailure(String),
    #[error("{0} is not prime")]
    NotPrime(ParamName),
    #[error("q does not divide p - 1")]
    OrderMismatch,
    #[error("g does not generate a subgroup of order q")]
    BadGenerator,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("parameter generation gave up after {0} attempts")]
    GenerationTimeout(u64),
    #[error("value out of range for the group")]
    OutOfRange,
    #[error("key pair is inconsistent: y != g^x")]
    InconsistentKey,
    #[error("commitment z is not coprime to q")]
    BadCommit,
    #[error("challenge r_bar is zero modulo q")]
    BadChallenge,
    #[error("session is not in a state that accepts this message")]
    InvalidState,
    #[error("r + s_bar + alpha is zero modulo q; restart the session")]
    DegenerateDenominator,
    #[error("keyed-hash check failed")]
    TagMismatch,
    #[error("view and signature admit no consistent blinding factors")]
    InconsistentPair,
    #[error("honest transcript violates {0}")]
    TranscriptInconsistent(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
