use thiserror::Error;

/// Broad failure classes, used by front ends to choose exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    InvalidInput,
    Unsupported,
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("zero element has no divisor")]
    ZeroElement,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("base mismatch: {0}")]
    BaseMismatch(String),

    #[error("coefficient {coeff} at {prime} has denominator not dividing {n}")]
    Denominator { prime: String, coeff: String, n: u64 },

    #[error("singular curve: discriminant is zero")]
    SingularCurve,

    #[error("point {0} is not on the curve")]
    NotOnCurve(String),

    #[error("point has infinite order (no torsion found up to {0})")]
    NonTorsion(u64),

    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("support collision: {0}")]
    SupportCollision(String),

    #[error("orthogonality violation at {0}")]
    Orthogonality(String),

    #[error("membership violation at {0}")]
    Membership(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } => ErrorKind::Parse,
            Error::NonTorsion(_)
            | Error::BoundExceeded(_)
            | Error::Unsupported(_)
            | Error::SupportCollision(_) => ErrorKind::Unsupported,
            Error::Consistency(_) => ErrorKind::Internal,
            _ => ErrorKind::InvalidInput,
        }
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
