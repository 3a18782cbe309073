use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Malformed JSON or an out-of-contract value inside a JSON payload.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// A basis family that fails the exchange axiom.
    #[error("not a matroid: exchange fails for {b1} and {b2} at element {x}")]
    NotMatroid { b1: String, b2: String, x: usize },

    #[error("degenerate minor: {0}")]
    DegenerateMinor(String),

    /// No pair of bases covers the ground set, so the rank of the matroid
    /// intersection exceeds d + d' - n.
    #[error("matroid intersection has rank larger than d + d' - n")]
    RankExcess,

    #[error("not a tropical Plücker vector: {0}")]
    InvalidPlucker(String),

    #[error("retry budget exhausted after {attempts} attempts (seed {seed})")]
    Resource { attempts: usize, seed: u64 },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// Short machine-readable tag, used in the CLI's error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Parse { .. } => "parse",
            Error::NotMatroid { .. } => "not-matroid",
            Error::DegenerateMinor(_) => "degenerate-minor",
            Error::RankExcess => "rank-excess",
            Error::InvalidPlucker(_) => "invalid-plucker-vector",
            Error::Resource { .. } => "resource",
            Error::Invariant(_) => "invariant",
        }
    }
}
