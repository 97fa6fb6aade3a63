use thiserror::Error;

/// Errors raised by the constructions and decision procedures of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("nonnegative solver explored more than {cap} candidate vectors")]
    SolverCapExceeded { cap: usize },

    #[error("strongly connected component with {edges} internal transitions exceeds the support enumeration limit of {cap}")]
    SupportEnumerationCapExceeded { edges: usize, cap: usize },

    #[error("matrix monoid has more than {cap} elements (likely infinite)")]
    MonoidCapExceeded { cap: usize },

    #[error("language is not bounded: {0}")]
    NotBounded(String),

    #[error("language is not contained in the star product of the socle")]
    SocleViolation,

    #[error("constraint-determinism check failed on word {word:?}")]
    ConstraintDeterminismUnverified { word: String },

    #[error("automaton has a cycle of epsilon transitions")]
    EpsilonCycle,

    #[error("arithmetic overflow while evaluating counters")]
    Overflow,

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// The underlying error, with stage annotations removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidModel(msg.into())
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
