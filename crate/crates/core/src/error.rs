use thiserror::Error;

/// Everything that can go wrong while building or querying structures.
///
/// Law violations are not errors; checkers report them as data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid atom name {0:?}: expected a nonempty string over [a-z0-9_]")]
    InvalidAtom(String),
    #[error("a block label needs a nonempty block")]
    EmptyBlock,
    #[error("ill-formed bijection: {0}")]
    InvalidBijection(String),
    #[error("{label} is not an element of {set}")]
    NotAnElement { label: String, set: String },
    #[error("{0} is not a subset of {1}")]
    NotASubset(String, String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{value} is not a structure of {species} on {set}")]
    Malformed {
        species: String,
        set: String,
        value: String,
    },
    #[error("{0} lies outside the tabulated range")]
    Truncated(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Semantic(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn malformed(
        species: impl std::fmt::Display,
        set: impl std::fmt::Display,
        value: impl std::fmt::Display,
    ) -> Self {
        Error::Malformed {
            species: species.to_string(),
            set: set.to_string(),
            value: value.to_string(),
        }
    }

    pub(crate) fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }
}
