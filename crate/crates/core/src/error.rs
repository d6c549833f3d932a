use thiserror::Error;

/// Errors raised by the separation-dimension toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid family specification: {0}")]
    InvalidFamily(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph is not a tree: {0}")]
    NotATree(String),

    #[error("{what} needs n = {n} but the cap is {cap}{hint}")]
    CapExceeded {
        what: String,
        n: usize,
        cap: usize,
        hint: String,
    },

    #[error("graph contains K4 on vertices {0:?}")]
    ContainsK4([usize; 4]),

    #[error("graph does not contain K4")]
    NoK4,

    #[error("matrix game has no rows")]
    EmptyGame,

    #[error("pair class {0} is separated by no ordering")]
    UnseparableClass(usize),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn cap(what: impl Into<String>, n: usize, cap: usize, hint: &str) -> Self {
        Error::CapExceeded {
            what: what.into(),
            n,
            cap,
            hint: if hint.is_empty() {
                String::new()
            } else {
                format!("; {hint}")
            },
        }
    }
}
