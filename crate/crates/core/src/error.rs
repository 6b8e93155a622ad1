use thiserror::Error;

/// Errors raised by parsing, construction and computation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("algebra not finite-dimensional or bound too small (max_len = {0})")]
    NotFiniteDimensional(usize),

    #[error("relation is not admissible: {0}")]
    NotAdmissible(String),

    #[error("module axiom violated: {0}")]
    ModuleAxiom(String),

    #[error("complement not multiplicatively closed, the quotient map does not split for this basis: {0}")]
    NotSplit(String),

    #[error("field error: {0}")]
    Field(String),

    #[error("enumeration budget of {0} candidates exceeded")]
    Budget(usize),

    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn input(message: impl Into<String>) -> Self {
        Error::Input(message.into())
    }
}
