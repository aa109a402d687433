use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{what} has {size} vertices, limit is {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The input is outside the (S113, Kpp)-free class; carries an induced
    /// witness in host vertex ids.
    #[error("graph is outside the target class, witness {witness:?}")]
    ClassViolation { witness: Vec<usize> },
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
