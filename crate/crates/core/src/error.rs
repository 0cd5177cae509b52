use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    /// A brute-force or oracle routine refused an instance above its guard.
    #[error("{what}: instance with {size} vertices exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("{what}: work budget of {budget} steps exhausted")]
    BudgetExhausted { what: &'static str, budget: u64 },

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invalid ear: {0}")]
    InvalidEar(String),

    #[error("invalid joint: {0}")]
    InvalidJoint(String),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for guard and budget failures, which mean "undecided" rather than a wrong input.
    pub fn is_undecided(&self) -> bool {
        matches!(
            self,
            Error::TooLarge { .. } | Error::BudgetExhausted { .. } | Error::Unsupported(_)
        )
    }
}
