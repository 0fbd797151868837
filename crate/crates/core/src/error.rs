use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate edge between {0} and {1}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("eigensolver did not converge after {0} sweeps")]
    ConvergenceFailure(usize),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("not a cycle of the underlying graph")]
    NotACycle,
    #[error("value ({0}, {1}) is not a unit in {{1, -1, i, -i}}")]
    InvalidUnit(i64, i64),
    #[error("switching produces an entry -1 on edge ({0}, {1}), which a mixed graph cannot encode")]
    NotRepresentable(usize, usize),
    #[error("graph contains an imaginary cycle")]
    ImaginaryCyclePresent,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("polynomial has no positive real root")]
    NoPositiveRoot,
    #[error("argument {0} is outside the domain x >= 2")]
    DomainError(f64),
    #[error("hypothesis unmet: sampled limit {0} does not exceed 2")]
    HypothesisUnmet(f64),
    #[error("no root found in the search bracket")]
    NoRoot,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
