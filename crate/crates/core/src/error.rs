use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node id {id} out of range for graph with {n} nodes")]
    InvalidNode { id: usize, n: usize },

    #[error("duplicate node id {0} in node set")]
    DuplicateNode(usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("exact enumeration needs {edges} edges but the cap is {cap}")]
    EnumerationCap { edges: usize, cap: usize },

    #[error("budget k = {k} exceeds node count {n}")]
    BudgetTooLarge { k: usize, n: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("lp solver: {0}")]
    Lp(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
