use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Core(#[from] scndp_core::Error),

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("bad configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    File {
        path: String,
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),

    #[error("{failed} of {total} cells failed")]
    CellsFailed { failed: usize, total: usize },
}

pub type Result<T> = std::result::Result<T, BenchError>;

impl BenchError {
    /// Process exit status: 2 for invalid input, 3 for an exact evaluation
    /// above the enumeration cap, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use scndp_core::Error as E;
        match self {
            Self::Core(E::EnumerationCap { .. }) => 3,
            Self::Core(E::Io(_) | E::Lp(_)) => 1,
            Self::Core(_) | Self::UnknownAlgorithm(_) | Self::Config(_) | Self::Toml(_) => 2,
            Self::File { .. } => 2,
            Self::Io(_) | Self::Json(_) | Self::CellsFailed { .. } => 1,
        }
    }
}

pub(crate) fn read_text(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| BenchError::File {
        path: path.display().to_string(),
        source,
    })
}
