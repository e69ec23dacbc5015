use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("ground set size {n} exceeds the supported maximum of {max}")]
    GroundSetTooLarge { n: u32, max: u32 },
    #[error("mismatched parameters: (n={0}, k={1}) vs (n={2}, k={3})")]
    MismatchedParams(u32, u32, u32, u32),
    #[error("rank {rank} out of range for C({n},{k})")]
    RankOutOfRange { rank: u64, n: u32, k: u32 },
    #[error("unsupported L: {0}")]
    UnsupportedL(String),
    #[error("conflict graph with {vertices} vertices per side exceeds the supported maximum of {max}")]
    GraphTooLarge { vertices: u64, max: u64 },
    #[error("graph is complete bipartite: no nontrivial independent set exists")]
    CompleteBipartite,
    #[error("canonical labeling supports n <= {max}, got {n}")]
    CanonicalTooLarge { n: u32, max: u32 },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
