use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph has no nodes")]
    NoNodes,

    #[error("graph has no edges")]
    NoEdges,

    #[error("invalid adjacency matrix: {0}")]
    InvalidMatrix(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("non-finite value in iterate at iteration {iteration}")]
    NonFinite { iteration: usize },

    #[error("near-singular system (pivot {pivot:e} in column {column})")]
    NearSingular { column: usize, pivot: f64 },

    #[error("rank vector has no positive component")]
    ZeroVector,

    #[error("qubit count {0} outside supported range 1..=24")]
    QubitCount(usize),

    #[error("qubit index {qubit} out of range for {num_qubits}-qubit register")]
    QubitIndex { qubit: usize, num_qubits: usize },

    #[error("two-qubit gate needs distinct qubits, got {0} twice")]
    RepeatedQubit(usize),

    #[error("vector is not L2-normalized (norm {0})")]
    NotNormalized(f64),

    #[error("component {index} is negative or non-finite ({value})")]
    NegativeComponent { index: usize, value: f64 },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
