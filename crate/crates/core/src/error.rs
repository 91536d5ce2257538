use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("invalid coin: {0}")]
    InvalidCoin(String),

    #[error("vectors are linearly dependent (rank {rank} of {count})")]
    DependentVectors { rank: usize, count: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("subspace is not fixed by the coin at vertex {0}")]
    NotFixedByCoin(usize),

    #[error("coin basis is not orthogonal at clones {0} and {1}")]
    NotOrthogonal(usize, usize),

    #[error("coin basis does not span the coin eigenspace at vertex {0}")]
    IncompleteBasis(usize),

    #[error("marked vertices {0} and {1} are adjacent: perfect subspace state transfer from one to the other is guaranteed at t=1")]
    AdjacentMarked(usize, usize),

    #[error("vertex {0} is marked but the blow-up needs Grover coins on every unmarked vertex")]
    NonGroverUnmarked(usize),

    #[error("vertices {0} and {1} are not twins")]
    NotTwins(usize, usize),

    #[error("coins at the marked vertices differ")]
    CoinMismatch,

    #[error("clone scaling ratio between {0} and {1} is not a rational square")]
    IrrationalScaling(usize, usize),

    #[error("division by the zero polynomial")]
    ZeroPolynomial,

    #[error("support is not of the form {{0, +c, -c}} with 0 < c^2 <= 1")]
    UnsupportedSupport,

    #[error("adjacency matrix of the base graph has an empty kernel")]
    EmptyKernel,

    #[error("base graph is not regular")]
    NotRegular,

    #[error("eigenvalue clustering is indeterminate near {0}")]
    IndeterminateClustering(f64),

    #[error("the subspace is empty")]
    EmptySubspace,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invariant violated: {0}")]
    Invariant(String),
}
