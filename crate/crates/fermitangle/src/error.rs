use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("modes must be strictly increasing, got {0:?}")]
    NotStrictlyIncreasing(Vec<usize>),
    #[error("mode index {mode} out of range for d = {d}")]
    ModeOutOfRange { mode: usize, d: usize },
    #[error("rank {rank} out of range for C({d},{k}) = {count}")]
    RankOutOfRange { rank: usize, d: usize, k: usize, count: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("state vector norm {0} deviates from 1 beyond tolerance")]
    NotNormalized(f64),
    #[error("product factors are linearly dependent (antisymmetric projection norm {0:.3e})")]
    LinearlyDependentFactors(f64),
    #[error("matrix is not unitary (max deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("operation supports N = {expected} fermions, state has N = {got}")]
    UnsupportedN { expected: usize, got: usize },
    #[error("operation requires dimensions {expected}, got {got}")]
    UnsupportedDims { expected: String, got: String },
    #[error("amplitude {amp:.3e} on same-site configuration {modes:?}")]
    DoubleOccupancy { modes: Vec<usize>, amp: f64 },
    #[error("unknown named state `{0}`")]
    UnknownName(String),
    #[error("bipartition size M = {m} outside 1..={max} for N = {n}")]
    BadM { m: usize, n: usize, max: usize },
    #[error("invalid arguments: {0}")]
    BadArgs(String),
    #[error("eigen/singular-value solver did not converge")]
    NonConvergence,
    #[error("could not stabilize degenerate pairing (residual {0:.3e})")]
    DegeneracyResolutionFailure(f64),
    #[error("quadrature grid too coarse: kernel trace deviates from 1 by {0:.3e}")]
    GridTooCoarse(f64),
    #[error("malformed state file: {0}")]
    MalformedFile(String),
    #[error("state norm {norm} deviates from 1 by {deviation:.3e} (limit 1e-6)")]
    NormDeviation { norm: f64, deviation: f64 },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
