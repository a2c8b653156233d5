use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("permutation size must be at least 1")]
    EmptyPermutation,
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("size {n} outside the supported range {min}..={max}")]
    SizeOutOfRange { n: usize, min: usize, max: usize },
    #[error("no permutation lies at Hamming distance {k} (size {n})")]
    InvalidDistance { n: usize, k: usize },
    #[error("invalid swap positions ({0}, {1})")]
    InvalidSwap(usize, usize),
    #[error("QAPLIB parse error: {0}")]
    Parse(String),
    #[error("invalid concentration parameter {0}")]
    InvalidTheta(f64),
    #[error("expected distance {target} outside the attainable interval (0, {max})")]
    TargetOutOfRange { target: f64, max: f64 },
    #[error("theta inversion did not converge for expected distance {0}")]
    NoConvergence(f64),
    #[error("kernel set is empty")]
    EmptyKernelSet,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("budget too small: {budget} evaluations cannot cover initialization ({population}) plus one iteration")]
    BudgetTooSmall { budget: u64, population: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("instance {0} is missing from the best-known registry")]
    MissingBestKnown(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}
