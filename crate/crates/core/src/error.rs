use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not a prime")]
    NotPrime(u64),

    #[error("scalar {value} does not belong to field {field}")]
    FieldMismatch { value: String, field: String },

    #[error("malformed input at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("matrix has {found} entries, expected {rows}x{cols}")]
    Shape { rows: usize, cols: usize, found: usize },

    #[error(
        "column {column} of the generator matrix is zero; generator matrices may not contain \
         zero columns (the matroid must be loopless)"
    )]
    ZeroColumn { column: usize },

    #[error("generator matrix has rank {rank} but {rows} rows; rank(G) must equal k")]
    RankDeficient { rank: usize, rows: usize },

    #[error("index {index} is out of range for a ground set of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("ground set of size {n} exceeds the exhaustive enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("fold count a = {a} is outside 1..={n}")]
    FoldOutOfRange { a: usize, n: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("subset {0:?} is not a flat")]
    NotAFlat(Vec<usize>),

    #[error("Hilbert function did not stabilize inside window [{lo}, {hi}]; widen the window")]
    WindowTooSmall { lo: usize, hi: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 2,
            Error::Invariant(_) => 3,
            _ => 1,
        }
    }
}
