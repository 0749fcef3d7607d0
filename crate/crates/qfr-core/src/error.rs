use thiserror::Error;

/// Errors shared by the linear-algebra oracles, the statevector simulator
/// and the circuit families built on top of them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix must have at least one row and column")]
    EmptyMatrix,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("matrix is numerically singular")]
    SingularMatrix,

    #[error("duplicate sparse coordinate ({row}, {col})")]
    DuplicateSparseEntry { row: usize, col: usize },

    #[error("sparse coordinate ({row}, {col}) outside {rows}x{cols}")]
    SparseEntryOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("unknown sub-register `{0}`")]
    UnknownSubRegister(String),

    #[error("qubit {qubit} out of range for {total}-qubit register")]
    QubitOutOfRange { qubit: usize, total: usize },

    #[error("basis index {index} out of range for {size} amplitudes")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("control and target are the same qubit ({0})")]
    ControlEqualsTarget(usize),

    #[error("value {value} does not fit in {width} bits")]
    Overflow { value: u64, width: u32 },

    #[error("accumulator overflow: sum {sum} does not fit in {width} bits")]
    AccumulatorOverflow { sum: u64, width: u32 },

    #[error("eigenvalue {lambda} outside the representable range (0, {limit})")]
    SpectrumOutOfRange { lambda: f64, limit: f64 },

    #[error("condition number {kappa:.3e} exceeds cap {cap:.3e}")]
    ConditionNumberExceeded { kappa: f64, cap: f64 },

    #[error("post-selection branch norm {branch_norm:.3e} below threshold; solve is degenerate")]
    DegenerateSolve { branch_norm: f64 },

    #[error("phase wraparound: lambda*t = {lambda_t} >= 2*pi")]
    PhaseWraparound { lambda_t: f64 },

    #[error("determinant {value:.3e} is not positive; cannot take its logarithm")]
    NonPositiveDeterminant { value: f64 },

    #[error("training set is empty")]
    EmptyTrainingSet,

    #[error("face database is empty")]
    EmptyDatabase,

    #[error("eigenface basis is empty")]
    EmptyBasis,

    #[error("vector of length {len} is not a perfect square")]
    NonSquareLength { len: usize },

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("image format error: {0}")]
    ImageFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
