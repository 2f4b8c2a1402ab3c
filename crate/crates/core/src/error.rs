use thiserror::Error;

pub type Result<T> = std::result::Result<T, QcohError>;

/// Everything that can go wrong in the library. Each variant names the
/// violated invariant and, where there is one, the offending magnitude.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum QcohError {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is empty")]
    Empty,
    #[error("NotHermitian: max |A - A^dagger| = {deviation:.3e} exceeds {tol:.0e}")]
    NotHermitian { deviation: f64, tol: f64 },
    #[error("NotUnitTrace: trace = {trace:.12} (|Tr - 1| = {deviation:.3e} exceeds {tol:.0e})")]
    NotUnitTrace { trace: f64, deviation: f64, tol: f64 },
    #[error("NotPositive: minimum eigenvalue {min_eigenvalue:.3e} below -{tol:.0e}")]
    NotPositive { min_eigenvalue: f64, tol: f64 },
    #[error("NotPure: state norm {norm:.12} differs from 1 by more than {tol:.0e}")]
    NotPure { norm: f64, tol: f64 },
    #[error("NotUnitary: max |U^dagger U - I| = {deviation:.3e} exceeds {tol:.0e}")]
    NotUnitary { deviation: f64, tol: f64 },
    #[error("BlochNormExceeded: |r| = {norm:.12} > 1")]
    BlochNormExceeded { norm: f64 },
    #[error("DimensionMismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("RankOutOfRange: rank {rank} not in 1..={dim}")]
    RankOutOfRange { rank: usize, dim: usize },
    #[error("InvalidDistribution: {reason}")]
    InvalidDistribution { reason: String },
    #[error("OutOfRange: {name} = {value} not in [0, 1]")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("LengthMismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("EmptyChain: at least one basis is required")]
    EmptyChain,
    #[error("MaximallyMixedInput: trade-off undefined at I/d (BI coherence {coherence:.3e})")]
    MaximallyMixedInput { coherence: f64 },
    #[error("IncompleteChannel: max |sum K^dagger K - I| = {deviation:.3e} exceeds {tol:.0e}")]
    IncompleteChannel { deviation: f64, tol: f64 },
    #[error("ProbabilityOutOfRange: p = {p} not in [0, 1]")]
    ProbabilityOutOfRange { p: f64 },
    #[error("NonpositiveTemperature: T = {temperature} K")]
    NonpositiveTemperature { temperature: f64 },
    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
    #[error("Parse: {0}")]
    Parse(String),
    #[error("Io: {0}")]
    Io(String),
}

impl QcohError {
    /// Process exit code used by the CLI: 2 malformed input, 3 dimension
    /// mismatch, 4 I/O failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            QcohError::DimensionMismatch { .. } | QcohError::LengthMismatch { .. } => 3,
            QcohError::Io(_) => 4,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for QcohError {
    fn from(e: std::io::Error) -> Self {
        QcohError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for QcohError {
    fn from(e: serde_json::Error) -> Self {
        QcohError::Parse(e.to_string())
    }
}
