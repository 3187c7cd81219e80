use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VipegError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("delta = {delta} is outside ](sqrt(5)-1)/2, +inf[")]
    DeltaOutOfDomain { delta: f64 },

    #[error("invalid solver configuration: {0}")]
    Config(String),

    #[error("correction did not terminate after {backtracks} backtracks (lambda = {lambda:e}, displacement = {displacement:e}, zeta = {zeta:e})")]
    CorrectionFailure { backtracks: usize, lambda: f64, displacement: f64, zeta: f64 },

    #[error("{method} linesearch did not terminate after {backtracks} trials (lambda = {lambda:e})")]
    LinesearchFailure { method: &'static str, backtracks: usize, lambda: f64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, VipegError>;
