use thiserror::Error;

use crate::contingency::Margin;

pub type Result<T, E = EvalError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("empty table: all four cells are zero")]
    EmptyTable,

    #[error("negative count {value} in cell {cell}")]
    NegativeCount { cell: &'static str, value: i64 },

    #[error("invalid rates: {0}")]
    InvalidRates(String),

    #[error("empty input: no instances")]
    EmptyInput,

    #[error("length mismatch: {gold} gold labels vs {other} predictions/scores")]
    LengthMismatch { gold: usize, other: usize },

    #[error("{measure} is undefined: zero {margin} margin")]
    ZeroMargin { measure: &'static str, margin: Margin },

    #[error("{measure} is undefined: {reason}")]
    Undefined { measure: &'static str, reason: &'static str },

    #[error("infeasible parameters: {quantity} = {value} lies outside [0, 1]")]
    Infeasible { quantity: &'static str, value: f64 },

    #[error("gold labels contain a single class; both classes are required")]
    SingleClass,

    #[error("score at index {index} is not a finite number")]
    NonFiniteScore { index: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid study configuration: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<csv::Error> for EvalError {
    fn from(err: csv::Error) -> Self {
        let line = err.position().map(|p| p.line()).unwrap_or(0);
        let message = match err.into_kind() {
            csv::ErrorKind::Io(io) => return EvalError::Io(io),
            csv::ErrorKind::UnequalLengths { expected_len, len, .. } => {
                format!("expected {expected_len} fields, found {len}")
            }
            csv::ErrorKind::Utf8 { .. } => "invalid UTF-8".to_string(),
            kind => format!("{kind:?}"),
        };
        EvalError::Parse { line, message }
    }
}
