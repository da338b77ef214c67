use alloc::string::String;

/// Errors raised by table construction, validation and measure evaluation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("no data: all counts are zero or the input is empty")]
    EmptyData,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("ordering error: {0}")]
    Ordering(String),
    #[error("duplicate label `{0}` in support")]
    DuplicateLabel(String),
    #[error("invalid probability {value} at cell {index}")]
    InvalidProbability { index: usize, value: f64 },
    #[error("probabilities sum to {sum}, which is not 1 within {tolerance}")]
    NotNormalized { sum: f64, tolerance: f64 },
    #[error("alpha = {0} is outside the open interval (0, 2)")]
    AlphaOutOfRange(f64),
    #[error("invalid phi: {0}")]
    InvalidPhi(String),
    #[error("n = {0} is invalid; the circle example needs n >= 2")]
    InvalidN(u64),
    #[error("tensor with {cells} cells exceeds the cell budget of {budget}")]
    CellBudget { cells: u128, budget: usize },
    #[error("this operation needs raw samples, not an aggregated table")]
    NeedsSamples,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("label collision: `{0}` produced by two distinct values")]
    LabelCollision(String),
}

pub type Result<T> = core::result::Result<T, Error>;
