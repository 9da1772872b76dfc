use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid sizing: {0}")]
    Sizing(String),
    #[error("signal length {got} does not match grid size {expected}")]
    Misaligned { expected: usize, got: usize },
    #[error("integration diverged at x = {x} ({context})")]
    Diverged { x: f64, context: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("kink construction failed: {0}")]
    Kink(String),
    #[error("bound state present at eigenvalue {eigenvalue}")]
    BoundState { eigenvalue: f64 },
    #[error("inconclusive zero-energy classification: |∫V m| = {value:.3e} lies within [{lower:.3e}, {upper:.3e}]")]
    Inconclusive { value: f64, lower: f64, upper: f64 },
    #[error("low-energy expansion failed: {0}")]
    Expansion(String),
    #[error("data quality: {0}")]
    DataQuality(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("blow-up at t = {t}")]
    BlowUp { t: f64 },
    #[error("inconsistent state: {0}")]
    InconsistentState(String),
    #[error("discretization quality: {0}")]
    Discretization(String),
    #[error("internal consistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
