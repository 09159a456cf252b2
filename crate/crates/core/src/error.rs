use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("root finder did not converge after {iterations} iterations")]
    Convergence {
        iterations: usize,
        best: Vec<Complex64>,
    },
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error("matrix has corank {corank} where corank 1 was required")]
    Corank { corank: usize },
    #[error("fit error: {0}")]
    Fit(String),
    #[error("rank error: expected rank {expected}, found {found}")]
    Rank { expected: usize, found: usize },
    #[error("frame error: {0}")]
    Frame(String),
    #[error("elimination error: {0}")]
    Elimination(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("seed exhausted: {0}")]
    Seed(String),
    #[error("not in |I_C(2)|: {0}")]
    Membership(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
