use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate basis: directions {0} and {1} are parallel")]
    DegenerateBasis(i64, i64),
    #[error("direction mismatch: {0} vs {1}")]
    DirectionMismatch(usize, usize),
    #[error("lines are parallel (direction {0})")]
    ParallelLines(usize),
    #[error("coset closure did not terminate for offset {0}")]
    ClosureOverflow(usize),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
