use thiserror::Error;

use crate::iteration::Stage;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("diagram is not functorial: {0}")]
    NonFunctorialDiagram(String),
    #[error("index fragment is not directed: {0}")]
    NotDirected(String),
    #[error("no such index: {0}")]
    NoSuchIndex(String),
    #[error("ill-typed arrow: {0}")]
    IllTypedArrow(String),
    #[error("index structures differ: {0}")]
    IndexMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("groupoid arrow is not invertible: {0}")]
    NonInvertibleGroupoidArrow(String),
    #[error("not an algebra for this functor: {0}")]
    NoAlgebra(String),
    /// The iteration did not become stationary within the budget. Carries the
    /// stages that were computed.
    #[error("budget of {budget} stages exceeded before stationarity")]
    BudgetExceeded { budget: usize, stages: Vec<Stage> },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("name error at {line}:{col}: {msg}")]
    Name {
        line: usize,
        col: usize,
        msg: String,
    },
}

impl Error {
    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. } | Error::Name { .. } => 1,
            Error::BudgetExceeded { .. } => 2,
            Error::Invariant(_) => 3,
            _ => 1,
        }
    }
}
