use thiserror::Error;

use crate::quat::Quat;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular matrix: best pivot norm {pivot:.3e} below threshold {threshold:.3e}")]
    Singular { pivot: f64, threshold: f64 },
    #[error("division by zero quaternion")]
    ZeroDivisor,
    #[error("eigenvalue iteration did not converge within {0} sweeps")]
    NonConvergence(usize),
    #[error("the pair (A, C) is not observable")]
    NotObservable,
    #[error("target polynomial degree {got} does not match system dimension {expected}")]
    DegreeMismatch { got: usize, expected: usize },
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("Ackermann requires a real-coefficient target polynomial (use --force to override)")]
    NoncentralTarget,
    #[error("unsupported root configuration: {0}")]
    UnsupportedRoots(String),
    #[error("{0} is not a right zero (residual {1:.3e})")]
    NotARoot(Quat, f64),
    #[error("state diverged (non-finite value) at step {0}")]
    Diverged(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code class: 1 parse, 2 precondition, 3 numeric.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) => 1,
            Error::Dimension(_)
            | Error::ZeroDivisor
            | Error::NotObservable
            | Error::DegreeMismatch { .. }
            | Error::NotMonic
            | Error::NoncentralTarget
            | Error::UnsupportedRoots(_) => 2,
            Error::Singular { .. }
            | Error::NonConvergence(_)
            | Error::NotARoot(..)
            | Error::Diverged(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
