use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid braid word: {0}")]
    InvalidBraid(String),

    #[error("closure is a {0}-component link, not a knot")]
    NotAKnot(usize),

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("matrix is not invertible over the Laurent ring: {0}")]
    NotInvertible(String),

    #[error("eigenvalue iteration did not converge for a {size}x{size} matrix")]
    NoConvergence { size: usize },

    #[error("eigenvalue iteration failed at grid point {point:?} and at its neighbour")]
    GridPoint { point: (usize, usize) },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("result could not be verified: {0}")]
    Unverified(String),

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
