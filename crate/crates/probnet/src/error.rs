//! Typed errors for the whole toolkit.
//!
//! Errors fall into two broad families that the CLI maps to distinct exit
//! codes: everything that is wrong with the *input* (sizes, domains, file
//! formats, invalid covariance specifications) and everything that goes wrong
//! while *solving* (boundary degrees, non-convergence, singular systems,
//! unbracketed roots).

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid pair: {0}")]
    InvalidPair(String),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid covariance spec: {0}")]
    InvalidSpec(String),

    /// Cholesky pivot fell below the PSD tolerance; `index` is the failing
    /// latent coordinate, `pivot` its value.
    #[error("not positive semidefinite: pivot {pivot:.6e} at index {index}")]
    NotPsd { index: usize, pivot: f64 },

    /// A degree sits on the boundary {0, n-1} where no finite solution of the
    /// moment equations exists.
    #[error("boundary degree at node {node}: d = {degree}")]
    BoundaryDegree { node: usize, degree: f64 },

    /// Newton (or quasi-Newton) ran out of iterations; carries the best
    /// iterate seen so that callers can inspect or resume.
    #[error("no convergence after {iterations} iterations (best residual {residual:.3e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        best: Vec<f64>,
    },

    #[error("singular matrix")]
    SingularMatrix,

    /// Root-finding bracket has no sign change; reports g at both ends.
    #[error("boundary estimate: g({lo}) = {g_lo:.6e}, g({hi}) = {g_hi:.6e} have the same sign")]
    BoundaryEstimate {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },

    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("duplicate edge at line {line}: {i} {j}")]
    DuplicateEdge { line: usize, i: usize, j: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable kind tag, stable across releases.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidSize(_) => "invalid-size",
            Error::InvalidPair(_) => "invalid-pair",
            Error::InvalidIndex(_) => "invalid-index",
            Error::Domain(_) => "domain",
            Error::InvalidInput(_) => "invalid-input",
            Error::InvalidSpec(_) => "invalid-spec",
            Error::NotPsd { .. } => "not-positive-semidefinite",
            Error::BoundaryDegree { .. } => "boundary-degree",
            Error::NoConvergence { .. } => "no-convergence",
            Error::SingularMatrix => "singular-matrix",
            Error::BoundaryEstimate { .. } => "boundary-estimate",
            Error::Format { .. } => "format",
            Error::DuplicateEdge { .. } => "duplicate-edge",
            Error::Io(_) => "io",
        }
    }

    /// True for failures of the solving stage rather than of the input.
    pub fn is_solver_error(&self) -> bool {
        matches!(
            self,
            Error::BoundaryDegree { .. }
                | Error::NoConvergence { .. }
                | Error::SingularMatrix
                | Error::BoundaryEstimate { .. }
        )
    }
}
