use thiserror::Error;

use crate::lp::LpError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no edges")]
    EmptyInput,

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge {{{u}, {v}}}: {reason}")]
    InvalidEdge { u: usize, v: usize, reason: &'static str },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has {n} vertex; at least two are needed to form a pair")]
    TooFewVertices { n: usize },

    #[error("resolving set of a pair needs two distinct vertices (got {0} twice)")]
    SameVertex(usize),

    #[error("k={k} is below 1")]
    KBelowOne { k: String },

    #[error("k={k} exceeds kappa={kappa}")]
    KAboveKappa { k: String, kappa: usize },

    #[error("k={k} must be an integer here")]
    NonIntegralK { k: String },

    #[error("k={k} lies outside the formula's range {range}")]
    OutsideFormulaRange { k: String, range: String },

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),

    #[error("invalid family spec: {0}")]
    InvalidFamily(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("graph is not a tree")]
    NotATree,

    #[error("graph is a path; use the path formulas instead of tree analysis")]
    PathNotTree,

    #[error("exhaustive search refused: n={n} exceeds the enumeration guard {guard}")]
    GuardExceeded { n: usize, guard: usize },

    #[error(transparent)]
    Lp(#[from] LpError),
}

impl Error {
    /// True for errors caused by a valid input falling outside a parameter's
    /// domain, as opposed to malformed input.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Disconnected
                | Error::TooFewVertices { .. }
                | Error::SameVertex(_)
                | Error::KBelowOne { .. }
                | Error::KAboveKappa { .. }
                | Error::NonIntegralK { .. }
                | Error::OutsideFormulaRange { .. }
                | Error::Unsupported(_)
                | Error::NotATree
                | Error::PathNotTree
                | Error::GuardExceeded { .. }
        )
    }
}
