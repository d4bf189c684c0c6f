use num_rational::Rational64;
use thiserror::Error;

use crate::family::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("level must be at least 1, got {0}")]
    InvalidLevel(u32),

    #[error("ambient dimension {dim} exceeds the {limit}-coordinate capacity (level {level})")]
    Capacity { level: u32, dim: usize, limit: usize },

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{family} is not supported here: {reason}")]
    Unsupported { family: Family, reason: &'static str },

    #[error("vector is not in the span of the simple roots")]
    NotInSpan,

    #[error("vector is not in the root lattice (rational coefficients {coeffs:?})")]
    NonLattice { coeffs: Vec<Rational64> },

    #[error("not a root of {0}")]
    NotARoot(String),

    #[error("elements belong to different algebras")]
    MixedAlgebra,

    #[error("degenerate projection axes")]
    DegenerateAxes,

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
