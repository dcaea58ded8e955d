use thiserror::Error;

use crate::homology::HomologyCoords;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type. Negative verdicts (a cycle failing to bound,
/// fractional periods) are reported through result types, not errors;
/// errors signal contract violations or numerical failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("non-manifold ridge {ridge:?} has {cofaces} cofaces (expected 2)")]
    NonManifold { ridge: Vec<usize>, cofaces: usize },

    #[error("no consistent orientation of the top simplices exists")]
    NonOrientable,

    #[error("resolution too small: {0}")]
    ResolutionTooSmall(String),

    #[error("degree {degree} out of range for dimension {dim}")]
    DegreeOutOfRange { degree: usize, dim: usize },

    #[error("cochain degrees add beyond the complex dimension: {0}")]
    DegreeOverflow(String),

    #[error("chain is not a cycle")]
    NotACycle,

    #[error("cycle is not a boundary; homology coordinates {coords}")]
    NotABoundary { coords: HomologyCoords },

    #[error("evaluation lattice is not unimodular over the integers")]
    NotUnimodular,

    #[error("duality pairing is singular")]
    SingularPairing,

    #[error("singular mass matrix: {0}")]
    SingularMass(String),

    #[error("harmonic rank ambiguous: {0}")]
    RankAmbiguous(String),

    #[error("solver diverged: {0}")]
    SolverDiverged(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("format error: {0}")]
    Format(String),
}
