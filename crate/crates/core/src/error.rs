use thiserror::Error;

use crate::qscheck::Disagreement;
use crate::varset::VarSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("the origin is not an interior point of the polytope")]
    NotInteriorOrigin,

    #[error("polytope is not full-dimensional (dimension {dim} in ambient dimension {ambient})")]
    NotFullDim { dim: usize, ambient: usize },

    #[error("rays do not span the lattice over the rationals")]
    DegenerateFan,

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("invalid ambient: {0}")]
    InvalidAmbient(String),

    #[error("too many variables: {0} (at most 64 supported)")]
    TooManyVariables(usize),

    #[error("stratum {0} is not relevant")]
    IrrelevantStratum(VarSet),

    #[error("stratum {0} is not contained in the base locus")]
    NotBaseStratum(VarSet),

    #[error("gamma must be a nonempty subset of the stratum")]
    EmptyGamma,

    #[error("gamma {gamma} is not contained in the stratum {stratum}")]
    GammaNotInStratum { gamma: VarSet, stratum: VarSet },

    #[error("the monomial basis contains the generator x{}", .0 + 1)]
    GeneratorInBasis(usize),

    #[error("rank and polytope methods disagree on stratum {}", .0.stratum)]
    MethodDisagreement(Box<Disagreement>),

    #[error("ambient is not a fake weighted projective space")]
    NotFakeWps,

    #[error("expected a square exponent matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("system degree {degree} does not exceed every variable degree")]
    DegreeTooSmall { degree: i64 },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("no positive weight vector solves the transposed system")]
    NoPositiveSolution,

    #[error("dual polytope has non-integral vertices")]
    NonIntegralDual,

    #[error("lattice point {0:?} gives a negative exponent")]
    PointOutsideP2(Vec<i64>),

    #[error("monomials {first} and {second} have different degrees (difference {difference})")]
    NotHomogeneous {
        first: usize,
        second: usize,
        difference: String,
    },

    #[error("duplicate monomial at rows {0} and {1}")]
    DuplicateRow(usize, usize),

    #[error("monomial system must contain at least one monomial")]
    NoMonomials,

    #[error("{0}")]
    Unsupported(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
