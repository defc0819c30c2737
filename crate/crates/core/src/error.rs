use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ZeroRay: the zero vector has no primitive generator")]
    ZeroRay,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("SingularSystem: coefficient matrix is singular")]
    SingularSystem,

    #[error("DegeneratePolytope: vertices span an affine space of dimension {rank} < {dim}")]
    DegeneratePolytope { rank: usize, dim: usize },
    #[error("duplicate vertex at positions {first} and {second}")]
    DuplicateVertex { first: usize, second: usize },
    #[error("NotReflexive: {0}")]
    NotReflexive(String),
    #[error("OriginNotInterior: the origin is not an interior point")]
    OriginNotInterior,
    #[error("NonSimplicialCone: cone {cone:?} has {size} rays in dimension {dim}")]
    NonSimplicialCone { cone: Vec<usize>, size: usize, dim: usize },
    #[error("ray {index} is not primitive")]
    NonPrimitiveRay { index: usize },

    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("NonSmoothCone: maximal cone {cone:?} has determinant {det}")]
    NonSmoothCone { cone: Vec<usize>, det: String },
    #[error("WallDefect: wall {wall:?} lies in {count} maximal cones")]
    WallDefect { wall: Vec<usize>, count: usize },
    #[error("DimensionTooSmall: dimension {0} is below the supported minimum")]
    DimensionTooSmall(usize),
    #[error("MalformedStar: {0}")]
    MalformedStar(String),
    #[error("InconsistentWall: {0}")]
    InconsistentWall(String),

    #[error("OddDimension: pseudo-symmetric families need even dimension, got {0}")]
    OddDimension(usize),

    #[error("{path}:{line}: syntax error: {msg}")]
    Syntax { path: String, line: usize, msg: String },
    #[error("{path}:{line}: NonIntegerToken {token:?}")]
    NonIntegerToken { path: String, line: usize, token: String },
    #[error("{path}:{line}: row has {found} entries, expected {expected}")]
    RowLength { path: String, line: usize, expected: usize, found: usize },
    #[error("{path}: VerticesMissing: no VERTICES property")]
    VerticesMissing { path: String },
    #[error("{path}:{line}: NotAffineVertex: leading homogeneous coordinate is {found}, expected 1")]
    NotAffineVertex { path: String, line: usize, found: String },
    #[error("{path}: declared kind {found} but {expected} was requested")]
    KindMismatch { path: String, expected: String, found: String },
    #[error("{}: {msg}", path.display())]
    Io { path: PathBuf, msg: String },
    #[error("cannot start worker pool: {0}")]
    WorkerPool(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, err: std::io::Error) -> Self {
        Error::Io { path: path.into(), msg: err.to_string() }
    }
}
