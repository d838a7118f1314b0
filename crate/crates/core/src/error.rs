//! Error type shared across the crate.

/// Everything that can go wrong while building systems, iterating clouds,
/// or assembling landscapes. Values carried by variants are pre-formatted
/// strings so the enum stays independent of the scalar type parameter.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("an iterated function system needs at least one map")]
    NoMaps,

    #[error("contraction ratio must lie strictly between 0 and 1, got {0}")]
    InvalidRatio(String),

    #[error("offset {index} has {found} coordinates, expected {expected}")]
    OffsetDimension {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("offsets {first} and {second} are identical; maps must be distinct")]
    DuplicateOffset { first: usize, second: usize },

    #[error("{what} must be finite")]
    NonFinite { what: &'static str },

    #[error("point cloud is empty")]
    EmptyCloud,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("map index {index} out of range for a system with {count} maps")]
    MapIndexOutOfRange { index: usize, count: usize },

    #[error("point cap exceeded: iteration would reach {projected} points, cap is {cap}")]
    PointCapExceeded { projected: usize, cap: usize },

    #[error("operation requires a one-dimensional system, this one has dimension {dim}")]
    NotOneDimensional { dim: usize },

    #[error("images of the attractor are not well-separated; exact resolutions are undefined")]
    NotWellSeparated,

    #[error("threshold must be nonnegative and finite, got {0}")]
    InvalidThreshold(String),

    #[error("requested {requested} resolution values but the cloud supports at most {available}")]
    TooManyDeltas { requested: usize, available: usize },

    #[error("invalid persistence diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid piecewise-linear function: {0}")]
    InvalidPiecewiseLinear(String),

    #[error("scale factor must be positive and finite, got {0}")]
    InvalidScale(String),

    #[error("invalid landscape operator: {0}")]
    InvalidOperator(String),

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(String),

    #[error("operator iteration did not settle within {iterations} steps")]
    NoConvergence { iterations: usize },

    #[error("level index must be at least 1")]
    ZeroLevel,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("CSV parse error on line {line}: {message}")]
    Csv { line: usize, message: String },

    #[error("unknown preset {name:?}; known presets: {known}")]
    UnknownPreset { name: String, known: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
