use thiserror::Error;

/// Errors produced by region geometry, class translation, factor formulas and search.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("negative scale of a half-plane requires reflection-tolerant mode")]
    UnsupportedOrientation,

    #[error("scale factor must be a nonzero finite real, got {0}")]
    ZeroScale(f64),

    #[error("inversion unsupported: {0}")]
    UnsupportedInversion(String),

    #[error("region is empty or has no area")]
    EmptyRegion,

    #[error("region has {0} atoms; at most 3 are supported")]
    TooManyAtoms(usize),

    #[error("unbounded search domain: {0}")]
    UnboundedRegion(String),

    #[error("farthest point is ambiguous: anchor coincides with the circle center")]
    AmbiguousArgmax,

    #[error("invalid operator class: {0}")]
    InvalidClass(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid shift: s must differ from 1")]
    InvalidShift,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resolvent point 0 has no finite operator realization")]
    SingularResolvent,

    #[error("boundary sample set is empty")]
    EmptyBoundary,
}

pub type Result<T> = std::result::Result<T, Error>;
