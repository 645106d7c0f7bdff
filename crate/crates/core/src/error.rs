use thiserror::Error;

use crate::geom::Geometry;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("geometry mismatch: {0:?} vs {1:?}")]
    GeometryMismatch(Geometry, Geometry),
    #[error("unsupported generator: {0}")]
    UnsupportedGenerator(&'static str),
    #[error("{op} is not available in {geometry:?} geometry")]
    UnsupportedGeometry { op: &'static str, geometry: Geometry },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("antipodal points do not determine a unique geodesic")]
    Antipodal,
    #[error("the two cycles are the same section")]
    CoincidentCycles,
    #[error("cycle kind error: {0}")]
    Kind(String),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("degenerate spec: {0}")]
    DegenerateSpec(String),
    #[error("unstable configuration: {0}")]
    Unstable(String),
    #[error("no intersection: {0}")]
    NoIntersection(String),
    #[error("sampling starved: {with_interior} of {attempted} attempts had interior, {needed} needed")]
    SamplingStarved {
        attempted: usize,
        with_interior: usize,
        needed: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
