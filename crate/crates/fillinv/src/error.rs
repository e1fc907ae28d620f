//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // complex validation
    #[error("missing face {face:?} of simplex {simplex:?}")]
    MissingFace { simplex: Vec<usize>, face: Vec<usize> },
    #[error("vertex index {index} out of range (vertex_count {vertex_count})")]
    BadIndex { index: usize, vertex_count: usize },
    #[error("duplicate simplex {0:?}")]
    DuplicateSimplex(Vec<usize>),
    #[error("dimension {dim} out of range 1..={max}")]
    DimOutOfRange { dim: usize, max: usize },
    #[error("complex has no top-dimensional simplices")]
    NotPureDimensional,
    #[error("chain is not a cycle: boundary has {0} nonzero terms")]
    NotACycle(usize),

    // metric
    #[error("1-skeleton is disconnected: no path between vertices {0} and {1}")]
    Disconnected(usize, usize),
    #[error("scale factor must be positive")]
    NonpositiveScale,
    #[error("subdivision only supports complexes of dimension <= 2, got {0}")]
    UnsupportedDimension(usize),
    #[error("edge ({0}, {1}) has nonpositive length")]
    NonpositiveLength(usize, usize),
    #[error("metric space invariant violated: {0}")]
    BadMetric(String),

    // lipschitz
    #[error("distinct domain points {0} and {1} at distance zero")]
    ZeroDistance(usize, usize),

    // filling radius
    #[error("no fundamental class over the requested ring")]
    NoFundamentalClass,
    #[error("fundamental class survives at the diameter scale; increase max_dim")]
    NeverDies,

    // filling volume
    #[error("no chain with the prescribed boundary exists over the requested ring")]
    Infeasible,
    #[error("search budget exceeded ({0} nodes)")]
    SearchBudgetExceeded(u64),

    // simplicial maps
    #[error("vertex map sends simplex {0:?} outside the target complex")]
    NotSimplicial(Vec<usize>),
    #[error("complex is not orientable over the requested ring")]
    NotOrientable,
    #[error("pushforward of the fundamental cycle is not a multiple of the target class")]
    NotAMultiple,
    #[error("interpolation parameter t must be positive")]
    NonpositiveT,
    #[error("edge lengths are not realizable by a Euclidean simplex")]
    NotEuclideanRealizable,

    // cell attachment
    #[error("attachment radius too small: {0}")]
    RTooSmall(String),
    #[error("bad attaching cycle: {0}")]
    BadAttachingCycle(String),
    #[error("experiment hypothesis failed: {0}")]
    HypothesisFailed(String),

    // cli / parsing
    #[error("bad fixture or config parameter: {0}")]
    BadParams(String),
    #[error("cannot parse scalar from {0:?}")]
    BadScalar(String),
    #[error("bad input format: {0}")]
    BadFormat(String),
}
