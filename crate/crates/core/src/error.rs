use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("singular matrix: determinant {0:e} cannot be normalized")]
    Singular(f64),
    #[error("no isolated fixed points (identity)")]
    NoFixedPoints,
    #[error("axis undefined for {0} element")]
    AxisUndefined(&'static str),
    #[error("geodesic endpoints coincide")]
    DegenerateGeodesic,
    #[error("perpendicular undefined (parallel/asymptotic)")]
    PerpendicularUndefined,
    #[error("disjoint in H²")]
    DisjointInH2,
    #[error("geodesic is not planar (endpoints off the real line)")]
    NotPlanarGeodesic,
    #[error("cross ratio needs four distinct points with at most one at infinity")]
    CrossRatioDegenerate,
    #[error("label {0} is not in lowest terms")]
    NotReduced(String),
    #[error("label {0} is out of scope (negative rationals are not enumerated)")]
    OutOfScope(String),
    #[error("no parents: {0} is a base of the Farey tessellation")]
    NoParents(String),
    #[error("continued fraction undefined for 1/0")]
    InfiniteLabel,
    #[error("partner defined only for even labels (got {0})")]
    PartnerUndefined(String),
    #[error("malformed label {0:?}")]
    BadLabel(String),
    #[error("generator {0} is not loxodromic")]
    NotLoxodromic(&'static str),
    #[error("axes share an endpoint")]
    SharedEndpoints,
    #[error("numerical breakdown: {0}")]
    Numerical(String),
    #[error("model validation requires H² (real matrices)")]
    NotPlanar,
    #[error("model group validation failed: {0}")]
    ModelValidation(String),
    #[error("degenerate limit-set sample: {0} distinct points")]
    DegenerateSample(usize),
    #[error("period detection failed: {0}")]
    PeriodDetection(String),
    #[error("degenerate pair: {0}")]
    DegeneratePair(String),
    #[error("residual overflow: {0}")]
    ResidualOverflow(String),
    #[error("mark ordering failure: {0}")]
    MarkOrdering(String),
    #[error("input mismatch: {0}")]
    Mismatch(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("plot is planar-only")]
    PlanarOnly,
}
