use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("zero vector has no normal direction")]
    ZeroVector,

    #[error("linear map is singular")]
    SingularMap,

    #[error("projective map sends vertex {index} to a non-positive homogeneous coordinate")]
    ProjectiveOutOfRange { index: usize },

    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),

    #[error("polytope needs dimension >= 1 and at least dim+1 vertices")]
    TooFewVertices,

    #[error("at most {max} vertices are supported, got {got}")]
    TooManyVertices { max: usize, got: usize },

    #[error("vertices {first} and {second} coincide")]
    DuplicateVertex { first: usize, second: usize },

    #[error("point set spans an affine subspace of dimension {affine_dim} < {dim}")]
    NotFullDimensional { dim: usize, affine_dim: usize },

    #[error("point {index} is not a vertex of the convex hull")]
    RedundantPoint { index: usize },

    #[error("polytope is not simplicial")]
    NotSimplicial,

    #[error("the empty face has no tangent cone in the boundary complex")]
    EmptyFace,

    #[error("ray lies on hyperplane {hyperplane} of the arrangement")]
    BoundaryRay { hyperplane: usize },

    #[error("sign vector has length {got}, arrangement has {expected} hyperplanes")]
    SignLength { expected: usize, got: usize },

    #[error("invalid sign string {0:?}")]
    InvalidSignString(String),

    #[error("sign vector {0} is not a region of the arrangement")]
    UnknownRegion(String),

    #[error("region weights do not cover the arrangement: {0}")]
    RegionKeyMismatch(String),

    #[error("weights must be non-negative, found {0}")]
    NegativeWeight(String),

    #[error("weights must sum to 1, found {0}")]
    WeightSum(String),

    #[error("operation requires an exact angle model")]
    EstimatedWeights,

    #[error("monte-carlo models are already even and cannot be mirrored")]
    MirrorUnsupported,

    #[error("vector has first index {got}, expected {expected}")]
    IndexConvention { expected: i32, got: i32 },

    #[error("vector length {got} does not match dimension (expected {expected})")]
    LengthMismatch { expected: usize, got: usize },

    #[error("gamma routes disagree at index {index}: {transform} vs {region_sum}")]
    RouteDisagreement {
        index: usize,
        transform: String,
        region_sum: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("line shelling failed: {0}")]
    Shelling(String),

    #[error("generator exhausted {attempts} attempts without a valid instance")]
    RetriesExhausted { attempts: usize },

    #[error("no one-dark-facet realization within {iterations} iterations (best dark-facet count {best:?})")]
    SearchNotFound {
        iterations: usize,
        best: Option<usize>,
    },

    #[error("unknown example {0:?}")]
    UnknownExample(String),

    #[error("campaign check failed: {0}")]
    CampaignFailure(String),

    #[error("{0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code, printed by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } | Error::LengthMismatch { .. } => "E_DIMENSION",
            Error::ZeroVector => "E_ZERO_VECTOR",
            Error::SingularMap | Error::ProjectiveOutOfRange { .. } => "E_MAP",
            Error::InvalidRational(_) | Error::InvalidSignString(_) | Error::Parse(_) => "E_PARSE",
            Error::TooFewVertices
            | Error::TooManyVertices { .. }
            | Error::DuplicateVertex { .. }
            | Error::NotFullDimensional { .. }
            | Error::RedundantPoint { .. } => "E_POLYTOPE",
            Error::NotSimplicial => "E_NOT_SIMPLICIAL",
            Error::EmptyFace => "E_EMPTY_FACE",
            Error::BoundaryRay { .. } => "E_BOUNDARY_RAY",
            Error::SignLength { .. } | Error::UnknownRegion(_) | Error::RegionKeyMismatch(_) => {
                "E_REGION"
            }
            Error::NegativeWeight(_) | Error::WeightSum(_) => "E_WEIGHTS",
            Error::EstimatedWeights | Error::MirrorUnsupported => "E_MODEL",
            Error::IndexConvention { .. } => "E_INDEX",
            Error::RouteDisagreement { .. } => "E_ROUTES",
            Error::Precondition(_) => "E_PRECONDITION",
            Error::Shelling(_) => "E_SHELLING",
            Error::RetriesExhausted { .. } => "E_RETRIES",
            Error::SearchNotFound { .. } => "E_NOT_FOUND",
            Error::UnknownExample(_) => "E_UNKNOWN_EXAMPLE",
            Error::CampaignFailure(_) => "E_CAMPAIGN",
        }
    }
}
