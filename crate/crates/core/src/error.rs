use thiserror::Error;

use crate::exactalg::AlgError;

/// Errors raised by the geometric layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("homogeneous coordinates (0:0) do not define a point")]
    ZeroPoint,
    #[error("point is not on the unit sphere: x^2 + y^2 + z^2 = {0}")]
    NotOnSphere(String),
    #[error("ideal is not of curvilinear graph shape in this chart")]
    NotCurvilinear,
    #[error("verticality is only defined for sphere jets on the equator z = 0")]
    NotOnEquator,
    #[error("jets live on different surfaces")]
    MixedSurfaces,
    #[error("jets are not mutually distant")]
    NotDistant,
    #[error("points are not pairwise distinct")]
    DuplicatePoints,
    #[error("twist polynomials must have equal degree, got {0:?} and {1:?}")]
    DegreeMismatch(Option<usize>, Option<usize>),
    #[error("p^2 + q^2 = r^2 fails")]
    IdentityFails,
    #[error("{poly} has a root in the forbidden region, isolated in [{lo}, {hi}]")]
    RootInForbiddenRegion { poly: String, lo: String, hi: String },
    #[error("Moebius matrix is singular")]
    SingularMatrix,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("order lists differ: {0:?} vs {1:?}")]
    OrderMismatch(Vec<usize>, Vec<usize>),
    #[error("the scalar type cannot hold the square root of {0}")]
    NeedsExtension(String),
    #[error("no admissible choice among the first {0} candidates")]
    EnumerationExhausted(usize),
    #[error("blow-up record {0} lies on a cycle of parent references")]
    CyclicReference(usize),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("invalid JSON: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
