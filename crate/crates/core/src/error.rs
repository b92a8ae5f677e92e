use thiserror::Error as ThisError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point is not a member of the set")]
    NotMember,
    #[error("vector is not a regular normal at the point")]
    NotRegularNormal,
    #[error("problem is not B-stationary")]
    NotBStationary,
    #[error("direction is not critical")]
    NotCritical,
    #[error("recursion did not terminate within the bound k <= {bound}")]
    InternalNonTermination { bound: usize },
    #[error("internal error: {0}")]
    Internal(String),
    #[error("multiplier set is empty: reference point is not feasible for the lower level")]
    NotNormal,
    #[error("direction is not in the critical cone")]
    NotCriticalDirection,
    #[error("directional multiplier LP is unbounded")]
    UnboundedMultiplierLp,
    #[error("directional multiplier sets are not constant on the critical cone")]
    ConstancyViolated,
    #[error("pair is not in the tangent cone to the graph")]
    NotTangent,
    #[error("parameter must be positive")]
    NonpositiveParameter,
    #[error("face enumeration exceeded the limit of {limit}")]
    TooManyFaces { limit: usize },
    #[error("invalid data: {0}")]
    Invalid(String),
}
