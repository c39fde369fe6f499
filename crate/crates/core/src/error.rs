//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a root of unity")]
    NotRootOfUnity(String),
    #[error("value does not lie in the cyclotomic field of order {0}")]
    NotInSubfield(u64),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("condition (1) violated: {0}")]
    ConditionOneViolated(String),
    #[error("condition (2) violated: chi(a) != chi(b)")]
    ConditionTwoViolated,
    #[error("condition (3) violated: ab = 1")]
    ConditionThreeViolated,
    #[error("order must be odd and at least 3, got {0}")]
    EvenOrder(u64),
    #[error("elements belong to different data")]
    DatumMismatch,
    #[error("weight has exponent {found}, projective witness needs {need}")]
    NotProjectiveWeight { found: usize, need: usize },
    #[error("w^2 is not a scalar multiple of w")]
    UnexpectedDependence,
    #[error("weight is not self-dual")]
    NotSelfDual,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("no module isomorphism found; this indicates an internal error")]
    IsomorphismNotFound,
    #[error("group order {order} exceeds the configured cap {cap}")]
    GroupTooLarge { order: u64, cap: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}
