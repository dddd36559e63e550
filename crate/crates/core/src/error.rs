use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ampleness criterion needs e >= 0, got e = {0}")]
    NonNegativeEOnly(i64),

    #[error("arrangement has no singular points")]
    EmptySingularLocus,

    #[error("profile fails validation: {}", .0.join(", "))]
    ValidationFailed(Vec<String>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("incidence audit failed: {0}")]
    AuditFailed(String),

    #[error("bound requires an arrangement disjoint from the normalized section")]
    C0DisjointRequired,

    #[error("bound requires b = ae, got a = {a}, b = {b}, e = {e}")]
    BNotAe { a: i64, b: i64, e: i64 },

    #[error("parameters out of range: {0}")]
    ParameterRange(String),

    #[error("proportionality formula needs only double and sixfold points, found t_{0} > 0")]
    MultiplicityProfileNotBinary26(u32),

    #[error("curve statistics inconsistent with profile: {0}")]
    InconsistentCurveStats(String),

    #[error("expected an integral count, got {0}")]
    NonIntegralCount(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
