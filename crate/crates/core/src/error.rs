use thiserror::Error;

/// Errors raised by the impurity accumulators and estimators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ImpurityError {
    #[error("mass must be strictly positive, got {0}")]
    NonPositiveMass(f64),

    #[error("class count must be nonnegative, got {0}")]
    NegativeCount(f64),

    #[error("cannot remove an element from an empty sample")]
    EmptyState,

    #[error("class mass {mass} exceeds sample total {total}")]
    MassExceedsTotal { mass: f64, total: f64 },

    #[error("cross term must be nonnegative, got {0}")]
    NegativeCrossTerm(f64),

    #[error("sample total must be positive, got {0}")]
    NonPositiveTotal(f64),

    #[error("window capacity must be at least 1")]
    ZeroCapacity,

    #[error("fading factor must lie in (0, 1], got {0}")]
    InvalidAlpha(f64),

    #[error("inconsistent estimator state: {0}")]
    InconsistentState(String),
}

pub type Result<T, E = ImpurityError> = std::result::Result<T, E>;

/// `x > 0`, false for NaN.
#[inline]
pub(crate) fn positive(x: f64) -> bool {
    x > 0.0
}
