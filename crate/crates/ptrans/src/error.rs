use thiserror::Error;

/// Error type shared by the special functions, the quadrature engine and the
/// transform/identity layers. Every failure is tagged; the library never
/// returns NaN or infinity silently.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain: {0}")]
    Domain(String),

    /// Evaluation at (or numerically indistinguishable from) a pole.
    #[error("pole: {0}")]
    Pole(String),

    /// Result does not fit in the floating-point range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// An iteration (series, continued fraction, Newton) ran out of budget.
    #[error("no convergence: {0}")]
    NonConvergence(String),

    /// The integrand produced a non-finite value at an interior point.
    #[error("integrand evaluation: {0}")]
    Eval(String),

    /// Tail of a semi-infinite integral is not integrable (or cannot be
    /// bounded from the supplied decay metadata).
    #[error("non-integrable tail: {0}")]
    Tail(String),

    /// Series acceleration failed to stabilize an oscillatory integral.
    #[error("acceleration failure: {0}")]
    Acceleration(String),

    /// Identity evaluated outside its validity strip.
    #[error("outside validity strip: {0}")]
    StripViolation(String),

    /// Malformed request (unknown id, missing parameter, bad config key).
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
