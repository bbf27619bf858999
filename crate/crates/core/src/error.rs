use alloc::string::String;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A process name or id does not belong to the system.
    #[error("unknown process `{0}`")]
    UnknownProcess(String),
    /// An action is not part of the declared alphabet.
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    /// Convex-combination coefficients must lie in (0,1] and sum to 1.
    #[error("coefficients must lie in (0,1] and sum to 1, got sum {0}")]
    CoefficientSum(String),
    /// A distribution (or distribution formula) is malformed.
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    /// A conjunction must have at least one member.
    #[error("conjunction must have at least one member")]
    EmptyConjunction,
    /// Discount factors live in (0,1].
    #[error("discount factor must lie in (0,1], got {0}")]
    InvalidDiscount(String),
    /// The operation is only defined for processes of finite depth.
    #[error("process `{0}` does not have finite depth")]
    NotFiniteProcess(String),
    /// Names must be nonempty.
    #[error("empty name")]
    EmptyName,
}

/// Result alias used across the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;
