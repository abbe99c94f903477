use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A displayed formula divides by a quantity that vanishes for these inputs.
    #[error("{guard} = 0: {reason}")]
    DegenerateDenominator {
        guard: &'static str,
        reason: &'static str,
    },

    /// An operation was called outside its stated domain.
    #[error("{0}")]
    GuardViolation(String),

    #[error("invalid sequence parameters: {0}")]
    InvalidParams(String),

    #[error("invalid rational literal `{0}`")]
    ParseRational(String),

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
