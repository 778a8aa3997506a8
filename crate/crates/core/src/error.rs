use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("coefficient {0} is not in the field")]
    CoefficientNotInField(String),
    #[error("monomial {0} is not in the subalgebra")]
    MonomialOutsideSubalgebra(String),
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error("split shift makes a denominator vanish")]
    DegenerateSplit,
    #[error("budget exhausted after {0} steps")]
    BudgetExhausted(u64),
    #[error("element is not a unit of the reciprocal complement")]
    NotAUnit,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no decomposition found: {0}")]
    NoDecomposition(String),
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Marker for a division that does not come out exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("division is not exact")]
pub struct NotDivisible;
