use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("d = {0} is out of range (need 2 <= d <= {max})", max = crate::MAX_D)]
    InvalidDimension(usize),
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("residue {value} at position {index} is not in [0, {d})")]
    ResidueOutOfRange { index: usize, value: usize, d: usize },
    #[error("construction requires {0}")]
    Precondition(&'static str),
    #[error("{what} violated: residual {residual:e} exceeds {tolerance:e}")]
    Tolerance {
        what: &'static str,
        residual: f64,
        tolerance: f64,
    },
    #[error("cannot take the rank of an empty vector set")]
    EmptySet,
    #[error("vectors mix probability and correlation spaces or lengths")]
    InconsistentSpace,
    #[error("modulus {p} is not a prime congruent to 1 mod {d}")]
    BadModulus { p: u64, d: usize },
    #[error("enumeration limit of {0} strategies exceeded")]
    LimitExceeded(usize),
    #[error("zero vector cannot be normalized")]
    ZeroVector,
}
