use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the exact kernel.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("ideal has no Gröbner basis attached")]
    MissingGroebnerBasis,

    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,

    #[error("ideal is the unit ideal")]
    UnitIdeal,

    #[error("matrices B{0} and B{1} do not commute")]
    NonCommuting(usize, usize),

    #[error("datum is not stable: Krylov rank {rank} of {c}")]
    Unstable { rank: usize, c: usize },

    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("duplicate point at index {0}")]
    DuplicatePoint(usize),

    #[error("dimension of V must be positive")]
    EmptySpace,

    #[error("B{matrix} has eigenvalues outside ℚ (irreducible factor {factor})")]
    IrrationalEigenvalues { matrix: usize, factor: String },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
