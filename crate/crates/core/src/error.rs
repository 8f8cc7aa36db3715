use thiserror::Error;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structural mismatch: {0}")]
    Structural(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("operation requires an Artinian ring")]
    NotArtinian,

    #[error("operation divides by 2 and is refused in characteristic 2")]
    CharacteristicTwo,

    #[error("pole order at t=1 is {found}, expected {expected}")]
    Dimension { expected: usize, found: usize },

    #[error("multiplicity is undefined for the zero object")]
    UndefinedMultiplicity,

    #[error("invariant undefined for the zero module")]
    ZeroModule,

    #[error("complex is not minimal: {0}")]
    NotMinimal(String),

    #[error("entry ({row}, {col}) has degree {found}, expected {expected}")]
    EntryDegree {
        row: usize,
        col: usize,
        expected: i32,
        found: i32,
    },

    #[error("not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
