use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for a group on {count} generators")]
    InvalidGenerator { index: usize, count: usize },

    #[error("elements belong to different groups")]
    ClassMismatch,

    #[error("undecidable-in-formal-mode: {0}")]
    Undecidable(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid group class: {0}")]
    InvalidClass(String),

    #[error("orientation character is not a homomorphism: relator {0} evaluates to -1")]
    NotHomomorphism(String),

    #[error("not an automorphism of the free group: {0}")]
    NotAutomorphism(String),

    #[error("form is not hermitean at entry ({row}, {col})")]
    NotHermitean { row: usize, col: usize },

    #[error("orientation-reversing or odd 2-torsion blocks the diagonal decomposition at {0}")]
    TwoTorsion(String),

    #[error("presentation not asserted aspherical")]
    NotAspherical,

    #[error("presentation not normalized: {0}")]
    NotNormalized(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    /// Refusals are computations the toolkit declines rather than malformed input.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::Undecidable(_) | Error::NotAspherical | Error::NotNormalized(_) | Error::TwoTorsion(_)
        )
    }
}
