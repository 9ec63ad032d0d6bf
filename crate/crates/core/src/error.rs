use thiserror::Error;

use crate::textio::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("arity mismatch: expected {expected} y-variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("b for y{variable} depends on y{depends_on}, which does not come before it")]
    NotTriangular { variable: usize, depends_on: usize },
    #[error("coefficient b for y{variable} is not a polynomial in x alone")]
    NotUnivariate { variable: usize },
    #[error("a Shamsuddin derivation needs at least one y-variable")]
    EmptyDerivation,
    #[error("block endomorphism must fix x")]
    MovesX,
    #[error("block index {index} out of range ({count} blocks)")]
    BlockOutOfRange { index: usize, count: usize },
    #[error("operation requires a single-block derivation, found {blocks} blocks")]
    NotSingleBlock { blocks: usize },
    #[error("operation only applies to blocks with a = 0")]
    NotZeroCoefficient,
}

impl Error {
    /// True for errors raised while reading text, as opposed to semantic
    /// problems with well-formed input.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}
