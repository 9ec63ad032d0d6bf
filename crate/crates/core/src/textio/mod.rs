//! Text grammar for polynomials, derivations and endomorphisms.
//!
//! ```text
//! poly     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' nat)?
//! base     := int ('/' nat)? | 'x' | 'y' nat | '(' poly ')'
//! deriv    := entry ((';' | newline) entry)*     entry := 'y' nat ':' 'a' '=' poly ',' 'b' '=' poly
//! endo     := image ((';' | newline) image)*     image := ('x' | 'y' nat) '->' poly
//! ```
//!
//! Formatting is canonical, so `format(parse(s))` is stable.

use std::fmt;

mod format;
mod lexer;
mod parser;

pub use format::{format_derivation, format_endo, format_poly, format_triangular};
pub use parser::{
    parse_derivation, parse_endo, parse_expr, parse_poly, parse_unipoly, Expr, ExprKind,
    ParsedDerivation, MAX_EXPONENT,
};

/// A syntax error at byte offset `pos` of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: usize, message: impl Into<String>) -> Self {
        Self {
            pos,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

impl fmt::Display for ParsedDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParsedDerivation::Shamsuddin(d) => f.write_str(&format_derivation(d)),
            ParsedDerivation::Triangular(d) => f.write_str(&format_triangular(d)),
        }
    }
}
