//! Derivations, ring endomorphisms and the commutation test between them.

mod derivation;
mod endo;

pub use derivation::{Block, Derivation, PolynomialDerivation, TriangularDerivation};
pub use endo::{commutes, AffineEndo, PolyEndo};
