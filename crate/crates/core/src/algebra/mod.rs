//! Exact scalars, polynomials and linear algebra over the rationals.

mod matrix;
mod multipoly;
mod nonneg;
mod rational;
mod unipoly;

pub use matrix::{mat_solve_affine, AffineSpace, QMatrix};
pub use multipoly::{Monomial, MultiPoly, Var};
pub use nonneg::nonneg_kernel_witness;
pub use rational::{denominator_lcm, int, rat, Rational};
pub use unipoly::UniPoly;
