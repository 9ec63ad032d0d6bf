//! Exact decision procedures for Shamsuddin derivations of `Q[x, y1, ..., yn]`.
//!
//! A Shamsuddin derivation has the shape `D = ∂x + Σ (a_i(x) y_i + b_i(x)) ∂_i`.
//! This crate decides whether such a derivation is simple, constructs and
//! verifies non-trivial elements of its isotropy group `{ρ ∈ Aut : ρD = Dρ}`,
//! describes that group for a single block of variables sharing one `a(x)`,
//! tests local finiteness of triangular derivations, and classifies the image
//! `Im D` as a Mathieu-Zhao subspace where a decision criterion applies.
//!
//! Everything is computed over the rationals with exact arithmetic.
//!
//! ```
//! use shamsuddin_core::textio::{format_endo, parse_derivation};
//! use shamsuddin_core::{commutes, is_simple, isotropy_witness};
//!
//! let d = parse_derivation("y1: a=1, b=x").unwrap().as_shamsuddin().unwrap().clone();
//! assert!(!is_simple(&d).simple);
//! let w = isotropy_witness(&d).unwrap();
//! assert!(commutes(&w.endo, &d).unwrap());
//! assert_eq!(format_endo(&w.endo), "x -> x ; y1 -> -1*y1 - 2*x - 2");
//! ```

pub mod algebra;
pub mod analysis;
pub mod deriv;
mod error;
pub mod ode;
pub mod textio;

pub use algebra::{
    mat_solve_affine, nonneg_kernel_witness, AffineSpace, MultiPoly, QMatrix, Rational, UniPoly,
    Var,
};
pub use analysis::{
    embed_block_endo, is_locally_finite, is_simple, is_simple_block, isotropy_describe_block,
    isotropy_is_trivial, isotropy_witness, mz_classify, nat_dependence_witness, preimage_bounded,
    sample_isotropy_element, BlockVerdict, IsotropyCase, IsotropyDescription, IsotropyElement,
    IsotropyWitness, MzRule, MzStatus, MzVerdict, ShiftConstraint, SimplicityVerdict, WitnessKind,
};
pub use deriv::{
    commutes, AffineEndo, Block, Derivation, PolyEndo, PolynomialDerivation, TriangularDerivation,
};
pub use error::Error;
pub use ode::{
    degree_bound, has_nonzero_k_solution, solve_linear_ode, solve_parametric, OdeSolutions,
    ParamSolution, ParamSolutionSpace,
};
pub use textio::{ParseError, ParsedDerivation};
