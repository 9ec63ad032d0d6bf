use num_traits::{One, Zero};

use crate::algebra::{int, MultiPoly, QMatrix, Rational, UniPoly};
use crate::deriv::{AffineEndo, Derivation, PolyEndo};
use crate::error::Error;
use crate::ode::{has_nonzero_k_solution, solve_parametric, ParamSolution};

/// Scaling parameter used by every witness construction (any nonzero value
/// other than 1 works; 2 keeps outputs deterministic).
const WITNESS_PARAMETER: i64 = 2;

/// Outcome of the simplicity test for one block `∂x + Σ_j (a y_j + b_j) ∂_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockVerdict {
    pub simple: bool,
    /// A solution of `z' = a z + Σ k_j b_j` with `k != 0`, present exactly
    /// when the block is not simple.
    pub witness: Option<ParamSolution>,
}

/// The block is simple iff `z' = a z + Σ k_j b_j` has no polynomial solution
/// for any `k != 0`.
pub fn is_simple_block(a: &UniPoly, bs: &[UniPoly]) -> BlockVerdict {
    let witness = has_nonzero_k_solution(&solve_parametric(a, bs));
    BlockVerdict {
        simple: witness.is_none(),
        witness,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityVerdict {
    pub simple: bool,
    /// One entry per block, in block order.
    pub per_block: Vec<BlockVerdict>,
}

impl SimplicityVerdict {
    /// Index of the first block that is not simple.
    pub fn first_non_simple(&self) -> Option<usize> {
        self.per_block.iter().position(|b| !b.simple)
    }
}

/// A derivation in normal form is simple iff each of its blocks is.
pub fn is_simple(d: &Derivation) -> SimplicityVerdict {
    let per_block: Vec<BlockVerdict> = d
        .blocks()
        .iter()
        .map(|blk| is_simple_block(blk.a(), blk.bs()))
        .collect();
    SimplicityVerdict {
        simple: per_block.iter().all(|b| b.simple),
        per_block,
    }
}

/// Whether the isotropy group of `d` is `{id}`, which happens exactly when
/// `d` is simple.
pub fn isotropy_is_trivial(d: &Derivation) -> bool {
    is_simple(d).simple
}

/// How a witness automorphism was built inside its block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessKind {
    /// `y_j ↦ 2 y_j` for a variable whose `b_j` vanishes.
    Scaling { var: usize },
    /// `a = 0`: `y_j ↦ 2 y_j - ∫ b_j` on the first variable of the block.
    ZeroCoefficient { var: usize },
    /// `y_p ↦ (1 - e) y_p - e Σ_{j != p} k_j y_j + e Q(x)` from a solution
    /// `(k, Q)` of the parametric ODE with `k_p = 1`, `e = 2`.
    Cancellation { var: usize, solution: ParamSolution },
}

/// A non-identity element of the isotropy group together with its origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyWitness {
    /// Block whose variables the witness moves; it fixes every other variable.
    pub block: usize,
    pub kind: WitnessKind,
    /// The witness as an affine map `x ↦ x`, `y ↦ C y + g(x)` with `det C != 0`.
    pub affine: AffineEndo,
    pub endo: PolyEndo,
}

/// Block-local witness, as an affine endomorphism of `Q[x, y_{i,1..r_i}]`.
fn block_witness(a: &UniPoly, bs: &[UniPoly]) -> Option<(WitnessKind, AffineEndo)> {
    let r = bs.len();
    let e = int(WITNESS_PARAMETER);
    let mut matrix = QMatrix::identity(r);
    let mut offsets = vec![UniPoly::zero(); r];
    let kind = if let Some(j) = bs.iter().position(UniPoly::is_zero) {
        matrix[(j, j)] = e;
        WitnessKind::Scaling { var: j }
    } else if a.is_zero() {
        // y ↦ h + e (y - h) with h = ∫ b
        matrix[(0, 0)] = e.clone();
        offsets[0] = bs[0].integrate().scale(&(Rational::one() - e));
        WitnessKind::ZeroCoefficient { var: 0 }
    } else {
        let solution = is_simple_block(a, bs).witness?;
        let p = solution.k.iter().position(|k| !k.is_zero())?;
        for (j, kj) in solution.k.iter().enumerate() {
            matrix[(p, j)] = if j == p {
                Rational::one() - &e
            } else {
                -(&e * kj)
            };
        }
        offsets[p] = solution.z.scale(&e);
        WitnessKind::Cancellation { var: p, solution }
    };
    Some((kind, AffineEndo::new(Rational::zero(), matrix, offsets)))
}

/// A verified-by-construction non-identity automorphism commuting with `d`,
/// or `None` when `d` is simple.
///
/// The first non-simple block gets a block-local witness, which is then
/// extended by the identity on all other blocks.
pub fn isotropy_witness(d: &Derivation) -> Option<IsotropyWitness> {
    let verdict = is_simple(d);
    let block = verdict.first_non_simple()?;
    let blk = &d.blocks()[block];
    let (kind, local) = block_witness(blk.a(), blk.bs())?;
    let endo = embed_block_endo(d, block, &local.to_endo()).expect("local witness fixes x");

    let n = d.n();
    let mut matrix = QMatrix::identity(n);
    let mut offsets = vec![UniPoly::zero(); n];
    for (lt, &gt) in blk.vars().iter().enumerate() {
        for (lj, &gj) in blk.vars().iter().enumerate() {
            matrix[(gt, gj)] = local.matrix()[(lt, lj)].clone();
        }
        offsets[gt] = local.offsets()[lt].clone();
    }
    let affine = AffineEndo::new(Rational::zero(), matrix, offsets);
    debug_assert_eq!(affine.to_endo(), endo);
    Some(IsotropyWitness {
        block,
        kind,
        affine,
        endo,
    })
}

/// Extends an endomorphism of the block ring `Q[x, y_{i,1..r_i}]` that fixes
/// `x` to all of `Q[x, y_1..y_n]` by the identity on the other blocks.
pub fn embed_block_endo(d: &Derivation, block: usize, rho: &PolyEndo) -> Result<PolyEndo, Error> {
    let blk = d.block(block)?;
    if rho.n_y() != blk.len() {
        return Err(Error::ArityMismatch {
            expected: blk.len(),
            found: rho.n_y(),
        });
    }
    if !rho.fixes_x() {
        return Err(Error::MovesX);
    }
    let n = d.n();
    let rename: Vec<MultiPoly> = std::iter::once(MultiPoly::x(n))
        .chain(blk.vars().iter().map(|&v| MultiPoly::y(n, v)))
        .collect();
    let mut images: Vec<MultiPoly> = (0..n).map(|j| MultiPoly::y(n, j)).collect();
    for (g, &v) in rho.y_images().iter().zip(blk.vars()) {
        images[v] = g.substitute(&rename);
    }
    PolyEndo::new(MultiPoly::x(n), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deriv::commutes;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    fn deriv(pairs: &[(&[i64], &[i64])]) -> Derivation {
        Derivation::from_pairs(pairs.iter().map(|(a, b)| (p(a), p(b))).collect()).unwrap()
    }

    #[test]
    fn block_examples() {
        let v = is_simple_block(&p(&[0, 1]), &[p(&[1])]);
        assert!(v.simple && v.witness.is_none());
        let v = is_simple_block(&p(&[1]), &[p(&[0, 1])]);
        assert!(!v.simple);
        assert_eq!(v.witness.unwrap().z, p(&[-1, -1]));
        for b in [p(&[1]), p(&[0, 3, 1]), p(&[])] {
            assert!(!is_simple_block(&p(&[]), &[b]).simple);
        }
    }

    #[test]
    fn derivation_examples() {
        assert!(is_simple(&deriv(&[(&[0, 1], &[1])])).simple);
        let two = deriv(&[(&[0, 1], &[1]), (&[1], &[0, 1])]);
        let v = is_simple(&two);
        assert!(!v.simple);
        assert_eq!(v.first_non_simple(), Some(1));
        assert!(!is_simple(&deriv(&[(&[], &[1])])).simple);
    }

    #[test]
    fn isotropy_triviality_examples() {
        assert!(isotropy_is_trivial(&deriv(&[(&[0, 1], &[1])])));
        assert!(!isotropy_is_trivial(&deriv(&[(&[1], &[])])));
        assert!(!isotropy_is_trivial(&deriv(&[(&[1], &[0, 1])])));
    }

    #[test]
    fn witness_examples() {
        let d = deriv(&[(&[1], &[0, 1])]);
        let w = isotropy_witness(&d).unwrap();
        let expected = &(&-&MultiPoly::y(1, 0) - &MultiPoly::x(1).scale(&int(2)))
            - &MultiPoly::constant(1, int(2));
        assert_eq!(w.endo.y_images(), &[expected]);
        assert!(w.endo.fixes_x());
        assert!(commutes(&w.endo, &d).unwrap());

        let d = deriv(&[(&[1], &[])]);
        let w = isotropy_witness(&d).unwrap();
        assert_eq!(w.endo.y_images(), &[MultiPoly::y(1, 0).scale(&int(2))]);
        assert_eq!(w.kind, WitnessKind::Scaling { var: 0 });

        assert!(isotropy_witness(&deriv(&[(&[0, 1], &[1])])).is_none());
    }

    #[test]
    fn witness_zero_coefficient() {
        // ∂x + ∂1: y1 ↦ 2 y1 - x
        let d = deriv(&[(&[], &[1])]);
        let w = isotropy_witness(&d).unwrap();
        assert_eq!(
            w.endo.y_images(),
            &[&MultiPoly::y(1, 0).scale(&int(2)) - &MultiPoly::x(1)]
        );
        assert!(commutes(&w.endo, &d).unwrap());
        assert!(w.affine.is_automorphism());
    }

    #[test]
    fn witness_in_later_block_embeds() {
        let d = deriv(&[
            (&[0, 1], &[1]),
            (&[0, 0, 1], &[0, 1]),
            (&[0, 0, 1], &[0, -1]),
        ]);
        let w = isotropy_witness(&d).unwrap();
        assert_eq!(w.block, 1);
        assert!(!w.endo.is_identity());
        assert_eq!(w.endo.y_images()[0], MultiPoly::y(3, 0));
        assert!(commutes(&w.endo, &d).unwrap());
        assert!(w.affine.is_automorphism());
    }

    #[test]
    fn embed_examples() {
        let d = deriv(&[(&[1], &[]), (&[0, 1], &[1])]);
        let id = embed_block_endo(&d, 0, &PolyEndo::identity(1)).unwrap();
        assert!(id.is_identity());

        let scale =
            PolyEndo::new(MultiPoly::x(1), vec![MultiPoly::y(1, 0).scale(&int(2))]).unwrap();
        let full = embed_block_endo(&d, 0, &scale).unwrap();
        assert_eq!(
            full.y_images(),
            &[MultiPoly::y(2, 0).scale(&int(2)), MultiPoly::y(2, 1)]
        );
        assert!(commutes(&full, &d).unwrap());

        let moved = PolyEndo::new(
            &MultiPoly::x(1) + &MultiPoly::one(1),
            vec![MultiPoly::y(1, 0)],
        )
        .unwrap();
        assert_eq!(embed_block_endo(&d, 0, &moved), Err(Error::MovesX));
        assert!(matches!(
            embed_block_endo(&d, 5, &scale),
            Err(Error::BlockOutOfRange { .. })
        ));
    }
}
