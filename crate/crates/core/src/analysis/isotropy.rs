//! Isotropy group of a single block `D = ∂x + Σ_{j=1}^r (a(x) y_j + b_j(x)) ∂_j`.
//!
//! Three regimes:
//! - `a = 0`: every element has the form `x ↦ x + p(ȳ)`,
//!   `y_t ↦ h_t(x + p(ȳ)) + q_t(ȳ)` with `h_t = ∫ b_t`, `ȳ_j = y_j - h_j(x)`
//!   and `(x + p, q)` an automorphism;
//! - `a ∈ Q*`: `x ↦ x + c` for any `c`, `y_t ↦ Σ_j c_tj y_j + g_t(x)` where
//!   `g_t' = a g_t + b_t(x + c) - Σ_j c_tj b_j` has exactly one polynomial
//!   solution;
//! - `deg a >= 1`: as above but `c = 0` is forced, and each row
//!   `(c_t1, ..., c_tr, g_t)` ranges over an affine solution space.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    int, mat_solve_affine, AffineSpace, Monomial, MultiPoly, QMatrix, Rational, UniPoly,
};
use crate::deriv::{commutes, AffineEndo, Derivation, PolyEndo};
use crate::error::Error;
use crate::ode::{degree_bound, solve_linear_ode};

const SAMPLE_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsotropyCase {
    ZeroCoefficient,
    ConstantCoefficient,
    NonConstantCoefficient,
}

/// What the image of `x` may be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftConstraint {
    /// `x ↦ x` for every element.
    Fixed,
    /// `x ↦ x + c` with `c` a free rational.
    FreeShift,
    /// `x ↦ x + p(ȳ)` with `p` a free polynomial in the shifted variables.
    FreePolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsotropyDescription {
    ZeroCoefficient {
        bs: Vec<UniPoly>,
        /// `h_t = ∫ b_t` with zero constant term.
        antiderivatives: Vec<UniPoly>,
    },
    ConstantCoefficient {
        a: Rational,
        bs: Vec<UniPoly>,
    },
    NonConstantCoefficient {
        a: UniPoly,
        bs: Vec<UniPoly>,
        /// Number of coefficients of each `g_t` (degree bound + 1).
        offset_len: usize,
        /// Per row `t`, the solutions `(c_t1, ..., c_tr, g_t coefficients)`.
        rows: Vec<AffineSpace>,
    },
}

/// Describes the isotropy group of `∂x + Σ_j (a y_j + b_j) ∂_j`.
pub fn isotropy_describe_block(a: &UniPoly, bs: &[UniPoly]) -> IsotropyDescription {
    match a.degree() {
        None => IsotropyDescription::ZeroCoefficient {
            bs: bs.to_vec(),
            antiderivatives: bs.iter().map(UniPoly::integrate).collect(),
        },
        Some(0) => IsotropyDescription::ConstantCoefficient {
            a: a.coeff(0),
            bs: bs.to_vec(),
        },
        Some(_) => {
            let offset_len = degree_bound(a, bs).map_or(0, |b| b + 1);
            let rows = (0..bs.len())
                .map(|t| row_space(a, bs, t, offset_len))
                .collect();
            IsotropyDescription::NonConstantCoefficient {
                a: a.clone(),
                bs: bs.to_vec(),
                offset_len,
                rows,
            }
        }
    }
}

/// Solutions of `g' - a g + Σ_j c_j b_j = b_t` over `(c_1..c_r, g_0..g_{len-1})`.
fn row_space(a: &UniPoly, bs: &[UniPoly], t: usize, offset_len: usize) -> AffineSpace {
    let r = bs.len();
    let top = [
        offset_len + a.degree().unwrap_or(0) as usize,
        bs.iter()
            .filter_map(UniPoly::degree)
            .max()
            .map_or(0, |d| d as usize + 1),
        1,
    ]
    .into_iter()
    .max()
    .unwrap_or(1);
    let mut matrix = QMatrix::zeros(top, r + offset_len);
    for (j, b) in bs.iter().enumerate() {
        for (k, c) in b.terms() {
            matrix[(k as usize, j)] += c;
        }
    }
    for i in 0..offset_len {
        if i > 0 {
            matrix[(i - 1, r + i)] += int(i as i64);
        }
        for (k, c) in a.terms() {
            matrix[(k as usize + i, r + i)] -= c;
        }
    }
    let rhs = bs[t].to_dense(top);
    mat_solve_affine(&matrix, &rhs).expect("the identity row always solves the system")
}

impl IsotropyDescription {
    pub fn case(&self) -> IsotropyCase {
        match self {
            Self::ZeroCoefficient { .. } => IsotropyCase::ZeroCoefficient,
            Self::ConstantCoefficient { .. } => IsotropyCase::ConstantCoefficient,
            Self::NonConstantCoefficient { .. } => IsotropyCase::NonConstantCoefficient,
        }
    }

    pub fn shift_constraint(&self) -> ShiftConstraint {
        match self {
            Self::ZeroCoefficient { .. } => ShiftConstraint::FreePolynomial,
            Self::ConstantCoefficient { .. } => ShiftConstraint::FreeShift,
            Self::NonConstantCoefficient { .. } => ShiftConstraint::Fixed,
        }
    }

    pub fn bs(&self) -> &[UniPoly] {
        match self {
            Self::ZeroCoefficient { bs, .. }
            | Self::ConstantCoefficient { bs, .. }
            | Self::NonConstantCoefficient { bs, .. } => bs,
        }
    }

    pub fn a(&self) -> UniPoly {
        match self {
            Self::ZeroCoefficient { .. } => UniPoly::zero(),
            Self::ConstantCoefficient { a, .. } => UniPoly::constant(a.clone()),
            Self::NonConstantCoefficient { a, .. } => a.clone(),
        }
    }

    pub fn r(&self) -> usize {
        self.bs().len()
    }

    /// The block derivation this description belongs to.
    pub fn derivation(&self) -> Derivation {
        let a = self.a();
        Derivation::from_pairs(self.bs().iter().map(|b| (a.clone(), b.clone())).collect())
            .expect("blocks are nonempty")
    }

    /// True when the only member is the identity.
    pub fn is_trivial(&self) -> bool {
        match self {
            Self::NonConstantCoefficient { rows, .. } => rows.iter().all(|s| s.basis.is_empty()),
            _ => false,
        }
    }

    /// Member `x ↦ x + c`, `y ↦ C y + g(x)` of a constant-coefficient
    /// description; `g` is the unique polynomial solution of its row ODE.
    pub fn constant_member(&self, c: &Rational, matrix: &QMatrix) -> Option<AffineEndo> {
        let Self::ConstantCoefficient { a, bs } = self else {
            return None;
        };
        let r = bs.len();
        if matrix.rows() != r || matrix.cols() != r {
            return None;
        }
        let a = UniPoly::constant(a.clone());
        let offsets = (0..r)
            .map(|t| {
                let mut rhs = bs[t].shift(c);
                for (j, b) in bs.iter().enumerate() {
                    rhs = &rhs - &b.scale(&matrix[(t, j)]);
                }
                solve_linear_ode(&a, &rhs)
                    .particular
                    .expect("nonzero constant a always admits a polynomial solution")
            })
            .collect();
        Some(AffineEndo::new(c.clone(), matrix.clone(), offsets))
    }

    /// Member of a non-constant-coefficient description picked by one
    /// coefficient vector per row (coordinates in that row's basis).
    pub fn row_member(&self, coords: &[Vec<Rational>]) -> Option<AffineEndo> {
        let Self::NonConstantCoefficient {
            rows, offset_len, ..
        } = self
        else {
            return None;
        };
        let r = rows.len();
        if coords.len() != r {
            return None;
        }
        let mut matrix = QMatrix::zeros(r, r);
        let mut offsets = Vec::with_capacity(r);
        for (t, (space, cs)) in rows.iter().zip(coords).enumerate() {
            if cs.len() != space.basis.len() {
                return None;
            }
            let v = space.point(cs);
            for j in 0..r {
                matrix[(t, j)] = v[j].clone();
            }
            offsets.push(UniPoly::from_coeffs(v[r..r + offset_len].iter().cloned()));
        }
        Some(AffineEndo::new(Rational::zero(), matrix, offsets))
    }

    /// Member `x ↦ x + p(ȳ)`, `y_t ↦ h_t(x + p(ȳ)) + q_t(ȳ)` of a
    /// zero-coefficient description. `p` and `q_t` are polynomials in the
    /// y-variables only (standing for `ȳ`); the result is an automorphism
    /// whenever `ȳ ↦ q(ȳ)` is one.
    pub fn family_member(&self, p: &MultiPoly, qs: &[MultiPoly]) -> Result<PolyEndo, Error> {
        let Self::ZeroCoefficient {
            antiderivatives, ..
        } = self
        else {
            return Err(Error::NotZeroCoefficient);
        };
        let r = antiderivatives.len();
        if qs.len() != r {
            return Err(Error::ArityMismatch {
                expected: r,
                found: qs.len(),
            });
        }
        for poly in std::iter::once(p).chain(qs) {
            if poly.n_y() != r {
                return Err(Error::ArityMismatch {
                    expected: r,
                    found: poly.n_y(),
                });
            }
        }
        // ȳ_j = y_j - h_j(x)
        let bar: Vec<MultiPoly> = std::iter::once(MultiPoly::x(r))
            .chain(
                antiderivatives
                    .iter()
                    .enumerate()
                    .map(|(j, h)| &MultiPoly::y(r, j) - &MultiPoly::from_unipoly(r, h)),
            )
            .collect();
        let f = &MultiPoly::x(r) + &p.substitute(&bar);
        let gs = antiderivatives
            .iter()
            .zip(qs)
            .map(|(h, q)| &h.compose_multi(&f) + &q.substitute(&bar))
            .collect();
        PolyEndo::new(f, gs)
    }
}

/// A materialized isotropy group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsotropyElement {
    Affine(AffineEndo),
    Polynomial(PolyEndo),
}

impl IsotropyElement {
    pub fn to_endo(&self) -> PolyEndo {
        match self {
            Self::Affine(a) => a.to_endo(),
            Self::Polynomial(p) => p.clone(),
        }
    }
}

fn small(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    int(rng.gen_range(-bound..=bound))
}

fn random_matrix(rng: &mut ChaCha8Rng, r: usize, bound: i64) -> QMatrix {
    let mut m = QMatrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            m[(i, j)] = small(rng, bound);
        }
    }
    m
}

/// Random polynomial in `y_1..y_r` (no `x`) of total degree at most 2.
fn random_ybar_poly(rng: &mut ChaCha8Rng, r: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(r);
    for _ in 0..rng.gen_range(0..=3) {
        let mut m: Monomial = vec![0; r + 1];
        for _ in 0..rng.gen_range(0..=2) {
            m[1 + rng.gen_range(0..r)] += 1;
        }
        p = &p + &MultiPoly::term(r, m, small(rng, 2));
    }
    p
}

/// Draws one member of the described group from a seeded generator.
///
/// Candidates with a singular linear part are rejected; `None` is returned if
/// every attempt was singular.
pub fn sample_isotropy_element(desc: &IsotropyDescription, seed: u64) -> Option<IsotropyElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = desc.r();
    let element = (0..SAMPLE_ATTEMPTS).find_map(|_| match desc {
        IsotropyDescription::ZeroCoefficient { .. } => {
            let m = random_matrix(&mut rng, r, 2);
            if m.determinant().is_zero() {
                return None;
            }
            let p = random_ybar_poly(&mut rng, r);
            let qs = (0..r)
                .map(|t| {
                    let mut q = MultiPoly::constant(r, small(&mut rng, 2));
                    for j in 0..r {
                        q = &q + &MultiPoly::y(r, j).scale(&m[(t, j)]);
                    }
                    q
                })
                .collect::<Vec<_>>();
            desc.family_member(&p, &qs)
                .ok()
                .map(IsotropyElement::Polynomial)
        }
        IsotropyDescription::ConstantCoefficient { .. } => {
            let c = small(&mut rng, 3);
            let m = random_matrix(&mut rng, r, 3);
            if m.determinant().is_zero() {
                return None;
            }
            desc.constant_member(&c, &m).map(IsotropyElement::Affine)
        }
        IsotropyDescription::NonConstantCoefficient { rows, .. } => {
            let coords: Vec<Vec<Rational>> = rows
                .iter()
                .map(|s| s.basis.iter().map(|_| small(&mut rng, 2)).collect())
                .collect();
            let member = desc.row_member(&coords)?;
            member
                .is_automorphism()
                .then_some(IsotropyElement::Affine(member))
        }
    })?;
    debug_assert!(commutes(&element.to_endo(), &desc.derivation()).unwrap_or(false));
    Some(element)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn constant_coefficient_with_zero_b() {
        let desc = isotropy_describe_block(&p(&[1]), &[p(&[])]);
        assert_eq!(desc.case(), IsotropyCase::ConstantCoefficient);
        assert_eq!(desc.shift_constraint(), ShiftConstraint::FreeShift);
        let member = desc
            .constant_member(&int(1), &QMatrix::from_int_rows(&[vec![3]]))
            .unwrap();
        let endo = member.to_endo();
        assert_eq!(endo.x_image(), &(&MultiPoly::x(1) + &MultiPoly::one(1)));
        assert_eq!(endo.y_images(), &[MultiPoly::y(1, 0).scale(&int(3))]);
        assert!(commutes(&endo, &desc.derivation()).unwrap());
    }

    #[test]
    fn simple_block_has_identity_only() {
        let desc = isotropy_describe_block(&p(&[0, 1]), &[p(&[1])]);
        assert_eq!(desc.case(), IsotropyCase::NonConstantCoefficient);
        assert_eq!(desc.shift_constraint(), ShiftConstraint::Fixed);
        assert!(desc.is_trivial());
        let IsotropyDescription::NonConstantCoefficient { rows, .. } = &desc else {
            unreachable!()
        };
        assert_eq!(rows[0].particular, vec![int(1)]);
        let s = sample_isotropy_element(&desc, 0).unwrap();
        assert!(s.to_endo().is_identity());
    }

    #[test]
    fn zero_coefficient_family() {
        let desc = isotropy_describe_block(&p(&[]), &[p(&[1])]);
        let IsotropyDescription::ZeroCoefficient {
            antiderivatives, ..
        } = &desc
        else {
            panic!("expected the zero-coefficient case")
        };
        assert_eq!(antiderivatives, &vec![UniPoly::x()]);
        let member = desc
            .family_member(&MultiPoly::zero(1), &[MultiPoly::y(1, 0).scale(&int(2))])
            .unwrap();
        assert!(member.fixes_x());
        assert_eq!(
            member.y_images(),
            &[&MultiPoly::y(1, 0).scale(&int(2)) - &MultiPoly::x(1)]
        );
        assert!(commutes(&member, &desc.derivation()).unwrap());
    }

    #[test]
    fn zero_coefficient_family_with_nonlinear_p() {
        let desc = isotropy_describe_block(&p(&[]), &[p(&[1, 2]), p(&[0, 0, 3])]);
        let r = 2;
        let pp = &MultiPoly::y(r, 0).pow(2) + &MultiPoly::y(r, 1);
        let qs = vec![MultiPoly::y(r, 1), &MultiPoly::y(r, 0) + &MultiPoly::one(r)];
        let member = desc.family_member(&pp, &qs).unwrap();
        assert!(commutes(&member, &desc.derivation()).unwrap());
        assert!(!member.fixes_x());
    }

    #[test]
    fn nonconstant_rows_admit_cancellation() {
        let desc = isotropy_describe_block(&p(&[0, 0, 1]), &[p(&[0, 1]), p(&[0, -1])]);
        assert!(!desc.is_trivial());
        for seed in 0..8 {
            let s = sample_isotropy_element(&desc, seed).unwrap();
            assert!(commutes(&s.to_endo(), &desc.derivation()).unwrap());
        }
    }

    #[test]
    fn samples_commute_in_every_case() {
        let cases = [
            (p(&[]), vec![p(&[1]), p(&[0, 1])]),
            (p(&[2]), vec![p(&[1, 1]), p(&[])]),
            (p(&[-1]), vec![p(&[0, 0, 1])]),
            (p(&[1, 1]), vec![p(&[1]), p(&[1, 1])]),
        ];
        for (a, bs) in cases {
            let desc = isotropy_describe_block(&a, &bs);
            for seed in 0..5 {
                let s = sample_isotropy_element(&desc, seed).expect("sample");
                assert!(
                    commutes(&s.to_endo(), &desc.derivation()).unwrap(),
                    "{a} {bs:?} seed {seed}"
                );
            }
        }
    }
}
