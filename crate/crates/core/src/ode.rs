//! Polynomial solutions of the linear first-order ODEs `z' = a(x) z + c(x)`
//! and of the parametric family `z' = a(x) z + Σ_j k_j b_j(x)`.

use num_traits::{One, Zero};

use crate::algebra::{mat_solve_affine, QMatrix, Rational, UniPoly};

/// Upper bound on `deg z` for any polynomial solution of `z' = a z + c` with
/// `c` in the span of `cs`; `None` means only `z = 0` can solve it.
///
/// Comparing leading terms: for `deg a >= 1` a nonzero `z` gives
/// `deg(z' - a z) = deg z + deg a`; for constant nonzero `a` the degree is
/// preserved; for `a = 0` integration raises it by one and constants are free.
pub fn degree_bound(a: &UniPoly, cs: &[UniPoly]) -> Option<usize> {
    let max_c = cs
        .iter()
        .filter_map(UniPoly::degree)
        .max()
        .map(|d| d as usize);
    match a.degree() {
        None => Some(max_c.map_or(0, |m| m + 1)),
        Some(0) => max_c,
        Some(da) => max_c.and_then(|m| m.checked_sub(da as usize)),
    }
}

/// Rows of the linear map `z ↦ z' - a z` on the coefficients of `z` up to
/// degree `bound`, one row per power of `x` up to `rows - 1`.
fn ode_operator_rows(a: &UniPoly, bound: Option<usize>, rows: usize) -> Vec<Vec<Rational>> {
    let unknowns = bound.map_or(0, |b| b + 1);
    let mut out = vec![vec![Rational::zero(); unknowns]; rows];
    for i in 0..unknowns {
        // z = x^i contributes i x^(i-1) - a(x) x^i
        if i > 0 {
            out[i - 1][i] += Rational::from_integer((i as i64).into());
        }
        for (k, c) in a.terms() {
            out[k as usize + i][i] -= c;
        }
    }
    out
}

fn equation_rows(a: &UniPoly, bound: Option<usize>, rhs: &[UniPoly]) -> usize {
    let z_top = bound.map_or(0, |b| b + a.degree().map_or(0, |d| d as usize) + 1);
    let c_top = rhs
        .iter()
        .filter_map(UniPoly::degree)
        .max()
        .map_or(0, |d| d as usize + 1);
    z_top.max(c_top).max(1)
}

/// Polynomial solutions of `z' = a z + c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OdeSolutions {
    /// A polynomial solution, if one exists.
    pub particular: Option<UniPoly>,
    /// Dimension of the polynomial solutions of `z' = a z`: 1 when `a = 0`
    /// (the constants), otherwise 0.
    pub homogeneous_dim: usize,
}

impl OdeSolutions {
    /// The unique solution when `a != 0`.
    pub fn unique(&self) -> Option<&UniPoly> {
        if self.homogeneous_dim == 0 {
            self.particular.as_ref()
        } else {
            None
        }
    }
}

/// All polynomial solutions of `z' = a z + c`.
pub fn solve_linear_ode(a: &UniPoly, c: &UniPoly) -> OdeSolutions {
    if a.is_zero() {
        return OdeSolutions {
            particular: Some(c.integrate()),
            homogeneous_dim: 1,
        };
    }
    let bound = degree_bound(a, std::slice::from_ref(c));
    let rows = equation_rows(a, bound, std::slice::from_ref(c));
    let matrix = QMatrix::from_rows(ode_operator_rows(a, bound, rows));
    let rhs = c.to_dense(rows);
    let particular = mat_solve_affine(&matrix, &rhs).map(|space| {
        debug_assert!(
            space.basis.is_empty(),
            "z' = a z has no nonzero polynomial solution"
        );
        UniPoly::from_coeffs(space.particular)
    });
    OdeSolutions {
        particular,
        homogeneous_dim: 0,
    }
}

/// One solution `(k, z)` of `z' = a z + Σ_j k_j b_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSolution {
    pub k: Vec<Rational>,
    pub z: UniPoly,
}

impl ParamSolution {
    /// `z' - a z - Σ k_j b_j`, which vanishes for genuine solutions.
    pub fn residual(&self, a: &UniPoly, bs: &[UniPoly]) -> UniPoly {
        let mut r = &self.z.derivative() - &(a * &self.z);
        for (kj, bj) in self.k.iter().zip(bs) {
            r = &r - &bj.scale(kj);
        }
        r
    }
}

/// The linear space of pairs `(k, z)` with `z' = a z + Σ_j k_j b_j`, where
/// `deg z` is capped by [`degree_bound`] (which loses no solutions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSolutionSpace {
    a: UniPoly,
    bs: Vec<UniPoly>,
    bound: Option<usize>,
    basis: Vec<ParamSolution>,
}

impl ParamSolutionSpace {
    pub fn a(&self) -> &UniPoly {
        &self.a
    }

    pub fn bs(&self) -> &[UniPoly] {
        &self.bs
    }

    pub fn degree_bound(&self) -> Option<usize> {
        self.bound
    }

    /// Number of coordinates: `r` entries of `k` plus the coefficients of `z`.
    pub fn ambient_dim(&self) -> usize {
        self.bs.len() + self.bound.map_or(0, |b| b + 1)
    }

    pub fn basis(&self) -> &[ParamSolution] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Solves for `(k_1, ..., k_r)` and the coefficients of `z` jointly in one
/// homogeneous system.
///
/// Unknowns are ordered `z_0, ..., z_bound, k_1, ..., k_r`, so each basis
/// vector produced by elimination is attached to a free `k_j` or a free
/// coefficient of `z`.
pub fn solve_parametric(a: &UniPoly, bs: &[UniPoly]) -> ParamSolutionSpace {
    let bound = degree_bound(a, bs);
    let z_len = bound.map_or(0, |b| b + 1);
    let rows = equation_rows(a, bound, bs);
    let mut system = ode_operator_rows(a, bound, rows);
    for (m, row) in system.iter_mut().enumerate() {
        for b in bs {
            row.push(-b.coeff(m as u32));
        }
    }
    let matrix = QMatrix::from_rows(system);
    let zeros = vec![Rational::zero(); rows];
    let space = mat_solve_affine(&matrix, &zeros).expect("homogeneous systems are consistent");
    let basis = space
        .basis
        .into_iter()
        .map(|v| ParamSolution {
            z: UniPoly::from_coeffs(v[..z_len].iter().cloned()),
            k: v[z_len..].to_vec(),
        })
        .collect();
    ParamSolutionSpace {
        a: a.clone(),
        bs: bs.to_vec(),
        bound,
        basis,
    }
}

/// A solution with `k != 0`, scaled so its first nonzero `k_j` equals 1.
pub fn has_nonzero_k_solution(space: &ParamSolutionSpace) -> Option<ParamSolution> {
    let sol = space
        .basis
        .iter()
        .find(|s| s.k.iter().any(|k| !k.is_zero()))?;
    let lead = sol.k.iter().find(|k| !k.is_zero())?.clone();
    if lead.is_one() {
        return Some(sol.clone());
    }
    let inv = lead.recip();
    Some(ParamSolution {
        k: sol.k.iter().map(|k| k * &inv).collect(),
        z: sol.z.scale(&inv),
    })
}
