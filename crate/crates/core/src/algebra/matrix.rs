use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{denominator_lcm, Rational};

/// Dense `rows x cols` matrix of rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            entries.extend(r);
        }
        Self {
            rows: n,
            cols,
            entries,
        }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| Rational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        Echelon::new(self, None).pivots.len()
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let ech = Echelon::new(self, None);
        if ech.pivots.len() < n {
            return Rational::zero();
        }
        // After fraction-free elimination the last pivot is the determinant of
        // the row-scaled integer matrix.
        let mut det = Rational::from_integer(ech.at(n - 1, n - 1).clone());
        for s in &ech.row_scales {
            det /= Rational::from_integer(s.clone());
        }
        if ech.swaps % 2 == 1 {
            -det
        } else {
            det
        }
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            let space = mat_solve_affine(self, &e)?;
            if !space.basis.is_empty() {
                return None;
            }
            cols.push(space.particular);
        }
        let mut inv = QMatrix::zeros(n, n);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                inv[(i, j)] = v;
            }
        }
        Some(inv)
    }

    /// Basis of `{v : A v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let zeros = vec![Rational::zero(); self.rows];
        mat_solve_affine(self, &zeros)
            .expect("homogeneous systems are consistent")
            .basis
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Solution set `particular + span(basis)` of a linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSpace {
    pub particular: Vec<Rational>,
    pub basis: Vec<Vec<Rational>>,
}

impl AffineSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.particular.len()
    }

    /// `particular + Σ coeffs[i] * basis[i]`.
    pub fn point(&self, coeffs: &[Rational]) -> Vec<Rational> {
        assert_eq!(
            coeffs.len(),
            self.basis.len(),
            "one coefficient per basis vector"
        );
        let mut out = self.particular.clone();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(b) {
                *o += c * v;
            }
        }
        out
    }
}

/// Integer row-echelon form produced by fraction-free (Bareiss) elimination.
struct Echelon {
    cols: usize,
    data: Vec<BigInt>,
    pivots: Vec<usize>,
    row_scales: Vec<BigInt>,
    swaps: usize,
}

impl Echelon {
    /// Eliminates `a` (augmented with `rhs` when given). Each row is first
    /// scaled to integers by the lcm of its denominators.
    fn new(a: &QMatrix, rhs: Option<&[Rational]>) -> Self {
        let cols = a.cols + usize::from(rhs.is_some());
        let mut data = Vec::with_capacity(a.rows * cols);
        let mut row_scales = Vec::with_capacity(a.rows);
        for i in 0..a.rows {
            let mut row: Vec<&Rational> = a.row(i).iter().collect();
            if let Some(r) = rhs {
                row.push(&r[i]);
            }
            let scale = denominator_lcm(row.iter().copied());
            for v in row {
                let scaled = v * Rational::from_integer(scale.clone());
                data.push(scaled.to_integer());
            }
            row_scales.push(scale);
        }
        let mut ech = Echelon {
            cols,
            data,
            pivots: Vec::new(),
            row_scales,
            swaps: 0,
        };
        ech.eliminate(a.rows);
        ech
    }

    fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn eliminate(&mut self, rows: usize) {
        let cols = self.cols;
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.data[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
                self.row_scales.swap(p, r);
                self.swaps += 1;
            }
            let pivot = self.data[r * cols + c].clone();
            for i in r + 1..rows {
                let lead = self.data[i * cols + c].clone();
                for j in c + 1..cols {
                    let v = &pivot * &self.data[i * cols + j] - &lead * &self.data[r * cols + j];
                    // Exact: every entry is a minor of the original matrix.
                    self.data[i * cols + j] = v / &prev;
                }
                self.data[i * cols + c] = BigInt::zero();
            }
            prev = pivot;
            self.pivots.push(c);
            r += 1;
        }
    }

    /// Back-substitution for the coefficient columns `0..n`, with `rhs_col`
    /// supplying right-hand sides (or zeros when `None`) and `free` giving
    /// values for the non-pivot columns.
    fn back_substitute(
        &self,
        n: usize,
        rhs_col: Option<usize>,
        free: &[Rational],
    ) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        let mut free_iter = free.iter();
        for (j, slot) in v.iter_mut().enumerate() {
            if !self.pivots.contains(&j) {
                *slot = free_iter.next().expect("value per free column").clone();
            }
        }
        for (r, &pc) in self.pivots.iter().enumerate().rev() {
            let mut acc = match rhs_col {
                Some(rc) => Rational::from_integer(self.at(r, rc).clone()),
                None => Rational::zero(),
            };
            for (j, vj) in v.iter().enumerate().skip(pc + 1) {
                let coef = self.at(r, j);
                if !coef.is_zero() && !vj.is_zero() {
                    acc -= Rational::from_integer(coef.clone()) * vj;
                }
            }
            v[pc] = acc / Rational::from_integer(self.at(r, pc).clone());
        }
        v
    }
}

/// Full solution set of `a * v = rhs`, or `None` if the system is inconsistent.
///
/// The basis has one vector per non-pivot column (that column set to 1, the
/// other free columns to 0), so its size is `cols - rank(a)`.
pub fn mat_solve_affine(a: &QMatrix, rhs: &[Rational]) -> Option<AffineSpace> {
    assert_eq!(rhs.len(), a.rows, "right-hand side length");
    let n = a.cols;
    let ech = Echelon::new(a, Some(rhs));
    if ech.pivots.last() == Some(&n) {
        return None;
    }
    let free_cols: Vec<usize> = (0..n).filter(|j| !ech.pivots.contains(j)).collect();
    let zeros = vec![Rational::zero(); free_cols.len()];
    let particular = ech.back_substitute(n, Some(n), &zeros);
    let basis = (0..free_cols.len())
        .map(|k| {
            let mut free = zeros.clone();
            free[k] = Rational::one();
            ech.back_substitute(n, None, &free)
        })
        .collect();
    Some(AffineSpace { particular, basis })
}

/// `true` if every entry of `v` is zero.
pub(crate) fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}
