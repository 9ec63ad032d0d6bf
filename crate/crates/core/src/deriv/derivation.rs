use num_traits::Zero;

use crate::algebra::{MultiPoly, UniPoly, Var};
use crate::error::Error;

/// A derivation of `Q[x, y1, ..., yn]` with `D(x) = 1`, described by the
/// images `D(y_j)`.
pub trait PolynomialDerivation {
    /// Number of y-variables.
    fn n_y(&self) -> usize;

    /// `D(y_j)` for `j = 0..n_y`.
    fn y_images(&self) -> Vec<MultiPoly>;

    /// `∂f/∂x + Σ_j D(y_j) ∂f/∂y_j`.
    fn apply(&self, f: &MultiPoly) -> Result<MultiPoly, Error> {
        check_arity(self.n_y(), f)?;
        Ok(apply_with(&self.y_images(), f))
    }

    /// `dim span{f, D f, ..., D^k f}` for `k = 0..=kmax`.
    ///
    /// The rank is tracked incrementally with a sparse echelon basis keyed by
    /// leading monomial.
    fn span_dims(&self, f: &MultiPoly, kmax: usize) -> Result<Vec<usize>, Error> {
        check_arity(self.n_y(), f)?;
        let images = self.y_images();
        let mut basis = EchelonBasis::default();
        let mut dims = Vec::with_capacity(kmax + 1);
        let mut current = f.clone();
        for k in 0..=kmax {
            basis.insert(current.clone());
            dims.push(basis.len());
            if k < kmax {
                current = apply_with(&images, &current);
            }
        }
        Ok(dims)
    }
}

pub(crate) fn check_arity(expected: usize, f: &MultiPoly) -> Result<(), Error> {
    if f.n_y() != expected {
        return Err(Error::ArityMismatch {
            expected,
            found: f.n_y(),
        });
    }
    Ok(())
}

fn apply_with(images: &[MultiPoly], f: &MultiPoly) -> MultiPoly {
    let mut out = f.partial(Var::X);
    for (j, image) in images.iter().enumerate() {
        let d = f.partial(Var::Y(j));
        if !d.is_zero() {
            out = &out + &(image * &d);
        }
    }
    out
}

/// Polynomials in echelon form: distinct leading monomials, each basis element
/// reduced against the earlier ones' leading terms.
#[derive(Default)]
struct EchelonBasis {
    // Sorted by leading monomial, descending.
    rows: Vec<MultiPoly>,
}

impl EchelonBasis {
    fn len(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, mut p: MultiPoly) {
        for row in &self.rows {
            let (lead, lc) = row.leading_term().expect("basis rows are nonzero");
            let c = p.coeff(lead);
            if c.is_zero() {
                continue;
            }
            let factor = c / lc;
            p = &p - &row.scale(&factor);
        }
        if p.is_zero() {
            return;
        }
        let lead = p.leading_term().expect("nonzero").0.clone();
        let pos = self
            .rows
            .iter()
            .position(|r| r.leading_term().expect("nonzero").0 < &lead)
            .unwrap_or(self.rows.len());
        self.rows.insert(pos, p);
    }
}

/// Variables `y_{i,1}, ..., y_{i,r_i}` sharing one coefficient `a_i(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    a: UniPoly,
    bs: Vec<UniPoly>,
    vars: Vec<usize>,
}

impl Block {
    pub fn a(&self) -> &UniPoly {
        &self.a
    }

    pub fn bs(&self) -> &[UniPoly] {
        &self.bs
    }

    /// Zero-based indices of the y-variables owned by this block.
    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }
}

/// Shamsuddin derivation `∂x + Σ_i Σ_j (a_i y_{i,j} + b_{i,j}) ∂_{i,j}` in
/// normal form: variables sharing the same `a` are grouped into one block and
/// the blocks' `a_i` are pairwise distinct.
///
/// Blocks are ordered by their smallest variable and list their variables in
/// increasing order, so the normal form is unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    n: usize,
    blocks: Vec<Block>,
}

impl Derivation {
    /// Normal form of `∂x + Σ_j (a_j y_j + b_j) ∂_j` given as `(a_j, b_j)`.
    /// Every `b_j` must be a polynomial in `x` alone.
    pub fn normalize(raw: &[(UniPoly, MultiPoly)]) -> Result<Self, Error> {
        let mut pairs = Vec::with_capacity(raw.len());
        for (j, (a, b)) in raw.iter().enumerate() {
            let b = b
                .as_unipoly()
                .ok_or(Error::NotUnivariate { variable: j + 1 })?;
            pairs.push((a.clone(), b));
        }
        Self::from_pairs(pairs)
    }

    /// Same as [`Derivation::normalize`] for univariate `b_j`.
    pub fn from_pairs(pairs: Vec<(UniPoly, UniPoly)>) -> Result<Self, Error> {
        if pairs.is_empty() {
            return Err(Error::EmptyDerivation);
        }
        let n = pairs.len();
        let mut blocks: Vec<Block> = Vec::new();
        for (j, (a, b)) in pairs.into_iter().enumerate() {
            match blocks.iter_mut().find(|blk| blk.a == a) {
                Some(blk) => {
                    blk.bs.push(b);
                    blk.vars.push(j);
                }
                None => blocks.push(Block {
                    a,
                    bs: vec![b],
                    vars: vec![j],
                }),
            }
        }
        Ok(Self { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> Result<&Block, Error> {
        self.blocks.get(i).ok_or(Error::BlockOutOfRange {
            index: i,
            count: self.blocks.len(),
        })
    }

    /// `(a_j, b_j)` for each variable in order.
    pub fn pairs(&self) -> Vec<(UniPoly, UniPoly)> {
        let mut out = vec![(UniPoly::zero(), UniPoly::zero()); self.n];
        for blk in &self.blocks {
            for (b, &v) in blk.bs.iter().zip(&blk.vars) {
                out[v] = (blk.a.clone(), b.clone());
            }
        }
        out
    }

    /// Index of the block owning y-variable `v` (zero-based).
    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.vars.contains(&v))
    }

    /// The derivation `∂x + Σ_j (a_i y_j + b_{i,j}) ∂_j` of
    /// `Q[x, y_{i,1}, ..., y_{i,r_i}]` for block `i`, with local variable order.
    pub fn block_derivation(&self, i: usize) -> Result<Derivation, Error> {
        let blk = self.block(i)?;
        Ok(Derivation {
            n: blk.len(),
            blocks: vec![Block {
                a: blk.a.clone(),
                bs: blk.bs.clone(),
                vars: (0..blk.len()).collect(),
            }],
        })
    }

    pub fn to_triangular(&self) -> TriangularDerivation {
        TriangularDerivation {
            n: self.n,
            entries: self
                .pairs()
                .into_iter()
                .map(|(a, b)| {
                    let b = MultiPoly::from_unipoly(self.n, &b);
                    (a, b)
                })
                .collect(),
        }
    }
}

impl PolynomialDerivation for Derivation {
    fn n_y(&self) -> usize {
        self.n
    }

    fn y_images(&self) -> Vec<MultiPoly> {
        self.pairs()
            .into_iter()
            .enumerate()
            .map(|(j, (a, b))| {
                shamsuddin_image(self.n, j, &a, &MultiPoly::from_unipoly(self.n, &b))
            })
            .collect()
    }
}

fn shamsuddin_image(n: usize, j: usize, a: &UniPoly, b: &MultiPoly) -> MultiPoly {
    &(&MultiPoly::from_unipoly(n, a) * &MultiPoly::y(n, j)) + b
}

/// `∂x + Σ_j (a_j(x) y_j + b_j(x, y_1, ..., y_{j-1})) ∂_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularDerivation {
    n: usize,
    entries: Vec<(UniPoly, MultiPoly)>,
}

impl TriangularDerivation {
    /// Checks that each `b_j` only involves `x, y_1, ..., y_{j-1}`.
    pub fn new(entries: Vec<(UniPoly, MultiPoly)>) -> Result<Self, Error> {
        let n = entries.len();
        for (j, (_, b)) in entries.iter().enumerate() {
            if b.n_y() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: b.n_y(),
                });
            }
            if let Some(top) = b.max_y_used() {
                if top >= j {
                    return Err(Error::NotTriangular {
                        variable: j + 1,
                        depends_on: top + 1,
                    });
                }
            }
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(UniPoly, MultiPoly)] {
        &self.entries
    }

    /// The Shamsuddin normal form, when every `b_j` is univariate.
    pub fn to_shamsuddin(&self) -> Result<Derivation, Error> {
        Derivation::normalize(&self.entries)
    }
}

impl PolynomialDerivation for TriangularDerivation {
    fn n_y(&self) -> usize {
        self.n
    }

    fn y_images(&self) -> Vec<MultiPoly> {
        self.entries
            .iter()
            .enumerate()
            .map(|(j, (a, b))| shamsuddin_image(self.n, j, a, b))
            .collect()
    }
}
