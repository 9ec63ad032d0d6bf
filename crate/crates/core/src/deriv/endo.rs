use num_traits::Zero;

use super::derivation::{check_arity, PolynomialDerivation};
use crate::algebra::{MultiPoly, QMatrix, Rational, UniPoly};
use crate::error::Error;

/// Ring endomorphism of `Q[x, y1, ..., yn]` given by the images of the
/// generators: `x ↦ f`, `y_t ↦ g_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyEndo {
    x_image: MultiPoly,
    y_images: Vec<MultiPoly>,
}

impl PolyEndo {
    pub fn identity(n: usize) -> Self {
        Self {
            x_image: MultiPoly::x(n),
            y_images: (0..n).map(|j| MultiPoly::y(n, j)).collect(),
        }
    }

    /// Every image must live in the ring with `y_images.len()` y-variables.
    pub fn new(x_image: MultiPoly, y_images: Vec<MultiPoly>) -> Result<Self, Error> {
        let n = y_images.len();
        for p in std::iter::once(&x_image).chain(&y_images) {
            check_arity(n, p)?;
        }
        Ok(Self { x_image, y_images })
    }

    pub fn n_y(&self) -> usize {
        self.y_images.len()
    }

    pub fn x_image(&self) -> &MultiPoly {
        &self.x_image
    }

    pub fn y_images(&self) -> &[MultiPoly] {
        &self.y_images
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n_y())
    }

    pub fn fixes_x(&self) -> bool {
        self.x_image == MultiPoly::x(self.n_y())
    }

    fn images(&self) -> Vec<MultiPoly> {
        std::iter::once(self.x_image.clone())
            .chain(self.y_images.iter().cloned())
            .collect()
    }

    /// `f(ρ(x), ρ(y1), ..., ρ(yn))`.
    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly, Error> {
        check_arity(self.n_y(), f)?;
        Ok(f.substitute(&self.images()))
    }

    /// `self ∘ other`, i.e. `v ↦ self(other(v))`.
    pub fn compose(&self, other: &PolyEndo) -> Result<PolyEndo, Error> {
        if self.n_y() != other.n_y() {
            return Err(Error::ArityMismatch {
                expected: self.n_y(),
                found: other.n_y(),
            });
        }
        let images = self.images();
        Ok(PolyEndo {
            x_image: other.x_image.substitute(&images),
            y_images: other
                .y_images
                .iter()
                .map(|g| g.substitute(&images))
                .collect(),
        })
    }
}

/// Whether `ρ D = D ρ`, checked on the generators: `D(ρ(v)) = ρ(D(v))` for
/// `v ∈ {x, y1, ..., yn}`.
pub fn commutes<D: PolynomialDerivation + ?Sized>(rho: &PolyEndo, d: &D) -> Result<bool, Error> {
    let n = d.n_y();
    if rho.n_y() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: rho.n_y(),
        });
    }
    // D(x) = 1 and ρ(1) = 1.
    if d.apply(rho.x_image())? != MultiPoly::one(n) {
        return Ok(false);
    }
    for (g, dy) in rho.y_images().iter().zip(d.y_images()) {
        if d.apply(g)? != rho.apply(&dy)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The affine-in-y endomorphism `x ↦ x + c`, `y_t ↦ Σ_j C[t][j] y_j + g_t(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineEndo {
    shift: Rational,
    matrix: QMatrix,
    offsets: Vec<UniPoly>,
}

impl AffineEndo {
    /// Panics unless `matrix` is square with one row per offset.
    pub fn new(shift: Rational, matrix: QMatrix, offsets: Vec<UniPoly>) -> Self {
        assert_eq!(matrix.rows(), matrix.cols(), "square coefficient matrix");
        assert_eq!(matrix.rows(), offsets.len(), "one offset per row");
        Self {
            shift,
            matrix,
            offsets,
        }
    }

    pub fn identity(r: usize) -> Self {
        Self::new(
            Rational::zero(),
            QMatrix::identity(r),
            vec![UniPoly::zero(); r],
        )
    }

    pub fn n_y(&self) -> usize {
        self.offsets.len()
    }

    pub fn shift(&self) -> &Rational {
        &self.shift
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn offsets(&self) -> &[UniPoly] {
        &self.offsets
    }

    /// Invertible exactly when `det C != 0`; the inverse is again affine.
    pub fn is_automorphism(&self) -> bool {
        !self.matrix.determinant().is_zero()
    }

    pub fn to_endo(&self) -> PolyEndo {
        let r = self.n_y();
        let x_image = &MultiPoly::x(r) + &MultiPoly::constant(r, self.shift.clone());
        let y_images = (0..r)
            .map(|t| {
                let mut g = MultiPoly::from_unipoly(r, &self.offsets[t]);
                for j in 0..r {
                    let c = &self.matrix[(t, j)];
                    if !c.is_zero() {
                        g = &g + &MultiPoly::y(r, j).scale(c);
                    }
                }
                g
            })
            .collect();
        PolyEndo { x_image, y_images }
    }

    /// `x ↦ x - c`, `y ↦ C⁻¹ (y - g(x - c))`, or `None` when `C` is singular.
    pub fn inverse(&self) -> Option<AffineEndo> {
        let inv = self.matrix.inverse()?;
        let r = self.n_y();
        let back = -&self.shift;
        let shifted: Vec<UniPoly> = self.offsets.iter().map(|g| g.shift(&back)).collect();
        let offsets = (0..r)
            .map(|t| {
                let mut acc = UniPoly::zero();
                for (j, g) in shifted.iter().enumerate() {
                    acc = &acc - &g.scale(&inv[(t, j)]);
                }
                acc
            })
            .collect();
        Some(AffineEndo::new(back, inv, offsets))
    }

    pub fn is_identity(&self) -> bool {
        self.shift.is_zero()
            && self.matrix.is_identity()
            && self.offsets.iter().all(UniPoly::is_zero)
    }
}

impl Default for AffineEndo {
    fn default() -> Self {
        Self::identity(0)
    }
}
