use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{mat_solve_affine, Monomial, MultiPoly, QMatrix, Rational};
use crate::deriv::PolynomialDerivation;
use crate::error::Error;

/// Exponent vectors `[i, α_1, ..., α_n]` with `i <= max_x` and `|α| <= max_y`.
fn box_monomials(n: usize, max_x: u32, max_y: u32) -> Vec<Monomial> {
    fn fill(out: &mut Vec<Monomial>, cur: &mut Monomial, slot: usize, left: u32) {
        if slot == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[slot] = e;
            fill(out, cur, slot + 1, left - e);
        }
        cur[slot] = 0;
    }
    let mut ys = Vec::new();
    fill(&mut ys, &mut vec![0; n], 0, max_y);
    let mut out = Vec::with_capacity(ys.len() * (max_x as usize + 1));
    for i in 0..=max_x {
        for a in &ys {
            let mut m = Vec::with_capacity(n + 1);
            m.push(i);
            m.extend_from_slice(a);
            out.push(m);
        }
    }
    out
}

/// Some `f` with `D(f) = g` whose monomials `x^i y^α` satisfy `i <= max_x_deg`
/// and `|α| <= max_y_total_deg`. `None` only says no such `f` lies in the box.
pub fn preimage_bounded<D: PolynomialDerivation + ?Sized>(
    d: &D,
    g: &MultiPoly,
    max_x_deg: u32,
    max_y_total_deg: u32,
) -> Result<Option<MultiPoly>, Error> {
    let n = d.n_y();
    if g.n_y() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: g.n_y(),
        });
    }
    let unknowns = box_monomials(n, max_x_deg, max_y_total_deg);
    let mut row_of: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut columns = Vec::with_capacity(unknowns.len());
    for m in &unknowns {
        let image = d.apply(&MultiPoly::term(
            n,
            m.clone(),
            Rational::from_integer(1.into()),
        ))?;
        for (mono, _) in image.terms() {
            let next = row_of.len();
            row_of.entry(mono.clone()).or_insert(next);
        }
        columns.push(image);
    }
    for (mono, _) in g.terms() {
        let next = row_of.len();
        row_of.entry(mono.clone()).or_insert(next);
    }
    let mut matrix = QMatrix::zeros(row_of.len().max(1), unknowns.len());
    for (j, image) in columns.iter().enumerate() {
        for (mono, c) in image.terms() {
            matrix[(row_of[mono], j)] = c.clone();
        }
    }
    let mut rhs = vec![Rational::zero(); matrix.rows()];
    for (mono, c) in g.terms() {
        rhs[row_of[mono]] = c.clone();
    }
    let Some(space) = mat_solve_affine(&matrix, &rhs) else {
        return Ok(None);
    };
    let f = MultiPoly::from_terms(n, unknowns.into_iter().zip(space.particular));
    debug_assert_eq!(d.apply(&f).as_ref(), Ok(g));
    Ok(Some(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, UniPoly};
    use crate::deriv::{Derivation, TriangularDerivation};

    #[test]
    fn box_size() {
        assert_eq!(box_monomials(2, 3, 2).len(), 4 * 6);
        assert_eq!(box_monomials(0, 8, 4).len(), 9);
    }

    #[test]
    fn preimage_examples() {
        let dx = TriangularDerivation::new(vec![]).unwrap();
        let f = preimage_bounded(&dx, &MultiPoly::one(0), 8, 4)
            .unwrap()
            .unwrap();
        assert_eq!(f, MultiPoly::x(0));

        let d = Derivation::from_pairs(vec![(UniPoly::one(), UniPoly::one())]).unwrap();
        let y1 = MultiPoly::y(1, 0);
        let f = preimage_bounded(&d, &y1, 8, 4).unwrap().unwrap();
        assert_eq!(d.apply(&f).unwrap(), y1);
        assert_eq!(f, &y1 - &MultiPoly::x(1));

        let d = Derivation::from_pairs(vec![(UniPoly::x(), UniPoly::one())]).unwrap();
        assert_eq!(preimage_bounded(&d, &y1, 8, 4).unwrap(), None);
        assert!(preimage_bounded(&d, &MultiPoly::constant(1, int(5)), 8, 4)
            .unwrap()
            .is_some());
    }

    #[test]
    fn arity_is_checked() {
        let d = Derivation::from_pairs(vec![(UniPoly::x(), UniPoly::one())]).unwrap();
        assert!(preimage_bounded(&d, &MultiPoly::y(2, 1), 2, 2).is_err());
    }
}
