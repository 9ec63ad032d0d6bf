use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::multipoly::MultiPoly;
use super::rational::{int, Rational};

/// Univariate polynomial in `x` with rational coefficients, stored sparsely by
/// degree. Zero coefficients are never stored, so the zero polynomial is the
/// empty map and has no degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: BTreeMap<u32, Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, degree: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(degree, c);
        }
        Self { coeffs }
    }

    /// Builds a polynomial from integer coefficients listed from the constant
    /// term upwards: `from_ints(&[1, 0, 3])` is `3x^2 + 1`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)))
    }

    /// Builds a polynomial from coefficients listed from the constant term upwards.
    pub fn from_coeffs<I: IntoIterator<Item = Rational>>(coeffs: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in coeffs.into_iter().enumerate() {
            p.add_term(k as u32, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, degree: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(degree).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&degree);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// True for elements of `Q` (including zero).
    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    pub fn coeff(&self, degree: u32) -> Rational {
        self.coeffs
            .get(&degree)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs
            .values()
            .next_back()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in increasing degree order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    /// Dense coefficient vector of length `len`, constant term first.
    /// Terms of degree `>= len` are dropped.
    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        (0..len).map(|k| self.coeff(k as u32)).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .filter(|(&k, _)| k > 0)
                .map(|(&k, c)| (k - 1, c * int(k as i64))),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn integrate(&self) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .map(|(&k, c)| (k + 1, c / int(k as i64 + 1))),
        )
    }

    /// `self(x + c)`, expanded with binomial coefficients.
    pub fn shift(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Self::zero();
        for (&k, coef) in &self.coeffs {
            // (x + c)^k = Σ_i binom(k, i) c^(k-i) x^i
            let mut binom = BigInt::one();
            for i in 0..=k {
                let power = num_traits::pow::pow(c.clone(), (k - i) as usize);
                out.add_term(i, coef * Rational::from_integer(binom.clone()) * power);
                binom = binom * BigInt::from(k - i) / BigInt::from(i + 1);
            }
        }
        out
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut prev = self.degree().unwrap_or(0);
        for (&k, c) in self.coeffs.iter().rev() {
            acc *= num_traits::pow::pow(at.clone(), (prev - k) as usize);
            acc += c;
            prev = k;
        }
        acc * num_traits::pow::pow(at.clone(), prev as usize)
    }

    /// Substitutes a multivariate polynomial for `x` (Horner scheme).
    pub fn compose_multi(&self, arg: &MultiPoly) -> MultiPoly {
        let n = arg.n_y();
        let Some(top) = self.degree() else {
            return MultiPoly::zero(n);
        };
        let mut acc = MultiPoly::zero(n);
        for k in (0..=top).rev() {
            acc = &acc * arg;
            acc = &acc + &MultiPoly::constant(n, self.coeff(k));
        }
        acc
    }
}

impl From<Rational> for UniPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&MultiPoly::from_unipoly(0, self), f)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.coeffs {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.coeffs {
            out.add_term(k, -c);
        }
        out
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for (&i, a) in &self.coeffs {
            for (&j, b) in &rhs.coeffs {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn shift_examples() {
        let x2 = UniPoly::from_ints(&[0, 0, 1]);
        assert_eq!(x2.shift(&int(0)), x2);
        assert_eq!(UniPoly::x().shift(&int(1)), UniPoly::from_ints(&[1, 1]));
        // (x - 2)^2 + 1 = x^2 - 4x + 5
        let p = UniPoly::from_ints(&[1, 0, 1]);
        assert_eq!(p.shift(&int(-2)), UniPoly::from_ints(&[5, -4, 1]));
    }

    #[test]
    fn shift_matches_pointwise_evaluation() {
        let p = UniPoly::from_coeffs(vec![rat(1, 3), int(-2), int(0), rat(5, 7), int(1)]);
        let c = rat(-3, 2);
        let shifted = p.shift(&c);
        for t in -4..=4 {
            let at = rat(t, 3);
            assert_eq!(shifted.eval(&at), p.eval(&(&at + &c)));
        }
    }

    #[test]
    fn integrate_examples() {
        assert!(UniPoly::zero().integrate().is_zero());
        assert_eq!(UniPoly::one().integrate(), UniPoly::x());
        assert_eq!(
            UniPoly::from_ints(&[2, 0, 3]).integrate(),
            UniPoly::from_ints(&[0, 2, 0, 1])
        );
    }

    #[test]
    fn degree_of_zero_is_none() {
        assert_eq!(UniPoly::zero().degree(), None);
        assert!(UniPoly::zero().is_constant());
        assert_eq!(UniPoly::from_ints(&[0, 0, 0]).degree(), None);
        assert_eq!(UniPoly::from_ints(&[1, 0, 2, 0]).degree(), Some(2));
    }

    #[test]
    fn eval_horner() {
        let p = UniPoly::from_ints(&[1, 0, 0, 2]);
        assert_eq!(p.eval(&int(2)), int(17));
        assert_eq!(UniPoly::x().eval(&int(0)), int(0));
        assert_eq!(UniPoly::zero().eval(&int(5)), int(0));
    }
}
