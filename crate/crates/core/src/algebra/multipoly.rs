use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{int, Rational};
use super::unipoly::UniPoly;

/// A variable of `Q[x, y1, ..., yn]`. `Y(j)` is zero-based: `Y(0)` is `y1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y(usize),
}

impl Var {
    /// Slot of this variable in an exponent vector (`x` first).
    pub fn slot(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y(j) => j + 1,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => f.write_str("x"),
            Var::Y(j) => write!(f, "y{}", j + 1),
        }
    }
}

/// Exponent vector `[deg_x, deg_y1, ..., deg_yn]`.
pub type Monomial = Vec<u32>;

/// Sparse polynomial in `x, y1, ..., yn` with a fixed number `n` of
/// y-variables. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n_y: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(n_y: usize) -> Self {
        Self {
            n_y,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n_y: usize) -> Self {
        Self::constant(n_y, Rational::one())
    }

    pub fn constant(n_y: usize, c: Rational) -> Self {
        Self::term(n_y, vec![0; n_y + 1], c)
    }

    /// Single term `c * m`. Panics if `m` has the wrong length.
    pub fn term(n_y: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), n_y + 1, "exponent vector length");
        let mut p = Self::zero(n_y);
        p.add_term(m, c);
        p
    }

    /// The variable `v` as a polynomial. Panics if `v` is outside the arity.
    pub fn var(n_y: usize, v: Var) -> Self {
        let mut m = vec![0; n_y + 1];
        m[v.slot()] = 1;
        Self::term(n_y, m, Rational::one())
    }

    pub fn x(n_y: usize) -> Self {
        Self::var(n_y, Var::X)
    }

    pub fn y(n_y: usize, j: usize) -> Self {
        Self::var(n_y, Var::Y(j))
    }

    pub fn from_unipoly(n_y: usize, p: &UniPoly) -> Self {
        let mut out = Self::zero(n_y);
        for (k, c) in p.terms() {
            let mut m = vec![0; n_y + 1];
            m[0] = k;
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(n_y: usize, terms: I) -> Self {
        let mut p = Self::zero(n_y);
        for (m, c) in terms {
            assert_eq!(m.len(), n_y + 1, "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in increasing lexicographic order of the exponent vector.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    /// Largest monomial in the stored (lexicographic, `x` first) order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Same polynomial viewed in a ring with `n_y` y-variables. Returns `None`
    /// if a dropped variable occurs.
    pub fn with_arity(&self, n_y: usize) -> Option<Self> {
        let mut out = Self::zero(n_y);
        for (m, c) in &self.terms {
            let mut e = vec![0; n_y + 1];
            for (slot, &d) in m.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                *e.get_mut(slot)? = d;
            }
            out.add_term(e, c.clone());
        }
        Some(out)
    }

    /// Total degree in the y-variables (`None` for zero).
    pub fn y_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m[1..].iter().sum()).max()
    }

    /// Highest zero-based y-index that occurs, if any.
    pub fn max_y_used(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|m| m[1..].iter().rposition(|&d| d > 0))
            .max()
    }

    /// `Some(p)` when this polynomial only involves `x`.
    pub fn as_unipoly(&self) -> Option<UniPoly> {
        if self.max_y_used().is_some() {
            return None;
        }
        Some(UniPoly::from_terms(
            self.terms.iter().map(|(m, c)| (m[0], c.clone())),
        ))
    }

    /// Homogeneous component of y-degree `d`.
    pub fn y_homogeneous_part(&self, d: u32) -> Self {
        Self {
            n_y: self.n_y,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m[1..].iter().sum::<u32>() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n_y);
        }
        Self {
            n_y: self.n_y,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn partial(&self, v: Var) -> Self {
        let slot = v.slot();
        assert!(slot <= self.n_y, "variable {v} outside arity {}", self.n_y);
        let mut out = Self::zero(self.n_y);
        for (m, c) in &self.terms {
            let d = m[slot];
            if d == 0 {
                continue;
            }
            let mut e = m.clone();
            e[slot] -= 1;
            out.add_term(e, c * int(d as i64));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.n_y);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Substitutes `images[slot]` for each variable (`images[0]` for `x`,
    /// `images[j + 1]` for `y_{j+1}`). All images must share one arity, which
    /// becomes the arity of the result.
    pub fn substitute(&self, images: &[MultiPoly]) -> Self {
        assert_eq!(images.len(), self.n_y + 1, "one image per variable");
        let target = images.first().map_or(0, |p| p.n_y);
        // powers[slot][e] = images[slot]^e, filled lazily.
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| {
                assert_eq!(p.n_y, target, "images must share an arity");
                vec![Self::one(target)]
            })
            .collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut prod = Self::constant(target, c.clone());
            for (slot, &d) in m.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                let cache = &mut powers[slot];
                while cache.len() <= d as usize {
                    let next = &cache[cache.len() - 1] * &images[slot];
                    cache.push(next);
                }
                prod = &prod * &cache[d as usize];
            }
            out = &out + &prod;
        }
        out
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[n={}]({self})", self.n_y)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::textio::format_poly(self))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n_y, rhs.n_y, "arity mismatch in addition");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n_y, rhs.n_y, "arity mismatch in subtraction");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            n_y: self.n_y,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n_y, rhs.n_y, "arity mismatch in multiplication");
        let mut out = MultiPoly::zero(self.n_y);
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(p, q)| p + q).collect();
                out.add_term(m, a * b);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
