use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{is_zero_vec, QMatrix};
use super::rational::{denominator_lcm, Rational};

/// `coeffs · t + constant >= 0`, stored as a primitive integer vector so that
/// duplicates can be detected syntactically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Ineq {
    coeffs: Vec<BigInt>,
    constant: BigInt,
}

impl Ineq {
    fn from_rational(coeffs: &[Rational], constant: &Rational) -> Self {
        let scale = Rational::from_integer(denominator_lcm(coeffs.iter().chain([constant])));
        let mut out = Ineq {
            coeffs: coeffs.iter().map(|c| (c * &scale).to_integer()).collect(),
            constant: (constant * &scale).to_integer(),
        };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        let g = self
            .coeffs
            .iter()
            .chain([&self.constant])
            .fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if !g.is_zero() && !g.is_one() {
            for c in &mut self.coeffs {
                *c /= &g;
            }
            self.constant /= &g;
        }
    }

    /// Positive combination that cancels variable `v`: `pos` has a positive
    /// coefficient there, `neg` a negative one.
    fn combine(pos: &Ineq, neg: &Ineq, v: usize) -> Ineq {
        let p = &pos.coeffs[v];
        let q = -&neg.coeffs[v];
        let mut out = Ineq {
            coeffs: pos
                .coeffs
                .iter()
                .zip(&neg.coeffs)
                .map(|(a, b)| a * &q + b * p)
                .collect(),
            constant: &pos.constant * &q + &neg.constant * p,
        };
        out.coeffs[v] = BigInt::zero();
        out.normalize();
        out
    }
}

/// Eliminates the last variable of `system`, returning the projected system.
fn eliminate(system: &BTreeSet<Ineq>, v: usize) -> BTreeSet<Ineq> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out = BTreeSet::new();
    for ineq in system {
        if ineq.coeffs[v].is_positive() {
            pos.push(ineq);
        } else if ineq.coeffs[v].is_negative() {
            neg.push(ineq);
        } else {
            out.insert(ineq.clone());
        }
    }
    for p in &pos {
        for q in &neg {
            let combined = Ineq::combine(p, q, v);
            // Drop trivially true constraints 0 >= -c with c <= 0.
            if combined.coeffs.iter().all(Zero::is_zero) && !combined.constant.is_negative() {
                continue;
            }
            out.insert(combined);
        }
    }
    out
}

/// Picks a value for variable `v` satisfying every constraint of `system`,
/// given values for the variables `0..v` (later ones have zero coefficients).
fn choose_value(system: &BTreeSet<Ineq>, v: usize, assigned: &[Rational]) -> Rational {
    let mut lower: Option<Rational> = None;
    let mut upper: Option<Rational> = None;
    for ineq in system {
        let coef = &ineq.coeffs[v];
        if coef.is_zero() {
            continue;
        }
        let mut rest = Rational::from_integer(ineq.constant.clone());
        for (j, val) in assigned.iter().enumerate() {
            if !ineq.coeffs[j].is_zero() {
                rest += Rational::from_integer(ineq.coeffs[j].clone()) * val;
            }
        }
        // coef * t + rest >= 0
        let bound = -rest / Rational::from_integer(coef.clone());
        if coef.is_positive() {
            if lower.as_ref().is_none_or(|l| bound > *l) {
                lower = Some(bound);
            }
        } else if upper.as_ref().is_none_or(|u| bound < *u) {
            upper = Some(bound);
        }
    }
    match (lower, upper) {
        (Some(l), _) => l,
        (None, Some(u)) => u,
        (None, None) => Rational::zero(),
    }
}

/// Finds a nonzero `γ ∈ ℕ^cols` with `a · γ = 0`, or `None` if there is none.
///
/// The kernel is parametrized by a nullspace basis `N`, and the cone
/// `{t : N t >= 0, Σ (N t)_i = 1}` is tested for feasibility by exact
/// Fourier–Motzkin elimination. A feasible point is recovered by
/// back-substitution and scaled to a primitive integer vector.
pub fn nonneg_kernel_witness(a: &QMatrix) -> Option<Vec<BigUint>> {
    let n = a.cols();
    let basis = a.nullspace();
    let d = basis.len();
    if d == 0 {
        return None;
    }
    // gamma_i = Σ_k basis[k][i] t_k
    let row = |i: usize| -> Vec<Rational> { basis.iter().map(|b| b[i].clone()).collect() };
    let mut system = BTreeSet::new();
    for i in 0..n {
        let coeffs = row(i);
        if is_zero_vec(&coeffs) {
            continue;
        }
        system.insert(Ineq::from_rational(&coeffs, &Rational::zero()));
    }
    let sum: Vec<Rational> = (0..d)
        .map(|k| basis[k].iter().fold(Rational::zero(), |acc, v| acc + v))
        .collect();
    if is_zero_vec(&sum) {
        // Every kernel vector has coordinate sum 0, so a nonzero one must have
        // a negative entry.
        return None;
    }
    let neg_sum: Vec<Rational> = sum.iter().map(|v| -v).collect();
    system.insert(Ineq::from_rational(&sum, &-Rational::one()));
    system.insert(Ineq::from_rational(&neg_sum, &Rational::one()));

    // stages[k] involves variables 0..d-k.
    let mut stages = vec![system];
    for v in (0..d).rev() {
        let next = eliminate(stages.last().expect("nonempty"), v);
        stages.push(next);
    }
    let last = stages.last().expect("nonempty");
    if last.iter().any(|ineq| ineq.constant.is_negative()) {
        return None;
    }

    let mut t: Vec<Rational> = Vec::with_capacity(d);
    for v in 0..d {
        // The system in which v is the highest remaining variable.
        let stage = &stages[d - 1 - v];
        let value = choose_value(stage, v, &t);
        t.push(value);
    }
    let gamma: Vec<Rational> = (0..n)
        .map(|i| {
            row(i)
                .iter()
                .zip(&t)
                .fold(Rational::zero(), |acc, (b, tv)| acc + b * tv)
        })
        .collect();
    debug_assert!(gamma.iter().all(|g| !g.is_negative()));
    debug_assert!(is_zero_vec(&a.mul_vec(&gamma)));

    let scale = Rational::from_integer(denominator_lcm(&gamma));
    let ints: Vec<BigInt> = gamma.iter().map(|g| (g * &scale).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    Some(
        ints.into_iter()
            .map(|v| (v / &g).to_biguint().expect("nonnegative entry"))
            .collect(),
    )
}
