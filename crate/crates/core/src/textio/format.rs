use std::cmp::Ordering;
use std::fmt::Write;

use num_traits::{One, Signed};

use crate::algebra::{Monomial, MultiPoly, Rational, UniPoly};
use crate::deriv::{Derivation, PolyEndo, TriangularDerivation};

/// Canonical order: y-exponents `(y1, y2, ...)` first, then `x`, descending.
fn canonical(a: &Monomial, b: &Monomial) -> Ordering {
    b[1..].cmp(&a[1..]).then(b[0].cmp(&a[0]))
}

fn write_monomial(out: &mut String, m: &Monomial) {
    let mut first = true;
    for (slot, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        if slot == 0 {
            out.push('x');
        } else {
            let _ = write!(out, "y{slot}");
        }
        if e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
}

/// Canonical text of `p`, e.g. `-1*y1 - 2*x - 2` or `x^2*y1 + 1/2`.
pub fn format_poly(p: &MultiPoly) -> String {
    let mut terms: Vec<(&Monomial, &Rational)> = p.terms().collect();
    if terms.is_empty() {
        return "0".into();
    }
    terms.sort_by(|a, b| canonical(a.0, b.0));
    let mut out = String::new();
    for (i, (m, c)) in terms.into_iter().enumerate() {
        let constant = m.iter().all(|&e| e == 0);
        let shown = if i == 0 {
            c.clone()
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
            c.abs()
        };
        if constant {
            let _ = write!(out, "{shown}");
        } else if shown.is_one() {
            write_monomial(&mut out, m);
        } else {
            let _ = write!(out, "{shown}*");
            write_monomial(&mut out, m);
        }
    }
    out
}

fn format_entries<'a>(entries: impl Iterator<Item = (&'a UniPoly, String)>) -> String {
    entries
        .enumerate()
        .map(|(j, (a, b))| format!("y{}: a={a}, b={b}", j + 1))
        .collect::<Vec<_>>()
        .join(" ; ")
}

/// `y1: a=<a1>, b=<b1> ; y2: ...` in variable order.
pub fn format_derivation(d: &Derivation) -> String {
    let pairs = d.pairs();
    format_entries(pairs.iter().map(|(a, b)| (a, b.to_string())))
}

pub fn format_triangular(d: &TriangularDerivation) -> String {
    format_entries(d.entries().iter().map(|(a, b)| (a, format_poly(b))))
}

/// `x -> <f> ; y1 -> <g1> ; ...`.
pub fn format_endo(rho: &PolyEndo) -> String {
    let mut parts = vec![format!("x -> {}", format_poly(rho.x_image()))];
    for (j, g) in rho.y_images().iter().enumerate() {
        parts.push(format!("y{} -> {}", j + 1, format_poly(g)));
    }
    parts.join(" ; ")
}
