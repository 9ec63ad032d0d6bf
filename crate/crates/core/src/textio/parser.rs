use num_traits::Zero;

use super::lexer::{lex, Spanned, Tok};
use super::ParseError;
use crate::algebra::{MultiPoly, Rational, UniPoly, Var};
use crate::deriv::{Derivation, PolyEndo, TriangularDerivation};
use crate::error::Error;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 255;
/// Expansions estimated to exceed this many terms are rejected.
const MAX_TERMS: u128 = 1 << 20;

/// Expression tree of a polynomial as written, before expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    /// Byte offset of the node's first token (the operator for binary nodes).
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Num(Rational),
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn new(kind: ExprKind, pos: usize) -> Self {
        Self { kind, pos }
    }

    /// Expands the tree in `Q[x, y1, ..., y<arity>]`.
    pub fn to_poly(&self, arity: usize) -> Result<MultiPoly, ParseError> {
        Ok(match &self.kind {
            ExprKind::Num(c) => MultiPoly::constant(arity, c.clone()),
            ExprKind::Var(v) => match *v {
                Var::Y(j) if j >= arity => {
                    return Err(ParseError::new(
                        self.pos,
                        format!("unknown variable '{v}' (arity {arity})"),
                    ))
                }
                _ => MultiPoly::var(arity, *v),
            },
            ExprKind::Neg(e) => -&e.to_poly(arity)?,
            ExprKind::Add(a, b) => &a.to_poly(arity)? + &b.to_poly(arity)?,
            ExprKind::Sub(a, b) => &a.to_poly(arity)? - &b.to_poly(arity)?,
            ExprKind::Mul(a, b) => {
                let (p, q) = (a.to_poly(arity)?, b.to_poly(arity)?);
                if (p.len() as u128) * (q.len() as u128) > MAX_TERMS {
                    return Err(ParseError::new(self.pos, "expansion too large"));
                }
                &p * &q
            }
            ExprKind::Pow(base, e) => {
                let p = base.to_poly(arity)?;
                if power_terms_estimate(p.len(), *e) > MAX_TERMS {
                    return Err(ParseError::new(self.pos, "expansion too large"));
                }
                p.pow(*e)
            }
        })
    }
}

/// Upper bound `C(len - 1 + e, e)` on the number of terms of a `len`-term
/// polynomial raised to `e`, saturating.
fn power_terms_estimate(len: usize, e: u32) -> u128 {
    if len <= 1 {
        return 1;
    }
    let k = (len - 1) as u128;
    let mut acc: u128 = 1;
    for i in 1..=(e as u128).min(k) {
        let top = if e as u128 > k { e as u128 + i } else { k + i };
        acc = acc.saturating_mul(top) / i;
        if acc > MAX_TERMS {
            return acc;
        }
    }
    acc
}

struct Parser<'a> {
    toks: &'a [Spanned],
    i: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn new(toks: &'a [Spanned], end: usize) -> Self {
        Self { toks, i: 0, end }
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.pos)
    }

    fn bump(&mut self) -> Option<&'a Spanned> {
        let t = self.toks.get(self.i);
        self.i += 1;
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let found = self
            .peek()
            .map_or("end of input".to_string(), Tok::describe);
        ParseError::new(self.pos(), format!("expected {wanted}, found {found}"))
    }

    fn expect(&mut self, tok: &Tok, wanted: &str) -> Result<usize, ParseError> {
        if self.peek() == Some(tok) {
            let pos = self.pos();
            self.i += 1;
            Ok(pos)
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn at_end(&self) -> bool {
        self.i >= self.toks.len()
    }

    fn poly(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos();
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.i += 1;
                Expr::new(ExprKind::Neg(Box::new(self.term()?)), start)
            }
            Some(Tok::Plus) => {
                self.i += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            let pos = self.pos();
            let kind: fn(Box<Expr>, Box<Expr>) -> ExprKind = match self.peek() {
                Some(Tok::Plus) => ExprKind::Add,
                Some(Tok::Minus) => ExprKind::Sub,
                _ => return Ok(acc),
            };
            self.i += 1;
            let rhs = self.term()?;
            acc = Expr::new(kind(Box::new(acc), Box::new(rhs)), pos);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            let pos = self.pos();
            self.i += 1;
            let rhs = self.factor()?;
            acc = Expr::new(ExprKind::Mul(Box::new(acc), Box::new(rhs)), pos);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let pos = self.pos();
        self.i += 1;
        let epos = self.pos();
        match self.bump().map(|t| &t.tok) {
            Some(Tok::Num(n)) => match u32::try_from(n) {
                Ok(e) if e <= MAX_EXPONENT => Ok(Expr::new(ExprKind::Pow(Box::new(base), e), pos)),
                _ => Err(ParseError::new(
                    epos,
                    format!("exponent exceeds {MAX_EXPONENT}"),
                )),
            },
            _ => {
                self.i -= 1;
                Err(self.unexpected("exponent"))
            }
        }
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        let Some(tok) = self.peek() else {
            return Err(self.unexpected("number, variable or '('"));
        };
        let kind = match tok {
            Tok::Num(n) => {
                self.i += 1;
                let mut value = Rational::from_integer(n.clone());
                if self.peek() == Some(&Tok::Slash) {
                    self.i += 1;
                    let dpos = self.pos();
                    match self.peek() {
                        Some(Tok::Num(d)) if d.is_zero() => {
                            return Err(ParseError::new(dpos, "zero denominator"))
                        }
                        Some(Tok::Num(d)) => {
                            self.i += 1;
                            value = Rational::new(n.clone(), d.clone());
                        }
                        _ => return Err(self.unexpected("denominator")),
                    }
                }
                ExprKind::Num(value)
            }
            Tok::X => {
                self.i += 1;
                ExprKind::Var(Var::X)
            }
            Tok::Y(j) => {
                self.i += 1;
                ExprKind::Var(Var::Y(j - 1))
            }
            Tok::LParen => {
                self.i += 1;
                let inner = self.poly()?;
                self.expect(&Tok::RParen, "')'")?;
                return Ok(inner);
            }
            _ => return Err(self.unexpected("number, variable or '('")),
        };
        Ok(Expr::new(kind, pos))
    }
}

/// Parses text into an expression tree without expanding it.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text, false)?;
    let mut p = Parser::new(&toks, text.len());
    let e = p.poly()?;
    if !p.at_end() {
        return Err(p.unexpected("operator or end of input"));
    }
    Ok(e)
}

/// Parses a polynomial in `x, y1, ..., y<arity>`.
pub fn parse_poly(text: &str, arity: usize) -> Result<MultiPoly, ParseError> {
    parse_expr(text)?.to_poly(arity)
}

/// Token runs between separators, dropping empty ones.
fn entries(toks: &[Spanned]) -> Vec<&[Spanned]> {
    toks.split(|t| t.tok == Tok::Sep)
        .filter(|e| !e.is_empty())
        .collect()
}

/// End offset of an entry, for errors about missing trailing tokens.
fn entry_end(entry: &[Spanned], text: &str) -> usize {
    let last = entry.last().expect("entries are nonempty");
    let tail = &text[last.pos..];
    let len = tail.find([';', '\n', '#']).unwrap_or(tail.len());
    last.pos + tail[..len].trim_end().len()
}

/// A parsed derivation file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedDerivation {
    /// Every `b_j` is a polynomial in `x`.
    Shamsuddin(Derivation),
    /// Some `b_j` involves earlier `y` variables.
    Triangular(TriangularDerivation),
}

impl ParsedDerivation {
    pub fn n_y(&self) -> usize {
        match self {
            Self::Shamsuddin(d) => d.n(),
            Self::Triangular(d) => d.n(),
        }
    }

    pub fn to_triangular(&self) -> TriangularDerivation {
        match self {
            Self::Shamsuddin(d) => d.to_triangular(),
            Self::Triangular(d) => d.clone(),
        }
    }

    pub fn as_shamsuddin(&self) -> Option<&Derivation> {
        match self {
            Self::Shamsuddin(d) => Some(d),
            Self::Triangular(_) => None,
        }
    }
}

fn expect_key(p: &mut Parser<'_>, key: &str) -> Result<(), ParseError> {
    match p.peek() {
        Some(Tok::Ident(k)) if k == key => {
            p.i += 1;
            p.expect(&Tok::Equals, "'='").map(|_| ())
        }
        _ => Err(p.unexpected(&format!("'{key}'"))),
    }
}

/// Records `index` (1-based) as seen, rejecting repeats.
fn claim(seen: &mut Vec<bool>, index: usize, pos: usize, name: &str) -> Result<(), ParseError> {
    if seen.len() < index {
        seen.resize(index, false);
    }
    if std::mem::replace(&mut seen[index - 1], true) {
        return Err(ParseError::new(pos, format!("duplicate entry for {name}")));
    }
    Ok(())
}

/// Parses entries `y<i>: a=<poly in x>, b=<poly>` separated by `;` or newlines.
///
/// The entries must cover `y1, ..., yn` exactly once each, in any order. The
/// result is a Shamsuddin derivation in normal form when every `b` is a
/// polynomial in `x`, and a triangular derivation otherwise.
pub fn parse_derivation(text: &str) -> Result<ParsedDerivation, Error> {
    let toks = lex(text, true)?;
    let mut raw = Vec::new();
    let mut seen = Vec::new();
    for entry in entries(&toks) {
        let mut p = Parser::new(entry, entry_end(entry, text));
        let head = p.pos();
        let index = match p.peek() {
            Some(Tok::Y(i)) => *i,
            _ => return Err(p.unexpected("'y<i>'").into()),
        };
        p.i += 1;
        claim(&mut seen, index, head, &format!("y{index}"))?;
        p.expect(&Tok::Colon, "':'")?;
        expect_key(&mut p, "a")?;
        let a = p.poly()?;
        p.expect(&Tok::Comma, "','")?;
        expect_key(&mut p, "b")?;
        let b = p.poly()?;
        if !p.at_end() {
            return Err(p.unexpected("operator or end of entry").into());
        }
        raw.push((index, head, a, b));
    }
    let n = raw.len();
    if let Some(&(index, pos, ..)) = raw.iter().find(|e| e.0 > n) {
        return Err(ParseError::new(
            pos,
            format!("y{index} out of range: {n} entries must cover y1..y{n}"),
        )
        .into());
    }
    raw.sort_by_key(|e| e.0);
    let mut pairs = Vec::with_capacity(n);
    for (_, _, a, b) in raw {
        let a = a
            .to_poly(0)?
            .as_unipoly()
            .expect("arity 0 polynomials are univariate");
        pairs.push((a, b.to_poly(n)?));
    }
    if n > 0 && pairs.iter().all(|(_, b)| b.as_unipoly().is_some()) {
        return Ok(ParsedDerivation::Shamsuddin(Derivation::normalize(&pairs)?));
    }
    Ok(ParsedDerivation::Triangular(TriangularDerivation::new(
        pairs,
    )?))
}

/// Parses entries `x -> <poly>` and `y<i> -> <poly>`; generators without an
/// entry are mapped to themselves.
pub fn parse_endo(text: &str, arity: usize) -> Result<PolyEndo, Error> {
    let toks = lex(text, true)?;
    let mut x_image = None;
    let mut y_images: Vec<Option<MultiPoly>> = vec![None; arity];
    for entry in entries(&toks) {
        let mut p = Parser::new(entry, entry_end(entry, text));
        let head = p.pos();
        let slot = match p.peek() {
            Some(Tok::X) => &mut x_image,
            Some(Tok::Y(i)) if *i <= arity => &mut y_images[i - 1],
            Some(Tok::Y(i)) => {
                return Err(ParseError::new(
                    head,
                    format!("unknown variable 'y{i}' (arity {arity})"),
                )
                .into())
            }
            _ => return Err(p.unexpected("'x' or 'y<i>'").into()),
        };
        let name = p.peek().expect("checked").describe();
        p.i += 1;
        p.expect(&Tok::Arrow, "'->'")?;
        let image = p.poly()?;
        if !p.at_end() {
            return Err(p.unexpected("operator or end of entry").into());
        }
        if slot.is_some() {
            return Err(ParseError::new(head, format!("duplicate entry for {name}")).into());
        }
        *slot = Some(image.to_poly(arity)?);
    }
    PolyEndo::new(
        x_image.unwrap_or_else(|| MultiPoly::x(arity)),
        y_images
            .into_iter()
            .enumerate()
            .map(|(j, g)| g.unwrap_or_else(|| MultiPoly::y(arity, j)))
            .collect(),
    )
}

/// Parses a polynomial that may only mention `x`.
pub fn parse_unipoly(text: &str) -> Result<UniPoly, ParseError> {
    Ok(parse_poly(text, 0)?
        .as_unipoly()
        .expect("arity 0 polynomials are univariate"))
}
