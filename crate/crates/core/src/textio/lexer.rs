use num_bigint::BigInt;

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Num(BigInt),
    X,
    /// `y<i>` with the index as written (1-based).
    Y(usize),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Colon,
    Comma,
    Equals,
    Arrow,
    /// `;` or, in entry mode, a line break.
    Sep,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number {n}"),
            Tok::X => "'x'".into(),
            Tok::Y(i) => format!("'y{i}'"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Colon => "':'".into(),
            Tok::Comma => "','".into(),
            Tok::Equals => "'='".into(),
            Tok::Arrow => "'->'".into(),
            Tok::Sep => "separator".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub pos: usize,
}

/// Splits `text` into tokens carrying byte offsets. With `entries` set,
/// newlines become separators and `#` starts a comment.
pub(crate) fn lex(text: &str, entries: bool) -> Result<Vec<Spanned>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let simple = match c {
            b' ' | b'\t' | b'\r' => {
                i += 1;
                continue;
            }
            b'\n' if !entries => {
                i += 1;
                continue;
            }
            b'\n' | b';' if entries => Some(Tok::Sep),
            b'#' if entries => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            b'+' => Some(Tok::Plus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b':' if entries => Some(Tok::Colon),
            b',' if entries => Some(Tok::Comma),
            b'=' if entries => Some(Tok::Equals),
            b'-' => {
                if entries && bytes.get(i + 1) == Some(&b'>') {
                    i += 2;
                    out.push(Spanned {
                        tok: Tok::Arrow,
                        pos: start,
                    });
                    continue;
                }
                Some(Tok::Minus)
            }
            _ => None,
        };
        if let Some(tok) = simple {
            i += 1;
            out.push(Spanned { tok, pos: start });
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("ascii digits");
            out.push(Spanned {
                tok: Tok::Num(n),
                pos: start,
            });
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Spanned {
                tok: word(&text[start..i], start)?,
                pos: start,
            });
        } else {
            let ch = text[start..].chars().next().expect("nonempty");
            return Err(ParseError::new(
                start,
                format!("unexpected character {ch:?}"),
            ));
        }
    }
    Ok(out)
}

fn word(w: &str, pos: usize) -> Result<Tok, ParseError> {
    if w == "x" {
        return Ok(Tok::X);
    }
    if let Some(digits) = w.strip_prefix('y') {
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
            return match digits.parse::<usize>() {
                Ok(i) if i >= 1 && !digits.starts_with('0') => Ok(Tok::Y(i)),
                _ => Err(ParseError::new(pos, format!("invalid variable '{w}'"))),
            };
        }
    }
    Ok(Tok::Ident(w.to_string()))
}
