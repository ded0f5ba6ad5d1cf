//! Polynomial text input.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | IDENT | '(' expr ')'
//! ```
//!
//! Multiplication must be written with `*`; `2X` and `X Y` are rejected.

use std::sync::Arc;

use thiserror::Error;

use super::{ExponentVector, PolyRing, SparsePoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    /// `pos` is a 0-based byte offset into the input.
    #[error("syntax error at column {}: {msg}", pos + 1)]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at column {}", pos + 1)]
    UnknownVariable { name: String, pos: usize },
    #[error("negative exponent at column {}", pos + 1)]
    NegativeExponent { pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].to_string()), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    ring: &'a Arc<PolyRing>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<SparsePoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SparsePoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    let at = self.offset();
                    acc = acc.checked_mul(&rhs).map_err(|_| ParseError::Syntax {
                        pos: at,
                        msg: "exponent overflow".into(),
                    })?;
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    return self.syntax("implicit multiplication is not allowed; use `*`");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<SparsePoly, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<SparsePoly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.offset();
        let n = match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                s.parse::<u32>().map_err(|_| ParseError::Syntax {
                    pos: at,
                    msg: format!("exponent `{s}` is too large"),
                })?
            }
            Some(Tok::Minus) => return Err(ParseError::NegativeExponent { pos: at }),
            _ => return self.syntax("expected a nonnegative integer exponent after `^`"),
        };
        if self.peek() == Some(&Tok::Caret) {
            return self.syntax("chained `^` is ambiguous; use parentheses");
        }
        base.pow(u64::from(n)).map_err(|_| ParseError::Syntax {
            pos: at,
            msg: "exponent overflow".into(),
        })
    }

    fn atom(&mut self) -> Result<SparsePoly, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                let p = u64::from(self.ring.prime().get());
                // Reduce digit by digit so arbitrarily long literals are fine.
                let c = s.bytes().fold(0u64, |acc, b| (acc * 10 + u64::from(b - b'0')) % p);
                Ok(SparsePoly::constant(self.ring, c))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.ring.var_index(&name) {
                    Some(i) => Ok(SparsePoly::var(self.ring, i)),
                    None => Err(ParseError::UnknownVariable { name, pos: at }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.syntax("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => self.syntax(format!("unexpected token {}", describe(&t))),
            None => self.syntax("unexpected end of input"),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(s) | Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
    }
}

/// Parses `text` into the canonical polynomial of `ring`; coefficients are reduced mod p.
pub fn parse_poly(text: &str, ring: &Arc<PolyRing>) -> Result<SparsePoly, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
        ring,
    };
    let poly = parser.expr()?;
    if parser.pos < parser.toks.len() {
        return parser.syntax("unexpected trailing input");
    }
    Ok(poly)
}

/// Parses a monomial such as `X^2*Y`; `None` if the text is not a single nonzero term.
pub fn parse_monomial(text: &str, ring: &Arc<PolyRing>) -> Result<Option<ExponentVector>, ParseError> {
    let poly = parse_poly(text, ring)?;
    Ok(match poly.terms() {
        [(e, _)] => Some(e.clone()),
        _ => None,
    })
}
