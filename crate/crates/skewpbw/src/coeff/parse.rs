//! Text form of scalars: integer-coefficient polynomials in `q` with `^` for
//! powers and `/` for the fraction bar, e.g. `(q^2+1)/(q-1)`. Multiplication
//! may be written `*` or by juxtaposition (`2q`).

use super::{CoeffMode, Scalar};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarParseError {
    #[error("unexpected character {0:?} in scalar")]
    BadChar(char),
    #[error("unexpected end of scalar text")]
    UnexpectedEnd,
    #[error("unexpected token {0:?} in scalar")]
    Unexpected(String),
    #[error("division by zero in scalar text")]
    DivisionByZero,
    #[error("exponent out of range")]
    BadExponent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Q,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Tok>, ScalarParseError> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '0'..='9' => {
                let mut n: i64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(v) = d.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|n| n.checked_add(v as i64))
                            .ok_or(ScalarParseError::BadExponent)?;
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Int(n));
            }
            'q' => {
                chars.next();
                toks.push(Tok::Q);
            }
            '+' => {
                chars.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                toks.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                toks.push(Tok::Star);
            }
            '/' => {
                chars.next();
                toks.push(Tok::Slash);
            }
            '^' => {
                chars.next();
                toks.push(Tok::Caret);
            }
            '(' => {
                chars.next();
                toks.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                toks.push(Tok::RParen);
            }
            other => return Err(ScalarParseError::BadChar(other)),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    mode: CoeffMode,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Scalar, ScalarParseError> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, ScalarParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.next();
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(ScalarParseError::DivisionByZero);
                    }
                    acc = acc.div(&d);
                }
                // Juxtaposition: `2q`, `3(q+1)`.
                Some(Tok::Int(_)) | Some(Tok::Q) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.unary()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar, ScalarParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.next();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, ScalarParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.next();
            let neg = if let Some(Tok::Minus) = self.peek() {
                self.next();
                true
            } else {
                false
            };
            match self.next() {
                Some(Tok::Int(e)) => {
                    if base.is_zero() && neg {
                        return Err(ScalarParseError::DivisionByZero);
                    }
                    let e = if neg { -e } else { e };
                    return Ok(base.pow(e));
                }
                Some(t) => return Err(ScalarParseError::Unexpected(format!("{t:?}"))),
                None => return Err(ScalarParseError::UnexpectedEnd),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, ScalarParseError> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(Scalar::int(n, self.mode)),
            Some(Tok::Q) => Ok(Scalar::q(self.mode)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    Some(t) => Err(ScalarParseError::Unexpected(format!("{t:?}"))),
                    None => Err(ScalarParseError::UnexpectedEnd),
                }
            }
            Some(t) => Err(ScalarParseError::Unexpected(format!("{t:?}"))),
            None => Err(ScalarParseError::UnexpectedEnd),
        }
    }
}

pub(super) fn parse_scalar(text: &str, mode: CoeffMode) -> Result<Scalar, ScalarParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, mode };
    let s = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ScalarParseError::Unexpected(format!("{:?}", p.toks[p.pos])));
    }
    Ok(s)
}
