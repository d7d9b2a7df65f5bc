//! Recursive-descent parser for the scalar/polynomial literal grammar:
//! integers, `p/q` rationals, the atoms `t` and `x`, operators
//! `+ - * / ^` (integer exponents, negative allowed on nonzero scalars),
//! and parentheses. Scalars are the `x`-free sublanguage.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Mode, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Int(BigInt),
    T,
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = text[start..i].parse().expect("digits");
                toks.push((start, Tok::Int(v)));
            }
            b't' => {
                toks.push((i, Tok::T));
                i += 1;
            }
            b'x' => {
                toks.push((i, Tok::X));
                i += 1;
            }
            b'+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            b'/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            b'^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: alloc::format!("unexpected character {:?}", b as char),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    mode: Mode,
    t: Option<Scalar>,
    allow_x: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|(_, t)| t.clone());
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos(),
            msg: msg.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let pos = self.pos();
                    let rhs = self.factor()?;
                    let s = self.as_scalar(rhs, pos)?;
                    if s.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    acc = acc.scale(&s.inv()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.primary()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let neg = if matches!(self.peek(), Some(Tok::Minus)) {
                self.bump();
                true
            } else {
                false
            };
            let pos = self.pos();
            let Some(Tok::Int(e)) = self.bump() else {
                return Err(Error::Parse {
                    pos,
                    msg: "expected integer exponent after ^".to_string(),
                });
            };
            let e: i64 = e.try_into().map_err(|_| Error::Parse {
                pos,
                msg: "exponent too large".to_string(),
            })?;
            let e = if neg { -e } else { e };
            if e >= 0 {
                return Ok(base.pow(e as u32));
            }
            // negative exponents only on nonzero scalars
            let s = self.as_scalar(base, pos)?;
            if s.is_zero() {
                return Err(Error::ZeroToNegativePower);
            }
            return Ok(Poly::constant(s.pow(e)?));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Poly> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(v)) => Ok(Poly::constant(Scalar::from_bigint(self.mode, v))),
            Some(Tok::T) => match &self.t {
                Some(t) => Ok(Poly::constant(t.clone())),
                None => Err(Error::Parse {
                    pos,
                    msg: "the variable t is not available in this context".to_string(),
                }),
            },
            Some(Tok::X) => {
                if self.allow_x {
                    Ok(Poly::x(self.mode))
                } else {
                    Err(Error::Parse {
                        pos,
                        msg: "x is not allowed in a scalar literal".to_string(),
                    })
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Parse {
                        pos: self.pos(),
                        msg: "expected closing parenthesis".to_string(),
                    }),
                }
            }
            _ => Err(Error::Parse {
                pos,
                msg: "expected integer, t, x, or parenthesized expression".to_string(),
            }),
        }
    }

    fn as_scalar(&self, p: Poly, pos: usize) -> Result<Scalar> {
        match p.degree() {
            None => Ok(Scalar::int(self.mode, 0)),
            Some(0) => Ok(p.coeffs()[0].clone()),
            Some(_) => Err(Error::Parse {
                pos,
                msg: "expected a scalar (x-free) expression here".to_string(),
            }),
        }
    }
}

fn run(text: &str, mode: Mode, t: Option<Scalar>, allow_x: bool) -> Result<Poly> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        i: 0,
        end: text.len(),
        mode,
        t,
        allow_x,
    };
    if p.peek().is_none() {
        return Err(p.err("empty literal"));
    }
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

pub(crate) fn parse_poly_literal(text: &str, mode: Mode, t: Option<Scalar>) -> Result<Poly> {
    run(text, mode, t, true)
}

pub(crate) fn parse_scalar_literal(text: &str, mode: Mode, t: Option<Scalar>) -> Result<Scalar> {
    let p = run(text, mode, t, false)?;
    match p.degree() {
        None => Ok(Scalar::int(mode, 0)),
        Some(0) => Ok(p.coeffs()[0].clone()),
        Some(_) => unreachable!("x rejected at token level"),
    }
}
