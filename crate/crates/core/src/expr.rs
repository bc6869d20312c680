//! The text grammar for algebra elements.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' ['-'] int)?
//! atom   := 'T' int | 'x' int | 'h' | int | '(' expr ')'
//! ```
//!
//! `ħ` is accepted for `h`. Negative powers are allowed on `T` atoms only.
//! This is the format elements are printed in, so printed output parses back.

use num_bigint::BigInt;

use crate::coeff::IntPoly;
use crate::dga::{Dga, DgaElt};
use crate::error::{Error, Result};
use crate::hecke::HeckeElt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    T(usize),
    X(usize),
    Hbar,
    Int(BigInt),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    kappa: Option<usize>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn err(&self, offset: usize, msg: impl Into<String>) -> Error {
        Error::Syntax {
            offset,
            msg: msg.into(),
        }
    }

    // digits directly after the current position, no whitespace
    fn digits(&mut self) -> Option<&'a str> {
        let rest = &self.src[self.pos..];
        let n = rest.bytes().take_while(u8::is_ascii_digit).count();
        if n == 0 {
            return None;
        }
        self.pos += n;
        Some(&rest[..n])
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.peek() == Some('-') {
            self.bump();
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some('-') => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some('*') {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        let atom = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(atom);
        }
        self.bump();
        let neg = self.peek() == Some('-');
        if neg {
            self.bump();
        }
        self.skip_ws();
        let at = self.pos;
        let d = self
            .digits()
            .ok_or_else(|| self.err(at, "expected an integer exponent"))?;
        let n: i64 = d.parse().map_err(|_| self.err(at, "exponent too large"))?;
        let n = if neg { -n } else { n };
        if n < 0 && !matches!(atom, Expr::T(_)) {
            return Err(Error::IllegalInverse { offset: start });
        }
        Ok(Expr::Pow(Box::new(atom), n))
    }

    // a generator index in 1..=max
    fn index(&mut self, what: &'static str, max: usize) -> Result<usize> {
        let at = self.pos;
        let d = self
            .digits()
            .ok_or_else(|| self.err(at, format!("expected an index after {what}")))?;
        let i: i64 = d.parse().map_err(|_| self.err(at, "index too large"))?;
        if i < 1 || i > max as i64 {
            return Err(Error::IndexOutOfRange {
                what,
                index: i,
                max: max as i64,
            });
        }
        Ok(i as usize)
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        let at = self.pos;
        match self.bump() {
            Some('T') => Ok(Expr::T(self.index("T", self.kappa.unwrap_or(1) - 1)?)),
            Some('x') => Ok(Expr::X(self.index("x", self.kappa.unwrap_or(0))?)),
            Some('h') | Some('ħ') => Ok(Expr::Hbar),
            Some('(') => {
                let e = self.expr()?;
                match self.bump() {
                    Some(')') => Ok(e),
                    _ => Err(self.err(self.pos, "expected ')'")),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                self.pos = at;
                let d = self.digits().unwrap();
                Ok(Expr::Int(d.parse().unwrap()))
            }
            Some(c) => Err(self.err(at, format!("unexpected {c:?}"))),
            None => Err(self.err(at, "unexpected end of input")),
        }
    }
}

fn parse_with(text: &str, kappa: Option<usize>) -> Result<Expr> {
    let mut p = Parser {
        src: text,
        pos: 0,
        kappa,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.err(p.pos, "unexpected trailing input"));
    }
    Ok(e)
}

/// Parses an element of `H_k`; generator indices are range checked.
pub fn parse_expr(text: &str, kappa: usize) -> Result<Expr> {
    parse_with(text, Some(kappa))
}

/// Parses a polynomial in `h` with integer coefficients.
pub fn parse_poly(text: &str) -> Result<IntPoly> {
    parse_with(text, None)?.eval_poly()
}

impl Expr {
    /// Evaluates in the dga, returning the normal form.
    pub fn eval(&self, dga: &Dga) -> Result<DgaElt> {
        let k = dga.kappa();
        Ok(match self {
            Expr::T(i) => DgaElt::from_hecke(&HeckeElt::t(*i, k)?),
            Expr::X(j) => DgaElt::x(*j, k)?,
            Expr::Hbar => DgaElt::scalar(IntPoly::hbar(), k),
            Expr::Int(n) => DgaElt::scalar(IntPoly::from(n.clone()), k),
            Expr::Neg(a) => -&a.eval(dga)?,
            Expr::Add(a, b) => &a.eval(dga)? + &b.eval(dga)?,
            Expr::Sub(a, b) => &a.eval(dga)? - &b.eval(dga)?,
            Expr::Mul(a, b) => dga.mul(&a.eval(dga)?, &b.eval(dga)?)?,
            Expr::Pow(a, n) => {
                let base = match (a.as_ref(), *n < 0) {
                    (Expr::T(i), true) => DgaElt::from_hecke(&HeckeElt::t_inverse(*i, k)?),
                    (_, true) => return Err(Error::IllegalInverse { offset: 0 }),
                    _ => a.eval(dga)?,
                };
                let mut acc = DgaElt::one(k);
                for _ in 0..n.unsigned_abs() {
                    acc = dga.mul(&acc, &base)?;
                }
                acc
            }
        })
    }

    /// Evaluates an expression built from `h` and integers only.
    pub fn eval_poly(&self) -> Result<IntPoly> {
        Ok(match self {
            Expr::T(_) | Expr::X(_) => {
                return Err(Error::InvalidParams("expected a polynomial in h".into()))
            }
            Expr::Hbar => IntPoly::hbar(),
            Expr::Int(n) => IntPoly::from(n.clone()),
            Expr::Neg(a) => -a.eval_poly()?,
            Expr::Add(a, b) => a.eval_poly()? + b.eval_poly()?,
            Expr::Sub(a, b) => a.eval_poly()? - b.eval_poly()?,
            Expr::Mul(a, b) => a.eval_poly()? * b.eval_poly()?,
            Expr::Pow(a, n) => {
                let base = a.eval_poly()?;
                let mut acc = IntPoly::one();
                for _ in 0..*n {
                    acc = &acc * &base;
                }
                acc
            }
        })
    }
}
