//! Polynomial expressions: `3*s^2 - h^2*s`, `(7*h^3*t - h^6)/2`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*      division only by constants
//! unary := '-' unary | power
//! power := atom ('^' uint)?
//! atom  := uint | ident | '(' expr ')'
//! ident := [A-Za-z][A-Za-z0-9'_]*
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::Poly;
use crate::rational::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier {name:?} at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("division by a non-constant expression at offset {offset}")]
    NonConstantDivisor { offset: usize },
    #[error("division by zero at offset {offset}")]
    DivisionByZero { offset: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Num(BigInt),
    Var(String),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Div(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let (off, c) = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = bytes[start..i].iter().map(|x| x.1).collect();
            out.push((Tok::Num(s.parse().expect("digits")), off));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].1.is_ascii_alphanumeric() || bytes[i].1 == '\'' || bytes[i].1 == '_') {
                i += 1;
            }
            out.push((Tok::Ident(bytes[start..i].iter().map(|x| x.1).collect()), off));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), off));
            i += 1;
        } else {
            return Err(ExprError::Syntax { offset: off, message: format!("unexpected character {c:?}") });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    names: Option<&'a [&'a str]>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: &str) -> Result<T, ExprError> {
        Err(ExprError::Syntax { offset: self.offset(), message: message.to_string() })
    }

    fn expr(&mut self) -> Result<PolyExpr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump();
                    lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Sym('/') => {
                    self.bump();
                    let offset = self.offset();
                    let rhs = self.unary()?;
                    match rhs.constant_value() {
                        None => return Err(ExprError::NonConstantDivisor { offset }),
                        Some(c) if c.is_zero() => return Err(ExprError::DivisionByZero { offset }),
                        Some(_) => {}
                    }
                    lhs = PolyExpr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<PolyExpr, ExprError> {
        if self.peek() == &Tok::Sym('-') {
            self.bump();
            return Ok(PolyExpr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<PolyExpr, ExprError> {
        let base = self.atom()?;
        if self.peek() != &Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Num(n) => {
                let Ok(k) = u32::try_from(&n) else { return self.err("exponent too large") };
                self.bump();
                Ok(PolyExpr::Pow(Box::new(base), k))
            }
            _ => self.err("expected a nonnegative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<PolyExpr, ExprError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(PolyExpr::Num(n))
            }
            Tok::Ident(name) => {
                let offset = self.offset();
                if let Some(names) = self.names {
                    if !names.contains(&name.as_str()) {
                        return Err(ExprError::UnknownIdentifier { name, offset });
                    }
                }
                self.bump();
                Ok(PolyExpr::Var(name))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != &Tok::Sym(')') {
                    return self.err("expected ')'");
                }
                self.bump();
                Ok(e)
            }
            Tok::End => self.err("unexpected end of input"),
            _ => self.err("expected a number, identifier or '('"),
        }
    }
}

fn parse_inner(text: &str, names: Option<&[&str]>) -> Result<PolyExpr, ExprError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, names };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Parses an expression whose identifiers must all be in `names`.
pub fn parse_poly(text: &str, names: &[&str]) -> Result<PolyExpr, ExprError> {
    parse_inner(text, Some(names))
}

/// Parses an expression with arbitrary identifiers.
pub fn parse_expr(text: &str) -> Result<PolyExpr, ExprError> {
    parse_inner(text, None)
}

/// Target algebra for [`PolyExpr::eval`].
pub trait Evaluator {
    type Value: Clone;
    type Error;
    fn constant(&mut self, c: &Q) -> Result<Self::Value, Self::Error>;
    fn var(&mut self, name: &str) -> Result<Self::Value, Self::Error>;
    fn add(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value, Self::Error>;
    fn mul(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value, Self::Error>;
    fn scale(&mut self, a: Self::Value, c: &Q) -> Result<Self::Value, Self::Error>;
}

impl PolyExpr {
    /// Value of an identifier-free expression.
    pub fn constant_value(&self) -> Option<Q> {
        Some(match self {
            PolyExpr::Num(n) => Q::from_integer(n.clone()),
            PolyExpr::Var(_) => return None,
            PolyExpr::Neg(a) => -a.constant_value()?,
            PolyExpr::Add(a, b) => a.constant_value()? + b.constant_value()?,
            PolyExpr::Sub(a, b) => a.constant_value()? - b.constant_value()?,
            PolyExpr::Mul(a, b) => a.constant_value()? * b.constant_value()?,
            PolyExpr::Div(a, b) => {
                let d = b.constant_value()?;
                if d.is_zero() {
                    return None;
                }
                a.constant_value()? / d
            }
            PolyExpr::Pow(a, k) => {
                let base = a.constant_value()?;
                (0..*k).fold(Q::one(), |acc, _| acc * &base)
            }
        })
    }

    pub fn identifiers(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_identifiers(&mut out);
        out
    }

    fn collect_identifiers<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            PolyExpr::Num(_) => {}
            PolyExpr::Var(v) => {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
            PolyExpr::Neg(a) | PolyExpr::Pow(a, _) => a.collect_identifiers(out),
            PolyExpr::Add(a, b) | PolyExpr::Sub(a, b) | PolyExpr::Mul(a, b) | PolyExpr::Div(a, b) => {
                a.collect_identifiers(out);
                b.collect_identifiers(out);
            }
        }
    }

    pub fn eval<E: Evaluator>(&self, ev: &mut E) -> Result<E::Value, E::Error> {
        match self {
            PolyExpr::Num(n) => ev.constant(&Q::from_integer(n.clone())),
            PolyExpr::Var(v) => ev.var(v),
            PolyExpr::Neg(a) => {
                let x = a.eval(ev)?;
                ev.scale(x, &-Q::one())
            }
            PolyExpr::Add(a, b) => {
                let (x, y) = (a.eval(ev)?, b.eval(ev)?);
                ev.add(x, y)
            }
            PolyExpr::Sub(a, b) => {
                let x = a.eval(ev)?;
                let y = b.eval(ev)?;
                let y = ev.scale(y, &-Q::one())?;
                ev.add(x, y)
            }
            PolyExpr::Mul(a, b) => {
                let (x, y) = (a.eval(ev)?, b.eval(ev)?);
                ev.mul(x, y)
            }
            PolyExpr::Div(a, b) => {
                let d = b.constant_value().expect("divisors are checked when parsing");
                let x = a.eval(ev)?;
                ev.scale(x, &(Q::one() / d))
            }
            PolyExpr::Pow(a, k) => {
                let x = a.eval(ev)?;
                let mut acc = ev.constant(&Q::one())?;
                for _ in 0..*k {
                    acc = ev.mul(acc, x.clone())?;
                }
                Ok(acc)
            }
        }
    }

    /// Polynomial in the variables `names` (in that order).
    pub fn to_poly(&self, names: &[&str]) -> Result<Poly, ExprError> {
        self.eval(&mut PolyEval { names })
    }

    fn precedence(&self) -> u8 {
        match self {
            PolyExpr::Add(..) | PolyExpr::Sub(..) => 1,
            PolyExpr::Mul(..) | PolyExpr::Div(..) => 2,
            PolyExpr::Neg(_) => 3,
            PolyExpr::Pow(..) => 4,
            PolyExpr::Num(_) | PolyExpr::Var(_) => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            PolyExpr::Num(n) => write!(f, "{n}"),
            PolyExpr::Var(v) => write!(f, "{v}"),
            PolyExpr::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 3)
            }
            PolyExpr::Add(a, b) | PolyExpr::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, "{}", if matches!(self, PolyExpr::Add(..)) { " + " } else { " - " })?;
                b.write_at(f, 2)
            }
            PolyExpr::Mul(a, b) | PolyExpr::Div(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "{}", if matches!(self, PolyExpr::Mul(..)) { "*" } else { "/" })?;
                b.write_at(f, 3)
            }
            PolyExpr::Pow(a, k) => {
                a.write_at(f, 5)?;
                write!(f, "^{k}")
            }
        }
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

struct PolyEval<'a> {
    names: &'a [&'a str],
}

impl Evaluator for PolyEval<'_> {
    type Value = Poly;
    type Error = ExprError;

    fn constant(&mut self, c: &Q) -> Result<Poly, ExprError> {
        Ok(Poly::constant(self.names.len(), c.clone()))
    }

    fn var(&mut self, name: &str) -> Result<Poly, ExprError> {
        let i = self
            .names
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| ExprError::UnknownIdentifier { name: name.to_string(), offset: 0 })?;
        Ok(Poly::var(self.names.len(), i))
    }

    fn add(&mut self, a: Poly, b: Poly) -> Result<Poly, ExprError> {
        Ok(&a + &b)
    }

    fn mul(&mut self, a: Poly, b: Poly) -> Result<Poly, ExprError> {
        Ok(&a * &b)
    }

    fn scale(&mut self, a: Poly, c: &Q) -> Result<Poly, ExprError> {
        Ok(a.scale(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn relations_parse_and_print() {
        let e = parse_poly("3*s^2 - h^2*s", &["h", "s"]).unwrap();
        assert_eq!(e.to_string(), "3*s^2 - h^2*s");
        let p = e.to_poly(&["h", "s"]).unwrap();
        assert_eq!(p.coeff(&[0, 2]), int(3));
        assert_eq!(p.coeff(&[2, 1]), int(-1));
        let e = parse_poly("t^2 - 6*h^3*t + h^6", &["h", "t"]).unwrap();
        assert_eq!(e.to_poly(&["h", "t"]).unwrap().terms().len(), 3);
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(parse_expr("h^"), Err(ExprError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_expr("h +"), Err(ExprError::Syntax { offset: 3, .. })));
        assert!(matches!(parse_expr("(h"), Err(ExprError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_expr("h $ s"), Err(ExprError::Syntax { offset: 2, .. })));
        assert_eq!(
            parse_poly("h + x", &["h"]),
            Err(ExprError::UnknownIdentifier { name: "x".into(), offset: 4 })
        );
        assert_eq!(parse_expr("h/s"), Err(ExprError::NonConstantDivisor { offset: 2 }));
        assert_eq!(parse_expr("h/(1-1)"), Err(ExprError::DivisionByZero { offset: 2 }));
    }

    #[test]
    fn rationals_and_parentheses() {
        let e = parse_poly("(7*h^3*t - h^6)/2", &["h", "t"]).unwrap();
        assert_eq!(e.to_string(), "(7*h^3*t - h^6)/2");
        let p = e.to_poly(&["h", "t"]).unwrap();
        assert_eq!(p.coeff(&[3, 1]), frac(7, 2));
        let e = parse_expr("-5/12*q").unwrap();
        assert_eq!(e.to_poly(&["q"]).unwrap().coeff(&[1]), frac(-5, 12));
        assert_eq!(parse_expr("a - (b - c)").unwrap().to_string(), "a - (b - c)");
        assert_eq!(parse_expr("(a^2)^3").unwrap().to_string(), "(a^2)^3");
        assert_eq!(parse_expr("-a^2").unwrap().to_string(), "-a^2");
        assert_eq!(parse_expr("t'4 + s_2").unwrap().identifiers(), ["t'4", "s_2"]);
    }
}
