//! Noncommutative polynomial expressions in `x` and `y`, evaluated in Z[G].
//!
//! Grammar (standard precedence, left associative, no implicit products):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? INT)?
//! atom   := INT | 'x' | 'y' | '(' expr ')'
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::ring::RingElement;

/// Exponent cap for bases that are not `±g`; coefficients grow with the
/// exponent, so anything beyond this is rejected up front.
pub const MAX_EXPONENT: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingExpr {
    Int(BigInt),
    Sym(char),
    Neg(Box<RingExpr>),
    Add(Box<RingExpr>, Box<RingExpr>),
    Sub(Box<RingExpr>, Box<RingExpr>),
    Mul(Box<RingExpr>, Box<RingExpr>),
    Pow(Box<RingExpr>, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    Sym(char),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((pos, c)) = chars.next() {
        match c {
            c if c.is_whitespace() => {}
            '0'..='9' => {
                let mut digits = c.to_string();
                while let Some(&(_, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    digits.push(d);
                    chars.next();
                }
                out.push((pos, Tok::Int(digits)));
            }
            'x' | 'y' => out.push((pos, Tok::Sym(c))),
            '+' | '-' | '*' | '^' | '(' | ')' => out.push((pos, Tok::Op(c))),
            other => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<RingExpr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = RingExpr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = RingExpr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<RingExpr> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = RingExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<RingExpr> {
        if self.eat('-') {
            Ok(RingExpr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<RingExpr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(digits)) => {
                self.at += 1;
                let e: i64 = digits
                    .parse()
                    .map_err(|_| Error::ExponentOverflow(digits.clone()))?;
                Ok(RingExpr::Pow(Box::new(base), if negative { -e } else { e }))
            }
            _ => Err(Error::Syntax {
                pos,
                msg: "expected integer exponent".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<RingExpr> {
        match self.peek().cloned() {
            Some(Tok::Int(d)) => {
                self.at += 1;
                Ok(RingExpr::Int(d.parse().expect("digits parse")))
            }
            Some(Tok::Sym(s)) => {
                self.at += 1;
                if matches!(self.peek(), Some(Tok::Sym(_)) | Some(Tok::Int(_))) {
                    return self.err("implicit multiplication is not allowed; use `*`");
                }
                Ok(RingExpr::Sym(s))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

impl RingExpr {
    pub fn parse(text: &str) -> Result<RingExpr> {
        let mut p = Parser {
            toks: tokenize(text)?,
            at: 0,
            end: text.len(),
        };
        let e = p.expr()?;
        if p.at < p.toks.len() {
            return p.err("unexpected trailing input");
        }
        Ok(e)
    }

    pub fn eval(&self, group: &Arc<GroupTable>) -> Result<RingElement> {
        match self {
            RingExpr::Int(n) => Ok(RingElement::monomial(
                group.clone(),
                group.identity,
                n.clone(),
            )),
            RingExpr::Sym(s) => Ok(RingElement::monomial(
                group.clone(),
                group.generator(*s)?,
                BigInt::one(),
            )),
            RingExpr::Neg(e) => Ok(e.eval(group)?.neg()),
            RingExpr::Add(a, b) => a.eval(group)?.add(&b.eval(group)?),
            RingExpr::Sub(a, b) => a.eval(group)?.sub(&b.eval(group)?),
            RingExpr::Mul(a, b) => a.eval(group)?.convolve(&b.eval(group)?),
            RingExpr::Pow(a, e) => power(&a.eval(group)?, *e),
        }
    }
}

fn power(base: &RingElement, e: i64) -> Result<RingElement> {
    let group = base.group().clone();
    // ±g raised to any power stays ±g', so large or negative exponents are fine
    if let Some((g, c)) = base.as_monomial() {
        if c.abs().is_one() {
            let sign = if c.is_negative() && e.rem_euclid(2) == 1 {
                -BigInt::one()
            } else {
                BigInt::one()
            };
            return Ok(RingElement::monomial(group.clone(), group.pow(g, e), sign));
        }
    }
    if e < 0 {
        return Err(Error::Input(
            "negative exponent needs a base of the form ±g".into(),
        ));
    }
    if e as u64 > MAX_EXPONENT {
        return Err(Error::ExponentOverflow(e.to_string()));
    }
    Ok(base.pow(e as u64))
}

/// Parses `text` and reduces it to a coefficient vector over `group`.
pub fn parse_expr(text: &str, group: &Arc<GroupTable>) -> Result<RingElement> {
    RingExpr::parse(text)?.eval(group)
}
