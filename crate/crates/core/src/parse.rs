//! Recursive-descent parser for the ASCII polynomial syntax
//! (`2*u^2*v - 1/3*w`, parentheses allowed, `^` takes a non-negative integer).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn err(col: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column: col + 1,
        message: message.into(),
    }
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push((Tok::Num(text.parse().unwrap()), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(err(i, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ring: &'a Ring,
    len: usize,
}

/// Parsed value: either a rational constant (so `1/3` stays exact before the
/// field is applied) or a polynomial.
enum Val {
    Const(BigRational),
    P(Poly),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.len)
    }

    fn to_poly(&self, v: Val) -> Result<Poly> {
        match v {
            Val::P(p) => Ok(p),
            Val::Const(q) => Ok(self.ring.coeff_poly(self.ring.field().from_rational(&q)?)),
        }
    }

    fn expr(&mut self) -> Result<Val> {
        let mut neg = false;
        if self.peek() == Some(&Tok::Sym('-')) {
            self.pos += 1;
            neg = true;
        } else if self.peek() == Some(&Tok::Sym('+')) {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = self.negate(acc);
        }
        while let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek() {
            let c = *c;
            self.pos += 1;
            let rhs = self.term()?;
            acc = match (acc, rhs) {
                (Val::Const(a), Val::Const(b)) => Val::Const(if c == '+' { a + b } else { a - b }),
                (a, b) => {
                    let a = self.to_poly(a)?;
                    let b = self.to_poly(b)?;
                    Val::P(if c == '+' { &a + &b } else { &a - &b })
                }
            };
        }
        Ok(acc)
    }

    fn negate(&self, v: Val) -> Val {
        match v {
            Val::Const(q) => Val::Const(-q),
            Val::P(p) => Val::P(-&p),
        }
    }

    fn term(&mut self) -> Result<Val> {
        let mut acc = self.factor()?;
        while let Some(Tok::Sym(c @ ('*' | '/'))) = self.peek() {
            let c = *c;
            let col = self.col();
            self.pos += 1;
            let rhs = self.factor()?;
            acc = match (c, acc, rhs) {
                ('*', Val::Const(a), Val::Const(b)) => Val::Const(a * b),
                ('*', a, b) => {
                    let a = self.to_poly(a)?;
                    let b = self.to_poly(b)?;
                    Val::P(&a * &b)
                }
                ('/', _, Val::Const(b)) if b.is_zero() => return Err(err(col, "division by zero")),
                ('/', Val::Const(a), Val::Const(b)) => Val::Const(a / b),
                ('/', Val::P(a), Val::Const(b)) => {
                    let inv = self.ring.field().from_rational(&b.recip())?;
                    Val::P(a.scale(&inv))
                }
                _ => return Err(err(col, "only division by a numeric constant is allowed")),
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Val> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Sym('^')) {
            self.pos += 1;
            let col = self.col();
            let e = match self.peek() {
                Some(Tok::Num(n)) => u32::try_from(n.clone()).map_err(|_| err(col, "exponent too large"))?,
                _ => return Err(err(col, "expected a non-negative integer exponent")),
            };
            self.pos += 1;
            return Ok(match base {
                Val::Const(q) => {
                    let mut r = BigRational::one();
                    for _ in 0..e {
                        r *= &q;
                    }
                    Val::Const(r)
                }
                Val::P(p) => Val::P(p.pow(e)),
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Val> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Val::Const(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Val::P(self.ring.var(i))),
                    None => Err(err(col, format!("unknown variable `{name}`"))),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::Sym(')')) {
                    return Err(err(self.col(), "expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                let v = self.factor()?;
                Ok(self.negate(v))
            }
            Some(t) => Err(err(col, format!("unexpected token {t:?}"))),
            None => Err(err(col, "unexpected end of input")),
        }
    }
}

pub fn parse_poly(ring: &Ring, s: &str) -> Result<Poly> {
    let toks = lex(s)?;
    let mut p = Parser {
        toks,
        pos: 0,
        ring,
        len: s.chars().count(),
    };
    if p.toks.is_empty() {
        return Err(err(0, "empty polynomial"));
    }
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(p.col(), "trailing input"));
    }
    p.to_poly(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::monomial::MonomialOrder;

    fn ring() -> Ring {
        Ring::polynomial(Field::Rational, &["u", "v", "w"], MonomialOrder::GrevLex).unwrap()
    }

    #[test]
    fn malformed_power_reports_column() {
        let e = ring().parse("u^").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 1,
                column: 3,
                message: "expected a non-negative integer exponent".into()
            }
        );
    }

    #[test]
    fn unknown_variable() {
        assert!(matches!(ring().parse("u + x"), Err(Error::Parse { column: 5, .. })));
    }

    #[test]
    fn rational_coefficients_and_parentheses() {
        let r = ring();
        let p = r.parse("(u - 1/2)*(u + 1/2)").unwrap();
        assert_eq!(p, r.parse("u^2 - 1/4").unwrap());
        assert_eq!(r.parse("-(u+v)").unwrap(), r.parse("-u-v").unwrap());
        assert_eq!(r.parse("2/4*w").unwrap(), r.parse("w/2").unwrap());
    }

    #[test]
    fn non_constant_division_rejected() {
        assert!(ring().parse("u/v").is_err());
    }
}
