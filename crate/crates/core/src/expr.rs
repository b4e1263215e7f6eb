//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("-" | "+") unary | power
//! power  := atom ("^" INTEGER)?
//! atom   := INTEGER | IDENT | "(" expr ")"
//! ```
//!
//! Division is only allowed by nonzero constants, which is how rationals
//! such as `3/2` are written. Evaluation is generic over [`ExprAlgebra`] so
//! the same parser serves plain polynomials and suspension elements.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Rational, RingSpec};

/// Target ring for expression evaluation.
pub trait ExprAlgebra {
    type Value: Clone;
    fn constant(&self, c: Rational) -> Self::Value;
    fn variable(&self, name: &str) -> Option<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn as_constant(&self, a: &Self::Value) -> Option<Rational>;
}

const MAX_EXPONENT: u32 = 10_000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token {
                tok,
                line: l,
                column: col,
            });
            i += 1;
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            column += i - start;
            let n: BigInt = digits.parse().expect("digits");
            out.push(Token {
                tok: Tok::Num(n),
                line: l,
                column: col,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l,
                column: col,
            });
            continue;
        }
        return Err(syntax(l, col, format!("unexpected character `{c}`")));
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a, A: ExprAlgebra> {
    toks: Vec<Token>,
    pos: usize,
    alg: &'a A,
}

impl<A: ExprAlgebra> Parser<'_, A> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<A::Value> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.alg.add(&acc, &rhs);
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.alg.sub(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<A::Value> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = self.alg.mul(&acc, &rhs);
                }
                Tok::Slash => {
                    let slash = self.bump();
                    let rhs = self.unary()?;
                    let c = self.alg.as_constant(&rhs).ok_or_else(|| {
                        syntax(slash.line, slash.column, "division by a non-constant")
                    })?;
                    if c.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    acc = self.alg.mul(&acc, &self.alg.constant(c.recip()));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<A::Value> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                let v = self.unary()?;
                Ok(self.alg.neg(&v))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<A::Value> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        let e = match &t.tok {
            Tok::Num(n) => n
                .to_u32()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| syntax(t.line, t.column, "exponent too large"))?,
            _ => {
                return Err(syntax(
                    t.line,
                    t.column,
                    "expected a non-negative integer exponent",
                ))
            }
        };
        if self.peek().tok == Tok::Caret {
            let c = self.peek();
            return Err(syntax(
                c.line,
                c.column,
                "chained exponents need parentheses",
            ));
        }
        Ok(self.pow(&base, e))
    }

    fn pow(&self, base: &A::Value, mut e: u32) -> A::Value {
        let mut result = self.alg.constant(Rational::from_integer(1.into()));
        let mut b = base.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.alg.mul(&result, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.alg.mul(&b, &b);
            }
        }
        result
    }

    fn atom(&mut self) -> Result<A::Value> {
        let t = self.bump();
        match t.tok {
            Tok::Num(n) => Ok(self.alg.constant(Rational::from_integer(n))),
            Tok::Ident(name) => self.alg.variable(&name).ok_or(Error::UnknownVariable(name)),
            Tok::LParen => {
                let v = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(syntax(close.line, close.column, "expected `)`"));
                }
                Ok(v)
            }
            Tok::End => Err(syntax(t.line, t.column, "unexpected end of input")),
            other => Err(syntax(
                t.line,
                t.column,
                format!("unexpected token {other:?}"),
            )),
        }
    }
}

/// Parses `src` and evaluates it in `alg`.
pub fn parse_with<A: ExprAlgebra>(src: &str, alg: &A) -> Result<A::Value> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, alg };
    let v = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(syntax(t.line, t.column, "trailing input"));
    }
    Ok(v)
}

/// Polynomial evaluation context over a [`RingSpec`].
pub struct PolyAlgebra<'a>(pub &'a RingSpec);

impl ExprAlgebra for PolyAlgebra<'_> {
    type Value = MultiPoly;
    fn constant(&self, c: Rational) -> MultiPoly {
        MultiPoly::constant(self.0, c)
    }
    fn variable(&self, name: &str) -> Option<MultiPoly> {
        MultiPoly::var(self.0, name).ok()
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a + b
    }
    fn sub(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a - b
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a * b
    }
    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        -a
    }
    fn as_constant(&self, a: &MultiPoly) -> Option<Rational> {
        a.constant_value()
    }
}

pub fn parse_poly(src: &str, ring: &RingSpec) -> Result<MultiPoly> {
    parse_with(src, &PolyAlgebra(ring))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> RingSpec {
        RingSpec::new(["x", "y"]).unwrap()
    }

    #[test]
    fn three_fold_function_parses() {
        let f = parse_poly("(x-1)*x*y + 1", &ring()).unwrap();
        assert_eq!(f.to_string(), "x^2*y - x*y + 1");
    }

    #[test]
    fn precedence_and_rationals() {
        let r = ring();
        assert_eq!(parse_poly("-x^2", &r).unwrap().to_string(), "-x^2");
        assert_eq!(parse_poly("2*3^2", &r).unwrap().to_string(), "18");
        assert_eq!(
            parse_poly("3/2*x - 1/3", &r).unwrap().to_string(),
            "3/2*x - 1/3"
        );
        assert_eq!(parse_poly("x - y - x", &r).unwrap().to_string(), "-y");
        assert_eq!(
            parse_poly(" ( x + y ) ^ 2 ", &r).unwrap().to_string(),
            "x^2 + 2*x*y + y^2"
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let r = ring();
        match parse_poly("x^^2", &r) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 3)),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_poly("x +\n  * y", &r) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(parse_poly("(x", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x y", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x/y", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x^2^3", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x/0", &r), Err(Error::DivisionByZero)));
        assert!(matches!(parse_poly("z + 1", &r), Err(Error::UnknownVariable(n)) if n == "z"));
    }
}
