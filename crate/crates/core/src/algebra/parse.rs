//! Polynomial expression trees and their text syntax.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['-'] term { ('+' | '-') term }
//! term   := power { ['*'] power }
//! power  := atom [ '^' INT ]
//! atom   := INT [ '/' INT ] | IDENT | '(' expr ')'
//! ```

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::Field;
use super::poly::Polynomial;
use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyExpr {
    Int(BigInt),
    Ratio(BigInt, BigInt),
    Var(String),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    pub fn eval<F: Field>(&self, ring: &Arc<Ring<F>>) -> Result<Polynomial<F>> {
        let field = ring.field();
        Ok(match self {
            PolyExpr::Int(n) => Polynomial::constant(ring, field.from_bigint(n)),
            PolyExpr::Ratio(n, d) => Polynomial::constant(ring, field.from_ratio(n, d)?),
            PolyExpr::Var(v) => {
                let i = ring.var_index(v).ok_or_else(|| Error::Parse {
                    offset: 0,
                    message: format!("unknown variable `{v}`"),
                })?;
                Polynomial::var(ring, i)
            }
            PolyExpr::Neg(a) => a.eval(ring)?.neg(),
            PolyExpr::Add(a, b) => a.eval(ring)?.checked_add(&b.eval(ring)?)?,
            PolyExpr::Sub(a, b) => a.eval(ring)?.checked_sub(&b.eval(ring)?)?,
            PolyExpr::Mul(a, b) => a.eval(ring)?.checked_mul(&b.eval(ring)?)?,
            PolyExpr::Pow(a, e) => a.eval(ring)?.pow(*e),
        })
    }

    /// Variable names mentioned anywhere in the expression.
    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            PolyExpr::Var(v) => out.push(v),
            PolyExpr::Neg(a) | PolyExpr::Pow(a, _) => a.collect_vars(out),
            PolyExpr::Add(a, b) | PolyExpr::Sub(a, b) | PolyExpr::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            PolyExpr::Int(_) | PolyExpr::Ratio(..) => {}
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            // a leading minus is only legal at the start of an expression
            PolyExpr::Add(..) | PolyExpr::Sub(..) | PolyExpr::Neg(_) => 1,
            PolyExpr::Mul(..) => 3,
            PolyExpr::Pow(..) => 4,
            PolyExpr::Ratio(..) => 3,
            PolyExpr::Int(n) if *n < BigInt::zero() => 1,
            PolyExpr::Int(_) | PolyExpr::Var(_) => 5,
        }
    }
}

fn wrap(e: &PolyExpr, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyExpr::Int(n) => write!(f, "{n}"),
            PolyExpr::Ratio(n, d) => write!(f, "{n}/{d}"),
            PolyExpr::Var(v) => write!(f, "{v}"),
            PolyExpr::Neg(a) => {
                write!(f, "-")?;
                wrap(a, 3, f)
            }
            PolyExpr::Add(a, b) => {
                wrap(a, 1, f)?;
                write!(f, " + ")?;
                wrap(b, 2, f)
            }
            PolyExpr::Sub(a, b) => {
                wrap(a, 1, f)?;
                write!(f, " - ")?;
                wrap(b, 2, f)
            }
            PolyExpr::Mul(a, b) => {
                wrap(a, 3, f)?;
                write!(f, "*")?;
                wrap(b, 4, f)
            }
            PolyExpr::Pow(a, e) => {
                wrap(a, 5, f)?;
                write!(f, "^{e}")
            }
        }
    }
}

/// Tokens shared by the standalone polynomial parser and the session parser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "`{s}`"),
            Token::Int(n) => write!(f, "`{n}`"),
            Token::Sym(c) => write!(f, "`{c}`"),
        }
    }
}

/// A token with its byte offset in the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spanned {
    pub token: Token,
    pub offset: usize,
}

/// Splits text into identifiers, integers and single-character symbols.
/// `#` starts a comment running to end of line.
pub fn tokenize(src: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '#' {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
        } else if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            let n: BigInt = src[i..end].parse().expect("digits parse");
            out.push(Spanned {
                token: Token::Int(n),
                offset: i,
            });
        } else if c.is_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            out.push(Spanned {
                token: Token::Ident(src[i..end].to_string()),
                offset: i,
            });
        } else if "+-*/^()[],;:=<>".contains(c) {
            chars.next();
            out.push(Spanned {
                token: Token::Sym(c),
                offset: i,
            });
        } else {
            return Err(Error::Parse {
                offset: i,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

/// Recursive-descent parser for [`PolyExpr`] over a token slice. Used by the
/// session parser too, which hands over its cursor.
pub struct ExprParser<'a> {
    tokens: &'a [Spanned],
    pub pos: usize,
    end_offset: usize,
    /// Identifiers that end an implicit product instead of joining it.
    keywords: &'a [&'a str],
}

impl<'a> ExprParser<'a> {
    pub fn new(tokens: &'a [Spanned], pos: usize, end_offset: usize) -> Self {
        ExprParser {
            tokens,
            pos,
            end_offset,
            keywords: &[],
        }
    }

    pub fn with_keywords(mut self, keywords: &'a [&'a str]) -> Self {
        self.keywords = keywords;
        self
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.token)
    }

    pub fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|t| t.offset)
            .unwrap_or(self.end_offset)
    }

    fn err<T>(&self, expected: &str) -> Result<T> {
        let found = match self.peek() {
            Some(t) => t.to_string(),
            None => "end of input".to_string(),
        };
        Err(Error::Parse {
            offset: self.offset(),
            message: format!("expected {expected}, found {found}"),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expr(&mut self) -> Result<PolyExpr> {
        let mut lhs = if self.eat('-') {
            PolyExpr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Some(Token::Ident(v)) => !self.keywords.contains(&v.as_str()),
            Some(Token::Int(_)) | Some(Token::Sym('(')) => true,
            _ => false,
        }
    }

    fn term(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.power()?;
        loop {
            if self.eat('*') || self.starts_atom() {
                lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> Result<PolyExpr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek() {
                Some(Token::Int(n)) => {
                    let e = u32::try_from(n.clone()).map_err(|_| Error::Parse {
                        offset: self.offset(),
                        message: "exponent too large".into(),
                    })?;
                    self.pos += 1;
                    Ok(PolyExpr::Pow(Box::new(base), e))
                }
                _ => self.err("non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<PolyExpr> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Token::Int(d)) if !d.is_zero() => {
                            self.pos += 1;
                            if d.is_one() {
                                Ok(PolyExpr::Int(n))
                            } else {
                                Ok(PolyExpr::Ratio(n, d))
                            }
                        }
                        _ => self.err("nonzero integer denominator"),
                    }
                } else {
                    Ok(PolyExpr::Int(n))
                }
            }
            Some(Token::Ident(v)) => {
                self.pos += 1;
                Ok(PolyExpr::Var(v))
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("`)`");
                }
                Ok(e)
            }
            _ => self.err("a number, variable or `(`"),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<PolyExpr> {
    let tokens = tokenize(src)?;
    let mut p = ExprParser::new(&tokens, 0, src.len());
    let e = p.expr()?;
    if p.pos != tokens.len() {
        return p.err("end of input");
    }
    Ok(e)
}

/// Parses text such as `x^2*y - 3*z + 1/2` into a polynomial of `ring`.
pub fn parse_polynomial<F: Field>(ring: &Arc<Ring<F>>, src: &str) -> Result<Polynomial<F>> {
    parse_expr(src)?.eval(ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::RationalField;
    use crate::algebra::monomial::TermOrder;

    #[test]
    fn negative_exponent_is_rejected_at_the_minus() {
        let err = parse_expr("x^-1").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                offset: 2,
                message: "expected non-negative integer exponent, found `-`".into()
            }
        );
    }

    #[test]
    fn display_reparses_to_same_tree() {
        for s in ["x - (y - z)", "-(x + y)^2*z", "2/3*x*y - 4", "(x*y)^3", "x^2^3", "x + (-y)", "-(-x)", "(-x)*y"] {
            if let Ok(e) = parse_expr(s) {
                assert_eq!(parse_expr(&e.to_string()).unwrap(), e, "{s}");
            }
        }
    }

    #[test]
    fn unknown_variable() {
        let r = Ring::from_names(RationalField, &["x"], TermOrder::GrevLex).unwrap();
        assert!(parse_polynomial(&r, "x + w").is_err());
        assert!(parse_polynomial(&r, "x $").is_err());
        assert!(parse_polynomial(&r, "1/0").is_err());
    }
}
