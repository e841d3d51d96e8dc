//! Session files: syntax tree, parser and canonical text form.
//!
//! ```text
//! session    := ring_decl { statement }
//! ring_decl  := 'ring' NAME '=' field '[' NAME { ',' NAME } ']' [ order ] ';'
//! field      := 'GF' '(' INT ')' | 'QQ'
//! order      := 'grevlex' | 'lex'
//! statement  := 'ideal' NAME '=' ideal_list ';'
//!             | 'points' NAME '=' points ';'
//!             | 'check' ideal_list 'in' ideal [ 'using' method ] ';'
//!             | 'grid' '(' NAME ',' INT ',' INT ')' [ 'prune' ] [ 'reference' RATIONAL ] ';'
//!             | 'verify' verifier ';'
//!             | 'bound' bound ';'
//! ideal      := NAME | builtin '(' args ')' | '(' poly { ',' poly } ')' | poly
//! builtin    := 'fermat' | 'points' | 'power' | 'symbolic' | 'sum' | 'product' | 'intersect'
//! ideal_list := ideal | poly { ',' poly }
//! points     := 'fermat_points' '(' INT ')' | 'allbutone' '(' ')' | 'rational' '(' ')'
//!             | point { ',' point }
//! point      := '(' poly { ':' poly } ')'
//! method     := 'groebner' | 'graded'
//! verifier   := 'union-gb' '(' ideal ',' ideal [ ',' order ',' order ] ')'
//!             | 'product-witness' '(' poly ',' poly ',' ideal ',' ideal ',' INT ',' INT ')'
//!             | 'binomial' '(' NAME ',' NAME ',' INT ')'
//!             | 'kfold' '(' NAME ',' poly ',' INT ',' INT ',' INT ')'
//! bound      := 'kfold' '(' INT ',' INT ',' INT ')'
//!             | 'rhoa-sum' '(' RATIONAL ',' RATIONAL ')'
//!             | 'rho-sum' '(' RATIONAL ',' RATIONAL ')'
//! ```
//!
//! Polynomials use the library's text syntax. `#` starts a comment.

use std::collections::HashMap;
use std::fmt;

use num_rational::Rational64;
use reslab_core::algebra::parse::{tokenize, ExprParser, Spanned, Token};
use reslab_core::algebra::{FieldSpec, PolyExpr, PrimeField, TermOrder};
use reslab_core::groebner::Method;
use reslab_core::Error;

const BUILTINS: &[&str] = &[
    "fermat", "points", "power", "symbolic", "sum", "product", "intersect", "fermat_points", "allbutone",
    "rational",
];
const KEYWORDS: &[&str] = &[
    "ring", "ideal", "points", "check", "grid", "verify", "bound", "in", "using", "prune", "reference", "GF", "QQ",
    "grevlex", "lex",
];
/// Words that end a polynomial instead of joining it as an implicit factor.
const STOP_WORDS: &[&str] = &["in", "using", "prune", "reference"];

/// Term orders a session may name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderSpec {
    GrevLex,
    Lex,
}

impl OrderSpec {
    pub fn term_order(self) -> TermOrder {
        match self {
            OrderSpec::GrevLex => TermOrder::GrevLex,
            OrderSpec::Lex => TermOrder::Lex,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "grevlex" => Some(OrderSpec::GrevLex),
            "lex" => Some(OrderSpec::Lex),
            _ => None,
        }
    }
}

impl fmt::Display for OrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderSpec::GrevLex => "grevlex",
            OrderSpec::Lex => "lex",
        })
    }
}

/// The single polynomial ring of a session.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub order: OrderSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealExpr {
    Name(String),
    Gens(Vec<PolyExpr>),
    Fermat(u32),
    Points(String),
    Power(Box<IdealExpr>, u32),
    /// Symbolic power of a bound ideal.
    Symbolic(String, u32),
    Sum(Box<IdealExpr>, Box<IdealExpr>),
    Product(Box<IdealExpr>, Box<IdealExpr>),
    Intersect(Box<IdealExpr>, Box<IdealExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointsExpr {
    List(Vec<Vec<PolyExpr>>),
    Fermat(u32),
    /// Every rational point of the plane over a finite field except one.
    AllButOne,
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyCmd {
    UnionGb {
        left: IdealExpr,
        right: IdealExpr,
        orders: Option<(OrderSpec, OrderSpec)>,
    },
    ProductWitness {
        f: PolyExpr,
        g: PolyExpr,
        i: IdealExpr,
        j: IdealExpr,
        r: u32,
        s: u32,
    },
    Binomial {
        left: String,
        right: String,
        h: u32,
    },
    Kfold {
        ideal: String,
        witness: PolyExpr,
        h: u32,
        r: u32,
        k: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundCmd {
    Kfold { h: u32, r: u32, k: u32 },
    RhoaSum(Rational64, Rational64),
    RhoSum(Rational64, Rational64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Ideal {
        name: String,
        expr: IdealExpr,
    },
    Points {
        name: String,
        expr: PointsExpr,
    },
    Check {
        lhs: IdealExpr,
        rhs: IdealExpr,
        method: Option<Method>,
    },
    Grid {
        ideal: String,
        m: u32,
        r: u32,
        prune: bool,
        reference: Option<Rational64>,
    },
    Verify(VerifyCmd),
    Bound(BoundCmd),
}

impl Statement {
    /// Bindings define names; every other statement is a command with a result.
    pub fn is_command(&self) -> bool {
        !matches!(self, Statement::Ideal { .. } | Statement::Points { .. })
    }
}

/// A parsed session: one ring, then bindings and commands in file order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Session {
    pub ring: RingDecl,
    pub statements: Vec<Statement>,
}

impl Session {
    pub fn commands(&self) -> impl Iterator<Item = &Statement> {
        self.statements.iter().filter(|s| s.is_command())
    }
}

/// A parse failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
    /// Tokens that would have been accepted, when known.
    pub expected: Vec<String>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for Diagnostic {}

fn location(src: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(src.len());
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, before[line_start..].chars().count() + 1)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Ideal,
    Points,
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Spanned>,
    pos: usize,
    ring_vars: Vec<String>,
    names: HashMap<String, Kind>,
}

type PResult<T> = Result<T, Diagnostic>;

enum Arg {
    Int(u32),
    Ideal(IdealExpr),
    Name(String),
    Poly(PolyExpr),
    Order(OrderSpec),
}

#[derive(Clone, Copy)]
enum ArgKind {
    Int,
    Ideal,
    IdealName,
    PointsName,
    Poly,
    Order,
}

impl<'a> Parser<'a> {
    fn diag_at(&self, offset: usize, message: impl Into<String>, expected: &[&str]) -> Diagnostic {
        let (line, column) = location(self.src, offset);
        Diagnostic {
            line,
            column,
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.src.len(), |t| t.offset)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.token)
    }

    fn peek_at(&self, k: usize) -> Option<&Token> {
        self.tokens.get(self.pos + k).map(|t| &t.token)
    }

    fn found(&self) -> String {
        self.peek().map_or_else(|| "end of input".to_string(), Token::to_string)
    }

    fn unexpected<T>(&self, expected: &[&str]) -> PResult<T> {
        Err(self.diag_at(self.offset(), format!("unexpected {}", self.found()), expected))
    }

    fn at_sym(&self, c: char) -> bool {
        self.peek() == Some(&Token::Sym(c))
    }

    fn at_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Token::Ident(s)) if s == w)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        let hit = self.at_sym(c);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn eat_word(&mut self, w: &str) -> bool {
        let hit = self.at_word(w);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.unexpected(&[&format!("`{c}`")])
        }
    }

    fn expect_word(&mut self, w: &str) -> PResult<()> {
        if self.eat_word(w) {
            Ok(())
        } else {
            self.unexpected(&[&format!("`{w}`")])
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, usize)> {
        match self.peek().cloned() {
            Some(Token::Ident(s)) => {
                let at = self.offset();
                self.pos += 1;
                Ok((s, at))
            }
            _ => self.unexpected(&[what]),
        }
    }

    /// `-` `word` pairs such as `union-gb`, read as one hyphenated word.
    fn hyphenated(&mut self, what: &str) -> PResult<(String, usize)> {
        let (mut word, at) = self.ident(what)?;
        while self.at_sym('-') && matches!(self.peek_at(1), Some(Token::Ident(_))) {
            self.pos += 1;
            let (next, _) = self.ident(what)?;
            word.push('-');
            word.push_str(&next);
        }
        Ok((word, at))
    }

    fn int(&mut self) -> PResult<u32> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                let v = u32::try_from(&n)
                    .map_err(|_| self.diag_at(self.offset(), format!("integer {n} is too large"), &[]))?;
                self.pos += 1;
                Ok(v)
            }
            _ => self.unexpected(&["integer"]),
        }
    }

    fn positive(&mut self) -> PResult<u32> {
        let at = self.offset();
        let v = self.int()?;
        if v == 0 {
            return Err(self.diag_at(at, "expected a positive integer, found `0`", &[]));
        }
        Ok(v)
    }

    fn rational(&mut self) -> PResult<Rational64> {
        let at = self.offset();
        let n = self.int()? as i64;
        let d = if self.eat_sym('/') { self.int()? as i64 } else { 1 };
        if d == 0 {
            return Err(self.diag_at(at, "zero denominator", &[]));
        }
        Ok(Rational64::new(n, d))
    }

    fn end_statement(&mut self) -> PResult<()> {
        self.expect_sym(';')
    }

    fn core_error(&self, e: Error) -> Diagnostic {
        match e {
            Error::Parse { offset, message } => {
                let (message, expected) = match message.split_once(", found ") {
                    Some((exp, found)) if exp.starts_with("expected ") => (
                        format!("unexpected {found}"),
                        vec![exp.trim_start_matches("expected ").to_string()],
                    ),
                    _ => (message, Vec::new()),
                };
                let (line, column) = location(self.src, offset);
                Diagnostic { line, column, message, expected }
            }
            other => self.diag_at(self.offset(), other.to_string(), &[]),
        }
    }

    fn poly(&mut self) -> PResult<PolyExpr> {
        let start = self.pos;
        let mut p = ExprParser::new(&self.tokens, self.pos, self.src.len()).with_keywords(STOP_WORDS);
        let expr = p.expr().map_err(|e| self.core_error(e))?;
        self.pos = p.pos;
        for v in expr.variables() {
            if !self.ring_vars.iter().any(|r| r == v) {
                let at = self.tokens[start..self.pos]
                    .iter()
                    .find(|t| t.token == Token::Ident(v.to_string()))
                    .map_or(self.offset(), |t| t.offset);
                let message = match self.names.get(v) {
                    Some(Kind::Points) => format!("`{v}` is a point set, not a ring variable"),
                    Some(Kind::Ideal) => format!("`{v}` is an ideal, not a ring variable"),
                    None => format!("unknown name `{v}`"),
                };
                return Err(self.diag_at(at, message, &[]));
            }
        }
        Ok(expr)
    }

    fn constant(&mut self) -> PResult<PolyExpr> {
        let at = self.offset();
        let mut p = ExprParser::new(&self.tokens, self.pos, self.src.len()).with_keywords(STOP_WORDS);
        let expr = p.expr().map_err(|e| self.core_error(e))?;
        self.pos = p.pos;
        if !expr.variables().is_empty() {
            return Err(self.diag_at(at, "point coordinates must be constants", &[]));
        }
        Ok(expr)
    }

    fn bound_name(&mut self, kind: Kind) -> PResult<String> {
        let what = match kind {
            Kind::Ideal => "ideal name",
            Kind::Points => "point-set name",
        };
        let (name, at) = self.ident(what)?;
        match self.names.get(&name) {
            Some(k) if *k == kind => Ok(name),
            Some(_) => Err(self.diag_at(at, format!("`{name}` is not a {what}"), &[])),
            None => Err(self.diag_at(at, format!("unknown name `{name}`"), &[what])),
        }
    }

    fn args(&mut self, callee: &str, at: usize, required: &[ArgKind], optional: &[ArgKind]) -> PResult<Vec<Arg>> {
        self.expect_sym('(')?;
        let total = required.len() + optional.len();
        let arity = if optional.is_empty() {
            format!("{}", required.len())
        } else {
            format!("{} or {}", required.len(), total)
        };
        let mut out = Vec::new();
        let kinds = required.iter().chain(optional);
        for (i, kind) in kinds.enumerate() {
            if i > 0 {
                if self.at_sym(')') && i >= required.len() {
                    break;
                }
                if self.at_sym(')') {
                    return Err(self.diag_at(
                        at,
                        format!("`{callee}` takes {arity} arguments, found {i}"),
                        &[],
                    ));
                }
                self.expect_sym(',')?;
            } else if self.at_sym(')') && !required.is_empty() {
                return Err(self.diag_at(at, format!("`{callee}` takes {arity} arguments, found 0"), &[]));
            }
            out.push(match kind {
                ArgKind::Int => Arg::Int(self.positive()?),
                ArgKind::Ideal => Arg::Ideal(self.ideal(false)?),
                ArgKind::IdealName => Arg::Name(self.bound_name(Kind::Ideal)?),
                ArgKind::PointsName => Arg::Name(self.bound_name(Kind::Points)?),
                ArgKind::Poly => Arg::Poly(self.poly()?),
                ArgKind::Order => {
                    let (w, wat) = self.ident("term order")?;
                    Arg::Order(
                        OrderSpec::parse(&w)
                            .ok_or_else(|| self.diag_at(wat, format!("unknown term order `{w}`"), &["grevlex", "lex"]))?,
                    )
                }
            });
        }
        if self.at_sym(',') {
            let mut depth = 0usize;
            let mut count = out.len();
            while let Some(t) = self.peek() {
                match t {
                    Token::Sym('(') => depth += 1,
                    Token::Sym(')') if depth == 0 => break,
                    Token::Sym(')') => depth -= 1,
                    Token::Sym(',') if depth == 0 => count += 1,
                    Token::Sym(';') => break,
                    _ => {}
                }
                self.pos += 1;
            }
            return Err(self.diag_at(at, format!("`{callee}` takes {arity} arguments, found {count}"), &[]));
        }
        self.expect_sym(')')?;
        Ok(out)
    }

    fn ideal(&mut self, list: bool) -> PResult<IdealExpr> {
        if let Some(Token::Ident(name)) = self.peek().cloned() {
            let at = self.offset();
            if BUILTINS.contains(&name.as_str()) && self.peek_at(1) == Some(&Token::Sym('(')) {
                self.pos += 1;
                return self.ideal_builtin(&name, at);
            }
            match self.names.get(&name) {
                Some(Kind::Ideal) => {
                    self.pos += 1;
                    return Ok(IdealExpr::Name(name));
                }
                Some(Kind::Points) => {
                    return Err(self.diag_at(at, format!("`{name}` is a point set; use points({name})"), &[]));
                }
                None => {}
            }
        }
        if self.at_sym('(') {
            let save = self.pos;
            self.pos += 1;
            let mut gens = vec![self.poly()?];
            while self.eat_sym(',') {
                gens.push(self.poly()?);
            }
            if gens.len() > 1 {
                self.expect_sym(')')?;
                return Ok(IdealExpr::Gens(gens));
            }
            self.pos = save;
        }
        let mut gens = vec![self.poly()?];
        while list && self.eat_sym(',') {
            gens.push(self.poly()?);
        }
        Ok(IdealExpr::Gens(gens))
    }

    fn ideal_builtin(&mut self, name: &str, at: usize) -> PResult<IdealExpr> {
        use ArgKind::*;
        let two = |p: &mut Self| -> PResult<(IdealExpr, IdealExpr)> {
            let mut a = p.args(name, at, &[Ideal, Ideal], &[])?.into_iter();
            match (a.next(), a.next()) {
                (Some(Arg::Ideal(x)), Some(Arg::Ideal(y))) => Ok((x, y)),
                _ => unreachable!("argument kinds follow the signature"),
            }
        };
        Ok(match name {
            "fermat" => match self.args(name, at, &[Int], &[])?.as_slice() {
                [Arg::Int(n)] => IdealExpr::Fermat(*n),
                _ => unreachable!("argument kinds follow the signature"),
            },
            "points" => match self.args(name, at, &[PointsName], &[])?.as_slice() {
                [Arg::Name(p)] => IdealExpr::Points(p.clone()),
                _ => unreachable!("argument kinds follow the signature"),
            },
            "power" => {
                let mut a = self.args(name, at, &[Ideal, Int], &[])?.into_iter();
                match (a.next(), a.next()) {
                    (Some(Arg::Ideal(i)), Some(Arg::Int(n))) => IdealExpr::Power(Box::new(i), n),
                    _ => unreachable!("argument kinds follow the signature"),
                }
            }
            "symbolic" => match self.args(name, at, &[IdealName, Int], &[])?.as_slice() {
                [Arg::Name(i), Arg::Int(n)] => IdealExpr::Symbolic(i.clone(), *n),
                _ => unreachable!("argument kinds follow the signature"),
            },
            "sum" => {
                let (a, b) = two(self)?;
                IdealExpr::Sum(Box::new(a), Box::new(b))
            }
            "product" => {
                let (a, b) = two(self)?;
                IdealExpr::Product(Box::new(a), Box::new(b))
            }
            "intersect" => {
                let (a, b) = two(self)?;
                IdealExpr::Intersect(Box::new(a), Box::new(b))
            }
            _ => return Err(self.diag_at(at, format!("`{name}` does not build an ideal"), &[])),
        })
    }

    fn points(&mut self) -> PResult<PointsExpr> {
        if let Some(Token::Ident(name)) = self.peek().cloned() {
            let at = self.offset();
            self.pos += 1;
            return match name.as_str() {
                "fermat_points" => match self.args(&name, at, &[ArgKind::Int], &[])?.as_slice() {
                    [Arg::Int(n)] => Ok(PointsExpr::Fermat(*n)),
                    _ => unreachable!("argument kinds follow the signature"),
                },
                "allbutone" => {
                    self.args(&name, at, &[], &[])?;
                    Ok(PointsExpr::AllButOne)
                }
                "rational" => {
                    self.args(&name, at, &[], &[])?;
                    Ok(PointsExpr::Rational)
                }
                _ => Err(self.diag_at(
                    at,
                    format!("unknown point constructor `{name}`"),
                    &["fermat_points", "allbutone", "rational", "`(`"],
                )),
            };
        }
        let mut list = vec![self.point()?];
        while self.eat_sym(',') {
            list.push(self.point()?);
        }
        Ok(PointsExpr::List(list))
    }

    fn point(&mut self) -> PResult<Vec<PolyExpr>> {
        let at = self.offset();
        if !self.at_sym('(') {
            return self.unexpected(&["`(`", "fermat_points", "allbutone", "rational"]);
        }
        self.pos += 1;
        let mut coords = vec![self.constant()?];
        while self.eat_sym(':') {
            coords.push(self.constant()?);
        }
        self.expect_sym(')')?;
        if coords.len() != self.ring_vars.len() {
            return Err(self.diag_at(
                at,
                format!(
                    "point has {} coordinates but the ring has {} variables",
                    coords.len(),
                    self.ring_vars.len()
                ),
                &[],
            ));
        }
        Ok(coords)
    }

    fn new_name(&mut self, kind: Kind) -> PResult<String> {
        let (name, at) = self.ident("name")?;
        if KEYWORDS.contains(&name.as_str()) || BUILTINS.contains(&name.as_str()) {
            return Err(self.diag_at(at, format!("`{name}` is reserved"), &[]));
        }
        if self.ring_vars.contains(&name) {
            return Err(self.diag_at(at, format!("`{name}` is a ring variable"), &[]));
        }
        if self.names.contains_key(&name) {
            return Err(self.diag_at(at, format!("`{name}` is already bound"), &[]));
        }
        self.names.insert(name.clone(), kind);
        Ok(name)
    }

    fn ring(&mut self) -> PResult<RingDecl> {
        if self.tokens.is_empty() {
            return Err(self.diag_at(0, "empty session", &["`ring`"]));
        }
        self.expect_word("ring")?;
        let (name, _) = self.ident("ring name")?;
        self.expect_sym('=')?;
        let (fname, fat) = self.ident("field")?;
        let field = match fname.as_str() {
            "QQ" => FieldSpec::Rationals,
            "GF" => {
                self.expect_sym('(')?;
                let pat = self.offset();
                let p = match self.peek().cloned() {
                    Some(Token::Int(n)) => {
                        self.pos += 1;
                        u64::try_from(&n).map_err(|_| self.diag_at(pat, "modulus too large", &[]))?
                    }
                    _ => return self.unexpected(&["prime modulus"]),
                };
                PrimeField::new(p).map_err(|e| self.diag_at(pat, e.to_string(), &[]))?;
                self.expect_sym(')')?;
                FieldSpec::Prime(p)
            }
            _ => return Err(self.diag_at(fat, format!("unknown field `{fname}`"), &["GF", "QQ"])),
        };
        self.expect_sym('[')?;
        let mut vars = Vec::new();
        loop {
            let (v, at) = self.ident("variable name")?;
            if KEYWORDS.contains(&v.as_str()) || BUILTINS.contains(&v.as_str()) {
                return Err(self.diag_at(at, format!("`{v}` is reserved"), &[]));
            }
            if vars.contains(&v) {
                return Err(self.diag_at(at, format!("variable `{v}` repeated"), &[]));
            }
            vars.push(v);
            if !self.eat_sym(',') {
                break;
            }
        }
        self.expect_sym(']')?;
        let order = if let Some(Token::Ident(w)) = self.peek().cloned() {
            match OrderSpec::parse(&w) {
                Some(o) => {
                    self.pos += 1;
                    o
                }
                None => return self.unexpected(&["grevlex", "lex", "`;`"]),
            }
        } else {
            OrderSpec::GrevLex
        };
        self.end_statement()?;
        self.ring_vars = vars.clone();
        Ok(RingDecl { name, field, vars, order })
    }

    fn statement(&mut self) -> PResult<Statement> {
        let (word, at) = self.ident("statement")?;
        let stmt = match word.as_str() {
            "ring" => return Err(self.diag_at(at, "a session declares exactly one ring", &[])),
            "ideal" => {
                let name = self.new_name(Kind::Ideal)?;
                self.expect_sym('=')?;
                // bind only after the right side, so it cannot refer to itself
                self.names.remove(&name);
                let expr = self.ideal(true)?;
                self.names.insert(name.clone(), Kind::Ideal);
                Statement::Ideal { name, expr }
            }
            "points" => {
                let name = self.new_name(Kind::Points)?;
                self.expect_sym('=')?;
                self.names.remove(&name);
                let expr = self.points()?;
                self.names.insert(name.clone(), Kind::Points);
                Statement::Points { name, expr }
            }
            "check" => {
                let lhs = self.ideal(true)?;
                self.expect_word("in")?;
                let rhs = self.ideal(false)?;
                let method = if self.eat_word("using") {
                    let (m, mat) = self.ident("method")?;
                    Some(match m.as_str() {
                        "groebner" => Method::Groebner,
                        "graded" => Method::GradedLinearAlgebra,
                        _ => return Err(self.diag_at(mat, format!("unknown method `{m}`"), &["groebner", "graded"])),
                    })
                } else {
                    None
                };
                Statement::Check { lhs, rhs, method }
            }
            "grid" => {
                use ArgKind::*;
                let args = self.args("grid", at, &[IdealName, Int, Int], &[])?;
                let (ideal, m, r) = match args.as_slice() {
                    [Arg::Name(i), Arg::Int(m), Arg::Int(r)] => (i.clone(), *m, *r),
                    _ => unreachable!("argument kinds follow the signature"),
                };
                let prune = self.eat_word("prune");
                let reference = if self.eat_word("reference") {
                    Some(self.rational()?)
                } else {
                    None
                };
                Statement::Grid { ideal, m, r, prune, reference }
            }
            "verify" => Statement::Verify(self.verify()?),
            "bound" => Statement::Bound(self.bound()?),
            _ => {
                return Err(self.diag_at(
                    at,
                    format!("unknown statement `{word}`"),
                    &["ideal", "points", "check", "grid", "verify", "bound"],
                ))
            }
        };
        self.end_statement()?;
        Ok(stmt)
    }

    fn verify(&mut self) -> PResult<VerifyCmd> {
        use ArgKind::*;
        let (name, at) = self.hyphenated("verifier")?;
        let args = match name.as_str() {
            "union-gb" => self.args(&name, at, &[Ideal, Ideal], &[Order, Order])?,
            "product-witness" => self.args(&name, at, &[Poly, Poly, Ideal, Ideal, Int, Int], &[])?,
            "binomial" => self.args(&name, at, &[PointsName, PointsName, Int], &[])?,
            "kfold" => self.args(&name, at, &[IdealName, Poly, Int, Int, Int], &[])?,
            _ => {
                return Err(self.diag_at(
                    at,
                    format!("unknown verifier `{name}`"),
                    &["union-gb", "product-witness", "binomial", "kfold"],
                ))
            }
        };
        let mut it = args.into_iter();
        let mut next = || it.next().expect("argument count follows the signature");
        let int = |a: Arg| match a {
            Arg::Int(n) => n,
            _ => unreachable!("argument kinds follow the signature"),
        };
        let ideal = |a: Arg| match a {
            Arg::Ideal(i) => i,
            _ => unreachable!("argument kinds follow the signature"),
        };
        let poly = |a: Arg| match a {
            Arg::Poly(p) => p,
            _ => unreachable!("argument kinds follow the signature"),
        };
        let name_of = |a: Arg| match a {
            Arg::Name(n) => n,
            _ => unreachable!("argument kinds follow the signature"),
        };
        Ok(match name.as_str() {
            "union-gb" => {
                let (left, right) = (ideal(next()), ideal(next()));
                let rest: Vec<Arg> = it.collect();
                let orders = match rest.as_slice() {
                    [Arg::Order(a), Arg::Order(b)] => Some((*a, *b)),
                    [] => None,
                    _ => return Err(self.diag_at(at, "`union-gb` takes 2 or 4 arguments, found 3", &[])),
                };
                VerifyCmd::UnionGb { left, right, orders }
            }
            "product-witness" => VerifyCmd::ProductWitness {
                f: poly(next()),
                g: poly(next()),
                i: ideal(next()),
                j: ideal(next()),
                r: int(next()),
                s: int(next()),
            },
            "binomial" => VerifyCmd::Binomial {
                left: name_of(next()),
                right: name_of(next()),
                h: int(next()),
            },
            _ => VerifyCmd::Kfold {
                ideal: name_of(next()),
                witness: poly(next()),
                h: int(next()),
                r: int(next()),
                k: int(next()),
            },
        })
    }

    fn bound(&mut self) -> PResult<BoundCmd> {
        let (name, at) = self.hyphenated("bound")?;
        match name.as_str() {
            "kfold" => match self.args(&name, at, &[ArgKind::Int, ArgKind::Int, ArgKind::Int], &[])?.as_slice() {
                [Arg::Int(h), Arg::Int(r), Arg::Int(k)] => Ok(BoundCmd::Kfold { h: *h, r: *r, k: *k }),
                _ => unreachable!("argument kinds follow the signature"),
            },
            "rhoa-sum" | "rho-sum" => {
                self.expect_sym('(')?;
                let a = self.rational()?;
                if self.at_sym(')') {
                    return Err(self.diag_at(at, format!("`{name}` takes 2 arguments, found 1"), &[]));
                }
                self.expect_sym(',')?;
                let b = self.rational()?;
                if self.at_sym(',') {
                    return Err(self.diag_at(at, format!("`{name}` takes 2 arguments, found more"), &[]));
                }
                self.expect_sym(')')?;
                Ok(if name == "rhoa-sum" {
                    BoundCmd::RhoaSum(a, b)
                } else {
                    BoundCmd::RhoSum(a, b)
                })
            }
            _ => Err(self.diag_at(at, format!("unknown bound `{name}`"), &["kfold", "rhoa-sum", "rho-sum"])),
        }
    }
}

/// Parses session text; the first problem found is reported with its location.
pub fn parse_session(src: &str) -> Result<Session, Diagnostic> {
    let tokens = tokenize(src).map_err(|e| match e {
        Error::Parse { offset, message } => {
            let (line, column) = location(src, offset);
            Diagnostic { line, column, message, expected: Vec::new() }
        }
        other => Diagnostic { line: 1, column: 1, message: other.to_string(), expected: Vec::new() },
    })?;
    let mut p = Parser {
        src,
        tokens,
        pos: 0,
        ring_vars: Vec::new(),
        names: HashMap::new(),
    };
    let ring = p.ring()?;
    let mut statements = Vec::new();
    while p.pos < p.tokens.len() {
        statements.push(p.statement()?);
    }
    Ok(Session { ring, statements })
}

/// Parses a field name as written in a ring declaration: `GF(p)` or `QQ`.
pub fn parse_field(text: &str) -> Result<FieldSpec, String> {
    let t = text.trim();
    if t == "QQ" {
        return Ok(FieldSpec::Rationals);
    }
    let p = t
        .strip_prefix("GF(")
        .and_then(|s| s.strip_suffix(')'))
        .and_then(|s| s.trim().parse::<u64>().ok())
        .ok_or_else(|| format!("expected GF(p) or QQ, found `{t}`"))?;
    PrimeField::new(p).map_err(|e| e.to_string())?;
    Ok(FieldSpec::Prime(p))
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T], sep: &str) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for IdealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealExpr::Name(n) => f.write_str(n),
            IdealExpr::Gens(g) => {
                f.write_str("(")?;
                write_list(f, g, ", ")?;
                f.write_str(")")
            }
            IdealExpr::Fermat(n) => write!(f, "fermat({n})"),
            IdealExpr::Points(p) => write!(f, "points({p})"),
            IdealExpr::Power(i, n) => write!(f, "power({i}, {n})"),
            IdealExpr::Symbolic(i, n) => write!(f, "symbolic({i}, {n})"),
            IdealExpr::Sum(a, b) => write!(f, "sum({a}, {b})"),
            IdealExpr::Product(a, b) => write!(f, "product({a}, {b})"),
            IdealExpr::Intersect(a, b) => write!(f, "intersect({a}, {b})"),
        }
    }
}

impl fmt::Display for PointsExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointsExpr::List(pts) => {
                for (i, p) in pts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str("(")?;
                    write_list(f, p, ":")?;
                    f.write_str(")")?;
                }
                Ok(())
            }
            PointsExpr::Fermat(n) => write!(f, "fermat_points({n})"),
            PointsExpr::AllButOne => f.write_str("allbutone()"),
            PointsExpr::Rational => f.write_str("rational()"),
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Ideal { name, expr } => write!(f, "ideal {name} = {expr};"),
            Statement::Points { name, expr } => write!(f, "points {name} = {expr};"),
            Statement::Check { lhs, rhs, method } => {
                write!(f, "check {lhs} in {rhs}")?;
                if let Some(m) = method {
                    write!(f, " using {m}")?;
                }
                f.write_str(";")
            }
            Statement::Grid { ideal, m, r, prune, reference } => {
                write!(f, "grid({ideal}, {m}, {r})")?;
                if *prune {
                    f.write_str(" prune")?;
                }
                if let Some(q) = reference {
                    write!(f, " reference {q}")?;
                }
                f.write_str(";")
            }
            Statement::Verify(v) => {
                f.write_str("verify ")?;
                match v {
                    VerifyCmd::UnionGb { left, right, orders } => {
                        write!(f, "union-gb({left}, {right}")?;
                        if let Some((a, b)) = orders {
                            write!(f, ", {a}, {b}")?;
                        }
                        f.write_str(")")?;
                    }
                    VerifyCmd::ProductWitness { f: p, g, i, j, r, s } => {
                        write!(f, "product-witness({p}, {g}, {i}, {j}, {r}, {s})")?
                    }
                    VerifyCmd::Binomial { left, right, h } => write!(f, "binomial({left}, {right}, {h})")?,
                    VerifyCmd::Kfold { ideal, witness, h, r, k } => {
                        write!(f, "kfold({ideal}, {witness}, {h}, {r}, {k})")?
                    }
                }
                f.write_str(";")
            }
            Statement::Bound(b) => match b {
                BoundCmd::Kfold { h, r, k } => write!(f, "bound kfold({h}, {r}, {k});"),
                BoundCmd::RhoaSum(a, b) => write!(f, "bound rhoa-sum({a}, {b});"),
                BoundCmd::RhoSum(a, b) => write!(f, "bound rho-sum({a}, {b});"),
            },
        }
    }
}

impl fmt::Display for RingDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring {} = {}[{}] {};", self.name, self.field, self.vars.join(", "), self.order)
    }
}

impl fmt::Display for Session {
    /// Canonical text: one statement per line. Parsing it gives back an equal session.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.ring)?;
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FERMAT: &str = "ring R = GF(7)[x,y,z] grevlex; ideal I = fermat(3); check symbolic(I,3) in power(I,2);";

    #[test]
    fn fermat_session() {
        let s = parse_session(FERMAT).unwrap();
        assert_eq!(s.ring.field, FieldSpec::Prime(7));
        assert_eq!(s.commands().count(), 1);
        assert_eq!(
            s.statements[1],
            Statement::Check {
                lhs: IdealExpr::Symbolic("I".into(), 3),
                rhs: IdealExpr::Power(Box::new(IdealExpr::Name("I".into())), 2),
                method: None,
            }
        );
        let echo = s.to_string();
        assert_eq!(parse_session(&echo).unwrap(), s);
    }

    #[test]
    fn empty_session() {
        let d = parse_session("  # nothing\n").unwrap_err();
        assert!(d.message.contains("empty session"));
        assert_eq!((d.line, d.column), (1, 1));
    }

    #[test]
    fn negative_exponent() {
        let d = parse_session("ring R = QQ[x];\nideal I = x^-1;").unwrap_err();
        assert_eq!((d.line, d.column), (2, 13));
        assert!(d.expected.iter().any(|e| e.contains("exponent")), "{d}");
    }

    #[test]
    fn names_and_arity() {
        let d = parse_session("ring R = QQ[x,y];\ncheck J in (x);").unwrap_err();
        assert_eq!((d.line, d.column, d.message.as_str()), (2, 7, "unknown name `J`"));
        let d = parse_session("ring R = QQ[x,y];\nideal I = power((x), 2, 3);").unwrap_err();
        assert_eq!((d.line, d.column), (2, 11));
        assert!(d.message.contains("takes 2 arguments, found 3"), "{d}");
        let d = parse_session("ring R = QQ[x,y];\nideal I = fermat();").unwrap_err();
        assert!(d.message.contains("takes 1 arguments, found 0"), "{d}");
        let d = parse_session("ring R = QQ[x,y]; ring S = QQ[x];").unwrap_err();
        assert!(d.message.contains("exactly one ring"));
        let d = parse_session("ring R = GF(8)[x];").unwrap_err();
        assert!(d.message.contains("not prime"));
        let d = parse_session("ring R = QQ[x,y]; ideal x = (y);").unwrap_err();
        assert!(d.message.contains("ring variable"));
    }

    #[test]
    fn all_statement_forms_round_trip() {
        let src = "ring R = GF(7)[x, y, z];
            points P = (1:0:0), (0:1:0), (0:0:1);
            points Q = (1:-1:2);
            points F = fermat_points(3);
            ideal I = points(P);
            ideal J = x*y, y*z - 1/2*x^2;
            ideal K = sum(intersect(I, J), product((x, y), power(J, 2)));
            check x*y*z in power(I, 2) using graded;
            check symbolic(I, 2) in I using groebner;
            grid(I, 3, 2) prune reference 3/2;
            verify union-gb(I, (x), lex, grevlex);
            verify union-gb((x^2 + x), (y^2));
            verify product-witness(x, y, (x^2), (y^2), 1, 1);
            verify binomial(P, Q, 2);
            verify kfold(I, x*y*z, 2, 2, 1);
            bound kfold(3, 2, 4);
            bound rhoa-sum(4/3, 4/3);
            bound rho-sum(3/2, 3/2);";
        let s = parse_session(src).unwrap();
        assert_eq!(s.commands().count(), 11);
        let echo = s.to_string();
        assert_eq!(parse_session(&echo).unwrap(), s, "{echo}");
        assert_eq!(parse_session(&echo).unwrap().to_string(), echo);
    }

    #[test]
    fn single_generator_forms() {
        let s = parse_session("ring R = QQ[x, y]; ideal I = (x + y)*x; ideal J = (x);").unwrap();
        let Statement::Ideal { expr, .. } = &s.statements[0] else { panic!() };
        assert_eq!(expr.to_string(), "((x + y)*x)");
        assert_eq!(parse_session(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn diagnostics_have_positions() {
        for bad in ["ring R = QQ[x]; ideal I = (x", "ring R = QQ[x]; grid(I, 2, 2);", "ring R = QQ[x] lexx;", "ring"] {
            let d = parse_session(bad).unwrap_err();
            assert!(d.line >= 1 && d.column >= 1, "{bad}: {d}");
        }
    }
}
