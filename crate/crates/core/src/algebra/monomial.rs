//! Exponent vectors and term orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exp = u16;

/// A monomial as its exponent vector, one entry per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(SmallVec<[Exp; 10]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[Exp]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[Exp] {
        &self.0
    }

    #[inline]
    pub fn exponents_mut(&mut self) -> &mut [Exp] {
        &mut self.0
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Degree restricted to the variables in `range`.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.0[range].iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(self.0.iter()).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, e: u16) -> Monomial {
        Monomial(self.0.iter().map(|a| a * e).collect())
    }

    /// One bit per variable (mod 64) set when the exponent is positive; a cheap
    /// necessary condition for divisibility.
    #[inline]
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1 << (i % 64)))
    }

    /// All monomials of total degree `d` in `nvars` variables, in lex-descending order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0 as Exp; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<Exp>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left as Exp;
                out.push(Monomial::from_exponents(cur));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as Exp;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }
}

/// A multiplicative well-order on exponent vectors.
///
/// `Block` splits the variables into consecutive runs, each with its own
/// sub-order; earlier runs are compared first, so any monomial with a nonzero
/// exponent in an earlier block beats every monomial supported only in later
/// blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Lex,
    GrevLex,
    Block(Vec<(usize, TermOrder)>),
}

impl TermOrder {
    /// Product order over consecutive blocks of the given sizes.
    pub fn block(parts: Vec<(usize, TermOrder)>) -> Self {
        TermOrder::Block(parts)
    }

    /// The first `k` variables eliminated (grevlex among them) before `rest`.
    pub fn elimination(k: usize, rest_len: usize, rest: TermOrder) -> Self {
        TermOrder::Block(vec![(k, TermOrder::GrevLex), (rest_len, rest)])
    }

    /// Checks that the block sizes sum to `nvars`.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            TermOrder::Lex | TermOrder::GrevLex => Ok(()),
            TermOrder::Block(parts) => {
                let total: usize = parts.iter().map(|(n, _)| n).sum();
                if total != nvars {
                    return Err(Error::ContextMismatch(format!(
                        "block order covers {total} variables, ring has {nvars}"
                    )));
                }
                parts.iter().try_for_each(|(n, o)| o.validate(*n))
            }
        }
    }

    #[inline]
    pub fn compare(&self, a: &[Exp], b: &[Exp]) -> Ordering {
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::GrevLex => {
                let da: u32 = a.iter().map(|&e| e as u32).sum();
                let db: u32 = b.iter().map(|&e| e as u32).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {
                        for (x, y) in a.iter().zip(b.iter()).rev() {
                            if x != y {
                                // smaller exponent in the last differing variable wins
                                return y.cmp(x);
                            }
                        }
                        Ordering::Equal
                    }
                    o => o,
                }
            }
            TermOrder::Block(parts) => {
                let mut start = 0;
                for (len, sub) in parts {
                    let end = start + len;
                    match sub.compare(&a[start..end], &b[start..end]) {
                        Ordering::Equal => start = end,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
        }
    }

    #[inline]
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.compare(a.exponents(), b.exponents())
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Lex => write!(f, "lex"),
            TermOrder::GrevLex => write!(f, "grevlex"),
            TermOrder::Block(parts) => {
                write!(f, "block(")?;
                for (i, (n, o)) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{n}:{o}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Compares two monomials under `ord`, rejecting vectors of different length
/// or an order whose blocks do not cover the variables.
pub fn monomial_compare(a: &Monomial, b: &Monomial, ord: &TermOrder) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::ContextMismatch(format!(
            "monomials with {} and {} variables",
            a.nvars(),
            b.nvars()
        )));
    }
    ord.validate(a.nvars())?;
    Ok(ord.cmp_monomials(a, b))
}
