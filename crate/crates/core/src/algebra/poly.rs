//! Sparse multivariate polynomials over an exact field.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::field::Field;
use super::monomial::{Monomial, TermOrder};
use super::ring::Ring;
use crate::error::{Error, Result};

pub type Term<F> = (Monomial, <F as Field>::Elem);

/// A polynomial tied to its ring. Terms are kept strictly decreasing in the
/// ring's ambient order with no zero coefficients; the zero polynomial has no
/// terms.
pub struct Polynomial<F: Field> {
    ring: Arc<Ring<F>>,
    terms: Vec<Term<F>>,
}

impl<F: Field> Clone for Polynomial<F> {
    fn clone(&self) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.clone(),
        }
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        if !self.ring.same_space(&other.ring) || self.terms.len() != other.terms.len() {
            return false;
        }
        if self.ring.order() == other.ring.order() {
            return self.terms == other.terms;
        }
        let o = other.reordered(self.ring.order());
        self.terms == o
    }
}

impl<F: Field> Eq for Polynomial<F> {}

pub(crate) fn check_space<F: Field>(a: &Ring<F>, b: &Ring<F>) -> Result<()> {
    if a.same_space(b) {
        Ok(())
    } else {
        Err(Error::ContextMismatch(format!(
            "rings {}[{}] and {}[{}]",
            a.field().spec(),
            a.vars().join(","),
            b.field().spec(),
            b.vars().join(",")
        )))
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring<F>>, c: F::Elem) -> Self {
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![(Monomial::one(ring.nvars()), c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn one(ring: &Arc<Ring<F>>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Arc<Ring<F>>, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i), ring.field().one())
    }

    pub fn term(ring: &Arc<Ring<F>>, m: Monomial, c: F::Elem) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms: sorted, like terms combined,
    /// zeros dropped.
    pub fn from_terms(ring: &Arc<Ring<F>>, terms: impl IntoIterator<Item = Term<F>>) -> Self {
        let mut terms: Vec<Term<F>> = terms.into_iter().collect();
        for (m, _) in &terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity does not match ring");
        }
        Polynomial {
            ring: ring.clone(),
            terms: normalize_terms(ring, &mut terms),
        }
    }

    /// Terms already strictly decreasing with nonzero coefficients.
    pub(crate) fn from_sorted_unchecked(ring: &Arc<Ring<F>>, terms: Vec<Term<F>>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term<F>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    /// Leading term under the ambient order.
    pub fn lt(&self) -> Option<&Term<F>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    /// The `ord`-maximal term.
    pub fn leading_term(&self, ord: &TermOrder) -> Result<Term<F>> {
        ord.validate(self.ring.nvars())?;
        if ord == self.ring.order() {
            return self
                .terms
                .first()
                .cloned()
                .ok_or(Error::ZeroPolynomial("leading term"));
        }
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp_monomials(&a.0, &b.0))
            .cloned()
            .ok_or(Error::ZeroPolynomial("leading term"))
    }

    /// Maximal total degree of a term; `None` stands for the degree of zero
    /// (negative infinity).
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Degree vector with one entry per variable block.
    pub fn multidegree_of(ring: &Ring<F>, m: &Monomial) -> Vec<u32> {
        ring.block_ranges()
            .into_iter()
            .map(|r| m.partial_degree(r))
            .collect()
    }

    /// Homogeneous with respect to every block separately.
    pub fn is_multihomogeneous(&self) -> bool {
        let mut degs = self
            .terms
            .iter()
            .map(|(m, _)| Self::multidegree_of(&self.ring, m));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Splits into components of equal multidegree (one block = total degree).
    pub fn multihomogeneous_parts(&self) -> Vec<(Vec<u32>, Polynomial<F>)> {
        let mut parts: Vec<(Vec<u32>, Vec<Term<F>>)> = Vec::new();
        for t in &self.terms {
            let d = Self::multidegree_of(&self.ring, &t.0);
            match parts.iter_mut().find(|(e, _)| *e == d) {
                Some((_, ts)) => ts.push(t.clone()),
                None => parts.push((d, vec![t.clone()])),
            }
        }
        parts
            .into_iter()
            .map(|(d, ts)| (d, Polynomial::from_sorted_unchecked(&self.ring, ts)))
            .collect()
    }

    /// Variables whose exponent is positive in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.exponents()[i] > 0))
            .collect()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_space(&self.ring, &other.ring)?;
        let o = other.reordered(self.ring.order());
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: merge_add(&self.ring, &self.terms, &o, false),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        check_space(&self.ring, &other.ring)?;
        let o = other.reordered(self.ring.order());
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: merge_add(&self.ring, &self.terms, &o, true),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_space(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let field = self.ring.field();
        let mut prods: Vec<Term<F>> = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                prods.push((ma.mul(mb), field.mul(ca, cb)));
            }
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: normalize_terms(&self.ring, &mut prods),
        })
    }

    pub fn neg(&self) -> Self {
        let field = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field.mul(a, c)))
                .collect(),
        }
    }

    /// `c · m · self`; multiplication by a monomial preserves term order.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), field.mul(a, c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        let (_, c) = self.lt().ok_or(Error::ZeroPolynomial("leading coefficient"))?;
        if self.ring.field().is_one(c) {
            return Ok(self.clone());
        }
        let inv = self.ring.field().inv(c)?;
        Ok(self.scale(&inv))
    }

    /// The same polynomial viewed in `target`, which must be the same space;
    /// terms are re-sorted when the ambient orders differ.
    pub fn to_ring(&self, target: &Arc<Ring<F>>) -> Result<Self> {
        check_space(&self.ring, target)?;
        Ok(Polynomial {
            ring: target.clone(),
            terms: self.reordered(target.order()),
        })
    }

    fn reordered(&self, ord: &TermOrder) -> Vec<Term<F>> {
        if ord == self.ring.order() {
            return self.terms.clone();
        }
        let mut t = self.terms.clone();
        t.sort_unstable_by(|a, b| ord.cmp_monomials(&b.0, &a.0));
        t
    }

    /// Renames variables: source variable `i` becomes target variable `map[i]`.
    pub fn map_vars(&self, target: &Arc<Ring<F>>, map: &[usize]) -> Result<Self> {
        if map.len() != self.ring.nvars() || map.iter().any(|&j| j >= target.nvars()) {
            return Err(Error::ContextMismatch(format!(
                "variable map of arity {} from a ring with {} variables",
                map.len(),
                self.ring.nvars()
            )));
        }
        if self.ring.field() != target.field() {
            return Err(Error::ContextMismatch("variable map across fields".into()));
        }
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = Monomial::one(n);
            for (i, &x) in m.exponents().iter().enumerate() {
                e.exponents_mut()[map[i]] += x;
            }
            (e, c.clone())
        });
        Ok(Polynomial::from_terms(target, terms))
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        let field = self.ring.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v = field.mul(&v, &field.pow(x, e as u64));
                }
            }
            acc = field.add(&acc, &v);
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Option<Self>> {
        check_space(&self.ring, &divisor.ring)?;
        let d = divisor.to_ring(&self.ring)?;
        let (dm, dc) = d.lt().cloned().ok_or(Error::DivisionByZero)?;
        let field = self.ring.field();
        let dinv = field.inv(&dc)?;
        let mut rest = self.terms.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.first().cloned() {
            let Some(q) = dm.quotient_of(&m) else {
                return Ok(None);
            };
            let qc = field.mul(&c, &dinv);
            rest = sub_multiple(&self.ring, &rest, &qc, &q, d.terms());
            quotient.push((q, qc));
        }
        Ok(Some(Polynomial::from_sorted_unchecked(&self.ring, quotient)))
    }
}

/// Sorts decreasing, merges like terms and drops zeros.
fn normalize_terms<F: Field>(ring: &Ring<F>, terms: &mut Vec<Term<F>>) -> Vec<Term<F>> {
    let ord = ring.order();
    let field = ring.field();
    terms.sort_unstable_by(|a, b| ord.cmp_monomials(&b.0, &a.0));
    let mut out: Vec<Term<F>> = Vec::with_capacity(terms.len());
    for (m, c) in terms.drain(..) {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
            _ => out.push((m, c)),
        }
    }
    out.retain(|(_, c)| !field.is_zero(c));
    out
}

fn merge_add<F: Field>(ring: &Ring<F>, a: &[Term<F>], b: &[Term<F>], negate_b: bool) -> Vec<Term<F>> {
    let ord = ring.order();
    let field = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ord.cmp_monomials(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let c = if negate_b { field.neg(&b[j].1) } else { b[j].1.clone() };
                out.push((b[j].0.clone(), c));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    field.sub(&a[i].1, &b[j].1)
                } else {
                    field.add(&a[i].1, &b[j].1)
                };
                if !field.is_zero(&c) {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        let c = if negate_b { field.neg(&t.1) } else { t.1.clone() };
        out.push((t.0.clone(), c));
    }
    out
}

/// `a − c·m·g` for sorted term slices; the workhorse of every reduction.
pub(crate) fn sub_multiple<F: Field>(
    ring: &Ring<F>,
    a: &[Term<F>],
    c: &F::Elem,
    m: &Monomial,
    g: &[Term<F>],
) -> Vec<Term<F>> {
    let ord = ring.order();
    let field = ring.field();
    let mut out = Vec::with_capacity(a.len() + g.len());
    let mut i = 0;
    for (gm, gc) in g {
        let pm = gm.mul(m);
        let pc = field.mul(gc, c);
        loop {
            if i < a.len() {
                match ord.cmp_monomials(&a[i].0, &pm) {
                    Ordering::Greater => {
                        out.push(a[i].clone());
                        i += 1;
                        continue;
                    }
                    Ordering::Equal => {
                        let v = field.sub(&a[i].1, &pc);
                        if !field.is_zero(&v) {
                            out.push((pm, v));
                        }
                        i += 1;
                        break;
                    }
                    Ordering::Less => {}
                }
            }
            out.push((pm, field.neg(&pc)));
            break;
        }
    }
    out.extend_from_slice(&a[i..]);
    out
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<F: Field> std::ops::$tr<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            /// Panics when the operands live in different rings; use the
            /// `checked_*` form to get an error instead.
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }
        impl<F: Field> std::ops::$tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$checked(&rhs).expect("polynomial ring mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<F: Field> std::ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}

/// Free-function forms of the basic operations.
pub fn poly_add<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Polynomial<F>> {
    f.checked_add(g)
}

pub fn poly_mul<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Polynomial<F>> {
    f.checked_mul(g)
}

pub fn leading_term<F: Field>(f: &Polynomial<F>, ord: &TermOrder) -> Result<Term<F>> {
    f.leading_term(ord)
}

/// Writes a monomial as `x^2*y`; empty string for 1.
pub fn format_monomial(vars: &[String], m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (v, &e) in vars.iter().zip(m.exponents()) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

impl<F: Field> fmt::Display for Polynomial<F> {
    /// Canonical text: terms in decreasing ambient order, `^` for powers,
    /// `*` between factors, coefficients in the field's canonical form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mut coeff = field.format(c);
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = format_monomial(self.ring.vars(), m);
            if mono.is_empty() {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{coeff}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, RationalField};
    use crate::algebra::parse::parse_polynomial;
    use crate::algebra::Exp;
    use proptest::prelude::*;

    fn gf7() -> Arc<Ring<PrimeField>> {
        Ring::from_names(PrimeField::new(7).unwrap(), &["x", "y", "z"], TermOrder::GrevLex).unwrap()
    }

    fn qq() -> Arc<Ring<RationalField>> {
        Ring::from_names(RationalField, &["x", "y", "z"], TermOrder::GrevLex).unwrap()
    }

    fn p<F: Field>(r: &Arc<Ring<F>>, s: &str) -> Polynomial<F> {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn addition_examples() {
        let r = qq();
        assert_eq!(&p(&r, "x+y") + &p(&r, "x-y"), p(&r, "2*x"));
        let f = p(&r, "x^2 - 3*y*z + 1/2");
        assert_eq!(&f + &Polynomial::zero(&r), f);
        let g = gf7();
        assert!((&p(&g, "3*x") + &p(&g, "4*x")).is_zero());
    }

    #[test]
    fn multiplication_examples() {
        let r = qq();
        assert_eq!(&p(&r, "x+y") * &p(&r, "x-y"), p(&r, "x^2-y^2"));
        let g = gf7();
        assert_eq!(&p(&g, "x+3") * &p(&g, "x+5"), p(&g, "x^2+x+1"));
        let f = p(&r, "x*y - z^3");
        assert_eq!(&f * &Polynomial::one(&r), f);
    }

    #[test]
    fn context_mismatch() {
        let a = p(&gf7(), "x");
        let other = Ring::from_names(PrimeField::new(7).unwrap(), &["x", "y"], TermOrder::GrevLex)
            .unwrap();
        let b = p(&other, "x");
        assert!(matches!(a.checked_add(&b), Err(Error::ContextMismatch(_))));
        assert!(matches!(poly_mul(&a, &b), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn leading_terms() {
        let lexr = Ring::from_names(RationalField, &["x", "y"], TermOrder::Lex).unwrap();
        let (m, c) = leading_term(&p(&lexr, "x + y^2"), &TermOrder::Lex).unwrap();
        assert_eq!((m.exponents(), c), (&[1, 0][..], RationalField.from_i64(1)));

        let r = qq();
        let (m, _) = p(&r, "x^2*y + x*y*z").leading_term(&TermOrder::GrevLex).unwrap();
        assert_eq!(m.exponents(), &[2, 1, 0]);

        let bl = TermOrder::block(vec![(1, TermOrder::Lex), (1, TermOrder::Lex)]);
        let br = Ring::with_blocks(RationalField, vec!["x".into(), "y".into()], vec![1, 1], bl.clone())
            .unwrap();
        let (m, _) = p(&br, "x*y^3 + x^2").leading_term(&bl).unwrap();
        assert_eq!(m.exponents(), &[2, 0]);

        assert!(matches!(
            Polynomial::zero(&r).leading_term(&TermOrder::GrevLex),
            Err(Error::ZeroPolynomial(_))
        ));
    }

    #[test]
    fn degree_and_homogeneity() {
        let r = qq();
        let f = p(&r, "x^2*y + z^3");
        assert_eq!((f.total_degree(), f.is_homogeneous()), (Some(3), true));
        let g = p(&r, "x + y^2");
        assert_eq!((g.total_degree(), g.is_homogeneous()), (Some(2), false));
        let z = Polynomial::zero(&r);
        assert_eq!((z.total_degree(), z.is_homogeneous()), (None, true));
    }

    #[test]
    fn display_is_canonical_and_reparses() {
        let r = qq();
        let f = p(&r, "-x*y + 1/2*z^2 - 3");
        assert_eq!(f.to_string(), "-x*y + 1/2*z^2 - 3");
        assert_eq!(p(&r, &f.to_string()), f);
        let g = gf7();
        assert_eq!(p(&g, "x - y").to_string(), "x + 6*y");
    }

    #[test]
    fn exact_division() {
        let r = qq();
        let f = p(&r, "x^3 - y^3");
        let q = f.div_exact(&p(&r, "x - y")).unwrap().unwrap();
        assert_eq!(q, p(&r, "x^2 + x*y + y^2"));
        assert!(f.div_exact(&p(&r, "x + y")).unwrap().is_none());
    }

    #[test]
    fn reorder_roundtrip() {
        let r = qq();
        let lex = r.with_order(TermOrder::Lex).unwrap();
        let f = p(&r, "x*z^3 + y^4 + x^2");
        let g = f.to_ring(&lex).unwrap();
        assert_eq!(g.lt().unwrap().0.exponents(), &[2, 0, 0]);
        assert_eq!(g, f);
    }

    fn arb_poly(r: Arc<Ring<PrimeField>>) -> impl Strategy<Value = Polynomial<PrimeField>> {
        proptest::collection::vec((proptest::collection::vec(0u16..4, 3), 0u64..7), 0..6)
            .prop_map(move |ts| {
                Polynomial::from_terms(
                    &r,
                    ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e as &[Exp]), c)),
                )
            })
    }

    fn arb_qpoly(r: Arc<Ring<RationalField>>) -> impl Strategy<Value = Polynomial<RationalField>> {
        proptest::collection::vec((proptest::collection::vec(0u16..3, 3), -5i64..5, 1i64..4), 0..5)
            .prop_map(move |ts| {
                let q = RationalField;
                Polynomial::from_terms(
                    &r,
                    ts.into_iter().map(|(e, n, d)| {
                        (
                            Monomial::from_exponents(&e as &[Exp]),
                            q.div(&q.from_i64(n), &q.from_i64(d)).unwrap(),
                        )
                    }),
                )
            })
    }

    proptest! {
        #[test]
        fn ring_axioms_gf7(a in arb_poly(gf7()), b in arb_poly(gf7()), c in arb_poly(gf7())) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn ring_axioms_rationals(a in arb_qpoly(qq()), b in arb_qpoly(qq()), c in arb_qpoly(qq())) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn leading_term_is_multiplicative(a in arb_poly(gf7()), b in arb_poly(gf7())) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let f = PrimeField::new(7).unwrap();
            for ord in [TermOrder::Lex, TermOrder::GrevLex] {
                let (ma, ca) = a.leading_term(&ord).unwrap();
                let (mb, cb) = b.leading_term(&ord).unwrap();
                let (mp, cp) = (&a * &b).leading_term(&ord).unwrap();
                prop_assert_eq!(mp, ma.mul(&mb));
                prop_assert_eq!(cp, f.mul(&ca, &cb));
            }
        }

        #[test]
        fn block_leading_term_keeps_first_block(a in arb_poly(gf7()), ey in 0u16..4, ez in 0u16..4, c in 1u64..7) {
            // ring x | y,z with x in the first block
            let f = PrimeField::new(7).unwrap();
            let ord = TermOrder::block(vec![(1, TermOrder::GrevLex), (2, TermOrder::GrevLex)]);
            let r = Ring::with_blocks(f, vec!["x".into(), "y".into(), "z".into()], vec![1, 2], ord.clone()).unwrap();
            // project a onto the first block
            let fx = Polynomial::from_terms(&r, a.terms().iter().map(|(m, c)| {
                (Monomial::from_exponents(&[m.exponents()[0], 0, 0]), *c)
            }));
            prop_assume!(!fx.is_zero());
            let h = &Polynomial::term(&r, Monomial::from_exponents(&[0, ey, ez]), c)
                + &Polynomial::term(&r, Monomial::from_exponents(&[0, ez, ey + 1]), 1);
            let (lf, _) = fx.leading_term(&ord).unwrap();
            let (lp, _) = (&fx * &h).leading_term(&ord).unwrap();
            prop_assert_eq!(lp.exponents()[0], lf.exponents()[0]);
        }
    }
}
