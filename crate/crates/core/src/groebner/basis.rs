//! Gröbner bases: S-polynomials, division, and Buchberger's algorithm.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::algebra::poly::{check_space, sub_multiple};
use crate::algebra::{Field, Monomial, Polynomial, Ring, Term, TermOrder};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A list of monic polynomials in a ring whose ambient order is the basis
/// order. Bases produced by [`buchberger`] are reduced and sorted by
/// increasing leading monomial; [`GroebnerBasis::from_elements_unchecked`]
/// makes no such promise, which is what the verifiers need.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<Ring<F>>,
    elements: Vec<Polynomial<F>>,
    masks: Vec<u64>,
}

impl<F: Field> PartialEq for GroebnerBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.order() == other.ring.order() && self.elements == other.elements
    }
}

impl<F: Field> GroebnerBasis<F> {
    /// Wraps polynomials as a basis for `order` without checking anything
    /// beyond making them monic and nonzero.
    pub fn from_elements_unchecked(
        ring: &Arc<Ring<F>>,
        order: &TermOrder,
        elements: &[Polynomial<F>],
    ) -> Result<Self> {
        let ring = ordered_ring(ring, order)?;
        let elements = elements
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.to_ring(&ring)?.monic())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble(ring, elements))
    }

    fn assemble(ring: Arc<Ring<F>>, elements: Vec<Polynomial<F>>) -> Self {
        let masks = elements
            .iter()
            .map(|g| g.leading_monomial().map_or(0, Monomial::support_mask))
            .collect();
        GroebnerBasis {
            ring,
            elements,
            masks,
        }
    }

    pub fn order(&self) -> &TermOrder {
        self.ring.order()
    }

    /// The ring with this basis' order as ambient order.
    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().filter_map(|g| g.leading_monomial())
    }

    /// True when the basis generates the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_unit())
    }

    /// Remainder of `f` on division by the basis, returned in `f`'s ring.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.normal_form_limited(f, &Limits::default())
    }

    pub fn normal_form_limited(&self, f: &Polynomial<F>, limits: &Limits) -> Result<Polynomial<F>> {
        check_space(f.ring(), &self.ring)?;
        let g = f.to_ring(&self.ring)?;
        let refs: Vec<usize> = (0..self.elements.len()).collect();
        let terms = reduce(&self.ring, g.into_terms(), &self.elements, &self.masks, &refs, limits)?;
        Polynomial::from_sorted_unchecked(&self.ring, terms).to_ring(f.ring())
    }

    pub fn reduces_to_zero(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Direct check of Buchberger's criterion: every pairwise S-polynomial
    /// has remainder zero. No pair is skipped.
    pub fn is_groebner(&self) -> Result<bool> {
        let n = self.elements.len();
        for i in 0..n {
            for j in i + 1..n {
                let s = s_poly_in(&self.ring, &self.elements[i], &self.elements[j])?;
                if !self.normal_form(&s)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Monic, and no term of any element divisible by another leading monomial.
    pub fn is_reduced(&self) -> bool {
        self.elements.iter().enumerate().all(|(i, g)| {
            g.lt().is_some_and(|(_, c)| self.ring.field().is_one(c))
                && self.elements.iter().enumerate().all(|(j, h)| {
                    i == j
                        || g.terms().iter().all(|(m, _)| {
                            !h.leading_monomial().is_some_and(|lm| lm.divides(m))
                        })
                })
        })
    }

    /// Number of monomials of degree `d` outside the leading-term ideal.
    pub fn standard_monomial_count(&self, d: u32) -> u64 {
        let lms: Vec<&Monomial> = self.leading_monomials().collect();
        Monomial::all_of_degree(self.ring.nvars(), d)
            .iter()
            .filter(|m| !lms.iter().any(|l| l.divides(m)))
            .count() as u64
    }
}

pub(crate) fn ordered_ring<F: Field>(ring: &Arc<Ring<F>>, order: &TermOrder) -> Result<Arc<Ring<F>>> {
    if ring.order() == order {
        Ok(ring.clone())
    } else {
        ring.with_order(order.clone())
    }
}

/// Full reduction of `terms` by the basis elements listed in `active`.
fn reduce<F: Field>(
    ring: &Ring<F>,
    mut p: Vec<Term<F>>,
    basis: &[Polynomial<F>],
    masks: &[u64],
    active: &[usize],
    limits: &Limits,
) -> Result<Vec<Term<F>>> {
    let field = ring.field();
    let mut rem = Vec::new();
    let mut head = 0;
    let mut steps = 0u32;
    while head < p.len() {
        let (lm, lc) = &p[head];
        let mask = lm.support_mask();
        let divisor = active.iter().copied().find(|&k| {
            masks[k] & !mask == 0 && basis[k].leading_monomial().is_some_and(|g| g.divides(lm))
        });
        match divisor {
            Some(k) => {
                let g = &basis[k];
                let (gm, gc) = g.lt().expect("basis elements are nonzero");
                let q = gm.quotient_of(lm).expect("divisibility checked");
                let c = if field.is_one(gc) {
                    lc.clone()
                } else {
                    field.div(lc, gc)?
                };
                p = sub_multiple(ring, &p[head + 1..], &c, &q, &g.terms()[1..]);
                head = 0;
                steps += 1;
                if steps.is_multiple_of(512) {
                    limits.check_deadline()?;
                }
            }
            None => {
                rem.push(p[head].clone());
                head += 1;
            }
        }
    }
    Ok(rem)
}

/// S-polynomial of two nonzero polynomials that already live in `ring`.
fn s_poly_in<F: Field>(
    ring: &Arc<Ring<F>>,
    f: &Polynomial<F>,
    g: &Polynomial<F>,
) -> Result<Polynomial<F>> {
    let field = ring.field();
    let (fm, fc) = f.lt().ok_or(Error::ZeroPolynomial("S-polynomial"))?;
    let (gm, gc) = g.lt().ok_or(Error::ZeroPolynomial("S-polynomial"))?;
    let l = fm.lcm(gm);
    let uf = fm.quotient_of(&l).expect("lcm is a multiple");
    let ug = gm.quotient_of(&l).expect("lcm is a multiple");
    let a = f.mul_term(&uf, &field.inv(fc)?);
    let terms = sub_multiple(ring, &a.terms()[1..], &field.inv(gc)?, &ug, &g.terms()[1..]);
    Ok(Polynomial::from_sorted_unchecked(ring, terms))
}

/// `(lcm/lt(f))·f/lc(f) − (lcm/lt(g))·g/lc(g)` with leading terms taken under `ord`;
/// the result lives in `f`'s ring.
pub fn s_polynomial<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    ord: &TermOrder,
) -> Result<Polynomial<F>> {
    check_space(f.ring(), g.ring())?;
    let ring = ordered_ring(f.ring(), ord)?;
    let s = s_poly_in(&ring, &f.to_ring(&ring)?, &g.to_ring(&ring)?)?;
    s.to_ring(f.ring())
}

/// Remainder of `f` modulo the basis.
pub fn normal_form<F: Field>(f: &Polynomial<F>, basis: &GroebnerBasis<F>) -> Result<Polynomial<F>> {
    basis.normal_form(f)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u32,
}

struct Builder<'a, F: Field> {
    ring: &'a Arc<Ring<F>>,
    polys: Vec<Polynomial<F>>,
    masks: Vec<u64>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<F: Field> Builder<'_, F> {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("nonzero")
    }

    /// Gebauer–Möller update: inserts polynomial `h`, discarding pairs by
    /// Buchberger's coprimality and chain criteria.
    fn update(&mut self, h: Polynomial<F>) {
        let hi = self.polys.len();
        self.masks
            .push(h.leading_monomial().map_or(0, Monomial::support_mask));
        self.polys.push(h);
        let lh = self.lm(hi).clone();

        let mut candidates: Vec<(usize, Monomial)> = self
            .active
            .iter()
            .map(|&g| (g, lh.lcm(self.lm(g))))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while !candidates.is_empty() {
            let (g1, l1) = candidates.remove(0);
            let coprime = lh.is_coprime(self.lm(g1));
            let dominated = candidates.iter().any(|(_, l2)| l2.divides(&l1))
                || kept.iter().any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                kept.push((g1, l1));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !lh.is_coprime(self.lm(*g)))
            .map(|(g, l)| Pair {
                i: g,
                j: hi,
                degree: l.degree(),
                lcm: l,
            })
            .collect();

        let polys = &self.polys;
        let lm = |i: usize| polys[i].leading_monomial().expect("nonzero");
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm) && lm(p.i).lcm(&lh) != p.lcm && lm(p.j).lcm(&lh) != p.lcm)
        });
        self.pairs.extend(new_pairs);
        self.active.retain(|&g| !lh.divides(lm(g)));
        self.active.push(hi);
    }

    fn select(&mut self, ord: &TermOrder) -> Option<Pair> {
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.degree
                .cmp(&q.degree)
                .then_with(|| ord.cmp_monomials(&p.lcm, &q.lcm))
                .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
///
/// Pairs are processed smallest lcm degree first (normal strategy) with the
/// Gebauer–Möller installation of Buchberger's criteria. Output is
/// deterministic for fixed input and order.
pub fn buchberger<F: Field>(
    gens: &[Polynomial<F>],
    ring: &Arc<Ring<F>>,
    order: &TermOrder,
    limits: &Limits,
) -> Result<GroebnerBasis<F>> {
    let ring = ordered_ring(ring, order)?;
    let mut input = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.to_ring(&ring)?.monic())
        .collect::<Result<Vec<_>>>()?;
    if let Some(u) = input.iter().find(|g| g.is_unit()) {
        return Ok(GroebnerBasis::assemble(ring.clone(), vec![u.clone()]));
    }
    input.sort_by(|a, b| {
        let (ma, mb) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
        ma.degree()
            .cmp(&mb.degree())
            .then_with(|| order.cmp_monomials(ma, mb))
    });

    let mut b = Builder {
        ring: &ring,
        polys: Vec::new(),
        masks: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in input {
        limits.check_degree(g.total_degree().unwrap_or(0))?;
        let terms = reduce(&ring, g.into_terms(), &b.polys, &b.masks, &b.active, limits)?;
        if terms.is_empty() {
            continue;
        }
        let h = Polynomial::from_sorted_unchecked(&ring, terms).monic()?;
        if h.is_unit() {
            return Ok(GroebnerBasis::assemble(ring.clone(), vec![h]));
        }
        b.update(h);
    }

    while let Some(pair) = b.select(order) {
        limits.check_deadline()?;
        limits.check_degree(pair.degree)?;
        let s = s_poly_in(b.ring, &b.polys[pair.i], &b.polys[pair.j])?;
        let terms = reduce(&ring, s.into_terms(), &b.polys, &b.masks, &b.active, limits)?;
        if terms.is_empty() {
            continue;
        }
        let h = Polynomial::from_sorted_unchecked(&ring, terms).monic()?;
        limits.check_degree(h.total_degree().unwrap_or(0))?;
        if h.is_unit() {
            return Ok(GroebnerBasis::assemble(ring.clone(), vec![h]));
        }
        b.update(h);
    }

    let Builder {
        polys,
        masks,
        active,
        ..
    } = b;
    interreduce(&ring, &polys, &masks, active, limits)
}

/// Minimal generators of the leading ideal, each tail fully reduced.
fn interreduce<F: Field>(
    ring: &Arc<Ring<F>>,
    polys: &[Polynomial<F>],
    masks: &[u64],
    mut active: Vec<usize>,
    limits: &Limits,
) -> Result<GroebnerBasis<F>> {
    let ord = ring.order();
    let lm = |i: usize| polys[i].leading_monomial().expect("nonzero");
    active.sort_by(|&a, &b| ord.cmp_monomials(lm(a), lm(b)));
    let minimal: Vec<usize> = active
        .iter()
        .copied()
        .filter(|&i| !active.iter().any(|&j| j != i && lm(j).divides(lm(i)) && (lm(j) != lm(i) || j < i)))
        .collect();
    let mut out = Vec::with_capacity(minimal.len());
    for &i in &minimal {
        let others: Vec<usize> = minimal.iter().copied().filter(|&j| j != i).collect();
        let g = &polys[i];
        let mut terms = vec![g.terms()[0].clone()];
        terms.extend(reduce(ring, g.terms()[1..].to_vec(), polys, masks, &others, limits)?);
        out.push(Polynomial::from_sorted_unchecked(ring, terms));
    }
    out.sort_by(|a, b| {
        ord.cmp_monomials(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    debug_assert!(out
        .windows(2)
        .all(|w| ord.cmp_monomials(w[0].leading_monomial().unwrap(), w[1].leading_monomial().unwrap()) == Ordering::Less));
    Ok(GroebnerBasis::assemble(ring.clone(), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, PrimeField, RationalField};

    fn ring(names: &[&str], ord: TermOrder) -> Arc<Ring<RationalField>> {
        Ring::from_names(RationalField, names, ord).unwrap()
    }

    fn polys<F: Field>(r: &Arc<Ring<F>>, src: &[&str]) -> Vec<Polynomial<F>> {
        src.iter().map(|s| parse_polynomial(r, s).unwrap()).collect()
    }

    fn gb_strings<F: Field>(gb: &GroebnerBasis<F>) -> Vec<String> {
        gb.elements().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn s_polynomial_examples() {
        let block = TermOrder::block(vec![(1, TermOrder::GrevLex), (1, TermOrder::GrevLex)]);
        let r = Ring::with_blocks(RationalField, vec!["x".into(), "y".into()], vec![1, 1], block.clone())
            .unwrap();
        let p = |s: &str| parse_polynomial(&r, s).unwrap();
        assert_eq!(s_polynomial(&p("x^2+x"), &p("y^2+y"), &block).unwrap(), p("x*y^2 - x^2*y"));
        assert_eq!(s_polynomial(&p("x^2+1"), &p("y^3+y"), &block).unwrap(), p("y^3 - x^2*y"));
        let f = p("x^2*y + y^3 + 1");
        assert!(s_polynomial(&f, &f, &block).unwrap().is_zero());
        assert!(s_polynomial(&f, &Polynomial::zero(&r), &block).is_err());
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["x", "y"], TermOrder::Lex);
        let p = |s: &str| parse_polynomial(&r, s).unwrap();
        let nf = |f: &str, g: &[&str]| {
            let gb = GroebnerBasis::from_elements_unchecked(&r, &TermOrder::Lex, &polys(&r, g)).unwrap();
            normal_form(&p(f), &gb).unwrap()
        };
        assert!(nf("x^2*y", &["x^2"]).is_zero());
        assert_eq!(nf("x*y + y^2", &["x"]), p("y^2"));
        assert_eq!(nf("x", &["x - y"]), p("y"));
    }

    #[test]
    fn buchberger_examples() {
        let lim = Limits::default();
        let r = ring(&["x", "y"], TermOrder::GrevLex);
        let gb = buchberger(&polys(&r, &["x", "y"]), &r, &TermOrder::GrevLex, &lim).unwrap();
        assert_eq!(gb_strings(&gb), vec!["y", "x"]);

        // y·x^2 − x·(xy + y^2) = −xy^2, which reduces to y^3 modulo xy + y^2
        let gb = buchberger(&polys(&r, &["x^2", "x*y + y^2"]), &r, &TermOrder::GrevLex, &lim).unwrap();
        assert_eq!(gb_strings(&gb), vec!["x*y + y^2", "x^2", "y^3"]);
        assert!(gb.is_groebner().unwrap() && gb.is_reduced());

        let lr = ring(&["x", "y"], TermOrder::Lex);
        let gb = buchberger(&polys(&lr, &["x + y", "y"]), &lr, &TermOrder::Lex, &lim).unwrap();
        assert_eq!(gb_strings(&gb), vec!["y", "x"]);
    }

    #[test]
    fn unit_ideal_and_zero_generators() {
        let r = ring(&["x", "y"], TermOrder::GrevLex);
        let lim = Limits::default();
        let gb = buchberger(&polys(&r, &["x*y - 1", "x"]), &r, &TermOrder::GrevLex, &lim).unwrap();
        assert!(gb.is_unit());
        let gb = buchberger(&polys(&r, &["0"]), &r, &TermOrder::GrevLex, &lim).unwrap();
        assert!(gb.is_empty());
    }

    #[test]
    fn degree_guard_aborts() {
        let r = ring(&["x", "y", "z"], TermOrder::GrevLex);
        let lim = Limits::default().with_degree_guard(2);
        let err = buchberger(&polys(&r, &["x^2 - y*z", "x*y - z^2"]), &r, &TermOrder::GrevLex, &lim)
            .unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn cyclic_four_over_gf32003() {
        let f = PrimeField::new(32003).unwrap();
        let r = Ring::from_names(f, &["a", "b", "c", "d"], TermOrder::GrevLex).unwrap();
        let gens = polys(
            &r,
            &["a+b+c+d", "a*b+b*c+c*d+d*a", "a*b*c+b*c*d+c*d*a+d*a*b", "a*b*c*d-1"],
        );
        let gb = buchberger(&gens, &r, &TermOrder::GrevLex, &Limits::default()).unwrap();
        assert!(gb.is_groebner().unwrap());
        assert!(gb.is_reduced());
        assert_eq!(gb.len(), 7);
        for g in &gens {
            assert!(gb.reduces_to_zero(g).unwrap());
        }
    }
}
