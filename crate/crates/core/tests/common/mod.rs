//! Random instance generators and property checks shared by the acceptance
//! suite and the property tests. Each check returns `Err` with a message on
//! a counterexample and `TestCaseError::Reject` when a drawn instance does
//! not meet the property's hypotheses.

#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use reslab_core::algebra::{Field, Monomial, Polynomial, PrimeField, Ring, TermOrder};
use reslab_core::groebner::{buchberger, GroebnerBasis, Ideal};
use reslab_core::lab::{product_witness_check, verify_union_groebner};
use reslab_core::toolkit::{
    ideal_power, points_defining_ideal, product_of_factors, rational_points, symbolic_power_points,
    symbolic_power_saturation, PointSet,
};
use reslab_core::{Error, Limits};

pub type Poly = Polynomial<PrimeField>;
pub type Case = Result<(), TestCaseError>;

pub const PRIME: u64 = 101;
pub const VARS: [&str; 3] = ["x", "y", "z"];

pub fn field() -> PrimeField {
    PrimeField::new(PRIME).unwrap()
}

pub fn ring(order: TermOrder) -> Arc<Ring<PrimeField>> {
    Ring::from_names(field(), &VARS, order).unwrap()
}

pub fn arb_order() -> impl Strategy<Value = TermOrder> {
    prop_oneof![Just(TermOrder::Lex), Just(TermOrder::GrevLex)]
}

/// Exponent vectors and coefficients of a polynomial of total degree at
/// most `max_deg` with up to `max_terms` terms.
pub fn arb_terms(max_deg: u16, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u16>, u64)>> {
    let monos: Vec<Vec<u16>> = (0..=max_deg as u32)
        .flat_map(|d| Monomial::all_of_degree(VARS.len(), d))
        .map(|m| m.exponents().to_vec())
        .collect();
    proptest::collection::vec((proptest::sample::select(monos), 1..PRIME), 1..=max_terms)
}

/// Exponent vectors of a single total degree `d` (chosen in `degrees`).
pub fn arb_homogeneous_terms(
    degrees: std::ops::RangeInclusive<u32>,
    max_terms: usize,
) -> impl Strategy<Value = Vec<(Vec<u16>, u64)>> {
    degrees.prop_flat_map(move |d| {
        let monos: Vec<Vec<u16>> = Monomial::all_of_degree(VARS.len(), d)
            .into_iter()
            .map(|m| m.exponents().to_vec())
            .collect();
        proptest::collection::vec((proptest::sample::select(monos), 1..PRIME), 1..=max_terms)
    })
}

pub fn build(ring: &Arc<Ring<PrimeField>>, terms: &[(Vec<u16>, u64)]) -> Poly {
    Polynomial::from_terms(ring, terms.iter().map(|(e, c)| (Monomial::from_exponents(e), *c)))
}

pub fn build_ideal(ring: &Arc<Ring<PrimeField>>, gens: &[Vec<(Vec<u16>, u64)>]) -> Ideal<PrimeField> {
    Ideal::new(ring, gens.iter().map(|t| build(ring, t))).unwrap()
}

pub type Gens = Vec<Vec<(Vec<u16>, u64)>>;

pub fn arb_gens(max_deg: u16, max_gens: usize) -> impl Strategy<Value = Gens> {
    proptest::collection::vec(arb_terms(max_deg, 4), 1..=max_gens)
}

pub fn arb_homogeneous_gens(degrees: std::ops::RangeInclusive<u32>, max_gens: usize) -> impl Strategy<Value = Gens> {
    proptest::collection::vec(arb_homogeneous_terms(degrees, 3), 1..=max_gens)
}

/// Up to `max` distinct points of the plane over GF(7).
pub fn arb_points(max: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
    let all: Vec<Vec<u64>> = rational_points(&PrimeField::new(7).unwrap(), 2)
        .unwrap()
        .points()
        .to_vec();
    proptest::sample::subsequence(all, 1..=max)
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

/// Resource aborts say nothing about the property, so they reject the
/// instance; every other error is a failure.
pub fn lift<T>(r: Result<T, Error>) -> Result<T, TestCaseError> {
    r.map_err(|e| {
        if e.is_resource() {
            TestCaseError::reject(e.to_string())
        } else {
            fail(e.to_string())
        }
    })
}

/// Schoolbook S-polynomial, written against the public term API only.
fn naive_s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let field = *f.field();
    let (mf, cf) = f.lt().unwrap();
    let (mg, cg) = g.lt().unwrap();
    let l = mf.lcm(mg);
    let a = f.mul_term(&mf.quotient_of(&l).unwrap(), &field.inv(cf).unwrap());
    let b = g.mul_term(&mg.quotient_of(&l).unwrap(), &field.inv(cg).unwrap());
    a.checked_sub(&b).unwrap()
}

/// Schoolbook multivariate division remainder by `divisors`, in the ring's own order.
pub fn naive_remainder(f: &Poly, divisors: &[Poly]) -> Poly {
    let field = *f.field();
    let mut p = f.clone();
    let mut rem = Polynomial::zero(f.ring());
    while let Some((m, c)) = p.lt().cloned() {
        match divisors.iter().find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m))) {
            Some(g) => {
                let (gm, gc) = g.lt().unwrap();
                let q = gm.quotient_of(&m).unwrap();
                let coeff = field.div(&c, gc).unwrap();
                p = p.checked_sub(&g.mul_term(&q, &coeff)).unwrap();
            }
            None => {
                let t = Polynomial::term(f.ring(), m, c);
                rem = rem.checked_add(&t).unwrap();
                p = p.checked_sub(&t).unwrap();
            }
        }
    }
    rem
}

/// The union of Gröbner bases of block-disjoint ideals is a Gröbner basis of the sum.
pub fn union_groebner(q: &Gens, h: &Gens, o1: &TermOrder, o2: &TermOrder) -> Case {
    let r = ring(TermOrder::GrevLex);
    let limits = Limits::default();
    let holds = lift(verify_union_groebner(&build_ideal(&r, q), &build_ideal(&r, h), o1, o2, &limits))?;
    if holds {
        Ok(())
    } else {
        Err(fail("union of bases is not a Gröbner basis".into()))
    }
}

/// `f ∉ I^r` and `g ∉ J^s` imply `f(x)g(y) ∉ (I + J)^{r+s−1}`; instances
/// whose preconditions fail are rejected.
pub fn product_witness(f: &[(Vec<u16>, u64)], g: &[(Vec<u16>, u64)], i: &Gens, j: &Gens, r: u32, s: u32) -> Case {
    let ring = ring(TermOrder::GrevLex);
    let limits = Limits::default();
    let (f, g) = (build(&ring, f), build(&ring, g));
    match product_witness_check(&f, &g, &build_ideal(&ring, i), &build_ideal(&ring, j), r, s, &limits) {
        Ok((false, _)) => Ok(()),
        Ok((true, m)) => Err(fail(format!("{f} * {g} lies in the power (method {m})"))),
        Err(Error::Precondition(msg)) => Err(TestCaseError::reject(msg)),
        Err(e) => lift(Err(e)),
    }
}

/// Under the block order, the remainder of `f·g` modulo `G ∪ G′` is the
/// product of the remainders of `f` modulo `G` and `g` modulo `G′`.
pub fn remainder_factorization(
    i: &Gens,
    j: &Gens,
    f: &[(Vec<u16>, u64)],
    g: &[(Vec<u16>, u64)],
    o1: &TermOrder,
    o2: &TermOrder,
) -> Case {
    let limits = Limits::default();
    let (ra, rb) = (ring(o1.clone()), ring(o2.clone()));
    let ga = lift(buchberger(build_ideal(&ra, i).gens(), &ra, o1, &limits))?;
    let gb = lift(buchberger(build_ideal(&rb, j).gens(), &rb, o2, &limits))?;
    let product = lift(Ring::product(&[ra.as_ref(), rb.as_ref()]))?;
    let order = TermOrder::Block(vec![(3, o1.clone()), (3, o2.clone())]);
    let product = lift(product.with_order(order.clone()))?;
    let one_a = Polynomial::one(&ra);
    let one_b = Polynomial::one(&rb);
    let mut union = Vec::new();
    for e in ga.elements() {
        union.push(lift(product_of_factors(&product, &[e, &one_b]))?);
    }
    for e in gb.elements() {
        union.push(lift(product_of_factors(&product, &[&one_a, e]))?);
    }
    let basis = lift(GroebnerBasis::from_elements_unchecked(&product, &order, &union))?;
    let (f, g) = (build(&ra, f), build(&rb, g));
    let fg = lift(product_of_factors(&product, &[&f, &g]))?;
    let lhs = lift(lift(basis.normal_form(&fg))?.to_ring(&product))?;
    let nf = lift(ga.normal_form(&f))?;
    let ng = lift(gb.normal_form(&g))?;
    let rhs = lift(lift(product_of_factors(&product, &[&nf, &ng]))?.to_ring(&product))?;
    if lhs == rhs {
        Ok(())
    } else {
        Err(fail(format!("remainder {lhs} differs from product of remainders {rhs}")))
    }
}

fn point_set(points: &[Vec<u64>]) -> (Arc<Ring<PrimeField>>, PointSet<PrimeField>) {
    let f7 = PrimeField::new(7).unwrap();
    let r = Ring::from_names(f7, &VARS, TermOrder::GrevLex).unwrap();
    (r, PointSet::new(&f7, 2, points.to_vec()).unwrap())
}

/// Fat-point intersections and saturations of ordinary powers agree.
pub fn saturation_matches_points(points: &[Vec<u64>], m: u32) -> Case {
    let limits = Limits::default();
    let (r, set) = point_set(points);
    let ideal = lift(points_defining_ideal(&r, &set, &limits))?;
    let by_points = lift(symbolic_power_points(&r, &set, m, &limits))?;
    let by_saturation = lift(symbolic_power_saturation(&ideal, m, &limits))?;
    if lift(reslab_core::groebner::ideal_equal(&by_points, &by_saturation, &limits))? {
        Ok(())
    } else {
        Err(fail(format!("{by_points} != {by_saturation}")))
    }
}

/// Ordinary powers lie in symbolic powers.
pub fn ordinary_in_symbolic(points: &[Vec<u64>], m: u32) -> Case {
    let limits = Limits::default();
    let (r, set) = point_set(points);
    let ideal = lift(points_defining_ideal(&r, &set, &limits))?;
    let ordinary = lift(ideal_power(&ideal, m))?;
    let symbolic = lift(symbolic_power_points(&r, &set, m, &limits))?;
    match lift(symbolic.first_missing(&ordinary, &limits))? {
        None => Ok(()),
        Some(g) => Err(fail(format!("{g} in I^{m} but not in I^({m})"))),
    }
}

/// Every S-polynomial of a computed basis, and every input generator,
/// leaves remainder zero under schoolbook division by the basis.
pub fn buchberger_spairs(gens: &Gens, order: &TermOrder) -> Case {
    let limits = Limits::default();
    let r = ring(order.clone());
    let ideal = build_ideal(&r, gens);
    let basis = lift(buchberger(ideal.gens(), &r, order, &limits))?;
    let elems: Vec<Poly> = basis.elements().iter().map(|e| e.to_ring(&r).unwrap()).collect();
    for (a, f) in elems.iter().enumerate() {
        for g in &elems[a + 1..] {
            let s = naive_s_polynomial(f, g);
            let rem = naive_remainder(&s, &elems);
            if !rem.is_zero() {
                return Err(fail(format!("S({f}, {g}) leaves remainder {rem}")));
            }
        }
    }
    for g in ideal.gens() {
        let rem = naive_remainder(g, &elems);
        if !rem.is_zero() {
            return Err(fail(format!("generator {g} leaves remainder {rem}")));
        }
    }
    Ok(())
}
