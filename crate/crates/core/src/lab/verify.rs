//! Verifiers for the structural facts about fiber products: Gröbner bases of
//! block-disjoint sums, product witnesses, the binomial expansion of
//! symbolic powers, and non-containment in k-fold products.

use std::sync::Arc;

use num_rational::Rational64;
use rayon::prelude::*;

use super::bounds::kfold_lower_bound;
use super::source::SymbolicSource;
use crate::algebra::{Field, Polynomial, Ring, TermOrder};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, ideal_equal, membership, GroebnerBasis, Ideal, Method};
use crate::limits::Limits;
use crate::toolkit::{
    extend_to_block, fiber_sum, ideal_power, ideal_product, ideal_sum, kfold, point_ideal,
    product_of_factors, symbolic_power_points, PointSet, ProductRingMap,
};

/// Computes Gröbner bases `G` of `q` under `ord1` and `G′` of `h` under
/// `ord2`, places them in the product ring under the block order combining
/// the two, and checks every S-pair of `G ∪ G′` by direct reduction.
/// `false` means the union failed to be a Gröbner basis.
pub fn verify_union_groebner<F: Field>(
    q: &Ideal<F>,
    h: &Ideal<F>,
    ord1: &TermOrder,
    ord2: &TermOrder,
    limits: &Limits,
) -> Result<bool> {
    let (ra, rb) = (q.ring(), h.ring());
    let g1 = buchberger(q.gens(), ra, ord1, limits)?;
    let g2 = buchberger(h.gens(), rb, ord2, limits)?;
    let product = Ring::product(&[ra.as_ref(), rb.as_ref()])?;
    let order = TermOrder::Block(vec![(ra.nvars(), ord1.clone()), (rb.nvars(), ord2.clone())]);
    let mut union = Vec::with_capacity(g1.len() + g2.len());
    for g in g1.elements() {
        union.push(product_of_factors(&product, &[g, &Polynomial::one(rb)])?);
    }
    for g in g2.elements() {
        union.push(product_of_factors(&product, &[&Polynomial::one(ra), g])?);
    }
    GroebnerBasis::from_elements_unchecked(&product, &order, &union)?.is_groebner()
}

/// Membership verdict for `f(x)·g(y)` in `(I + J)^{r+s−1}` after checking
/// `f ∉ I^r` and `g ∉ J^s`. A `true` verdict contradicts the product-witness
/// property; a failed precondition is an error.
pub fn product_witness_check<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    i: &Ideal<F>,
    j: &Ideal<F>,
    r: u32,
    s: u32,
    limits: &Limits,
) -> Result<(bool, Method)> {
    if r == 0 || s == 0 {
        return Err(Error::precondition("exponents must be at least 1"));
    }
    if membership(f, &ideal_power(i, r)?, limits)?.0 {
        return Err(Error::precondition(format!("f lies in I^{r}")));
    }
    if membership(g, &ideal_power(j, s)?, limits)?.0 {
        return Err(Error::precondition(format!("g lies in J^{s}")));
    }
    let sum = fiber_sum(i, j)?;
    let power = ideal_power(&sum, r + s - 1)?;
    let fg = product_of_factors(sum.ring(), &[f, g])?;
    membership(&fg, &power, limits)
}

/// Compares both sides of the binomial expansion of symbolic powers of a
/// fiber product of two point configurations:
/// the fat-point ideal `⋂_{P,Q} (I_P + I_Q)^h` against
/// `Σ_{k=0}^{h} I^(k)·J^(h−k)`, all in the product ring.
pub fn verify_binomial_expansion<F: Field>(
    ring_a: &Arc<Ring<F>>,
    si: &PointSet<F>,
    ring_b: &Arc<Ring<F>>,
    sj: &PointSet<F>,
    h: u32,
    limits: &Limits,
) -> Result<bool> {
    if h == 0 {
        return Err(Error::precondition("binomial expansion needs h ≥ 1"));
    }
    let product = Ring::product(&[ring_a.as_ref(), ring_b.as_ref()])?;
    let to_a = ProductRingMap::new(ring_a, &product, 0)?;
    let block_b = ring_a.block_count();
    let to_b = ProductRingMap::new(ring_b, &product, block_b)?;

    let pairs: Vec<_> = si
        .points()
        .iter()
        .flat_map(|p| sj.points().iter().map(move |q| (p, q)))
        .collect();
    let fat = pairs
        .par_iter()
        .map(|(p, q)| {
            let a = extend_to_block(&point_ideal(ring_a, p)?, &to_a)?;
            let b = extend_to_block(&point_ideal(ring_b, q)?, &to_b)?;
            ideal_power(&ideal_sum(&a, &b)?, h)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut lhs = fat[0].clone();
    for next in &fat[1..] {
        lhs = crate::groebner::intersect(&lhs, next, limits)?;
    }

    let symbolic = |ring: &Arc<Ring<F>>, set: &PointSet<F>, e: u32| -> Result<Ideal<F>> {
        if e == 0 {
            Ok(Ideal::unit(ring))
        } else {
            symbolic_power_points(ring, set, e, limits)
        }
    };
    let mut rhs = Ideal::zero(&product);
    for k in 0..=h {
        let a = extend_to_block(&symbolic(ring_a, si, k)?, &to_a)?;
        let b = extend_to_block(&symbolic(ring_b, sj, h - k)?, &to_b)?;
        rhs = ideal_sum(&rhs, &ideal_product(&a, &b)?)?;
    }
    ideal_equal(&lhs, &rhs, limits)
}

/// Result of lifting a non-containment to the k-fold fiber product.
#[derive(Clone, Debug, PartialEq)]
pub struct KfoldOutcome {
    /// The k-fold product of the witness is outside `(I^[k])^e`.
    pub noncontained: bool,
    /// The ordinary exponent `e = k(r − 1) + 1`.
    pub power: u32,
    /// The symbolic exponent `kh` the product witness lies in.
    pub symbolic: u32,
    pub method: Method,
    /// `kh / (k(r − 1) + 1)`, a lower bound for ρ(I^[k]) when `noncontained`.
    pub lower_bound: Rational64,
}

/// Given `f ∈ I^(h) \ I^r` (both checked), tests whether
/// `f ⊗ ⋯ ⊗ f` (one copy per block) lies outside `(I^[k])^{k(r−1)+1}`.
pub fn kfold_noncontainment<F: Field>(
    source: &SymbolicSource<F>,
    f: &Polynomial<F>,
    h: u32,
    r: u32,
    k: u32,
    limits: &Limits,
) -> Result<KfoldOutcome> {
    let lower_bound = kfold_lower_bound(h as i64, r as i64, k as i64)?;
    if f.is_zero() {
        return Err(Error::precondition("a non-containment witness is required"));
    }
    if !membership(f, &*source.symbolic_power(h, limits)?, limits)?.0 {
        return Err(Error::precondition(format!("witness is not in I^({h})")));
    }
    if membership(f, &*source.ordinary_power(r)?, limits)?.0 {
        return Err(Error::precondition(format!("witness lies in I^{r}")));
    }
    let fold = kfold(source.ideal(), k as usize)?;
    let power = k * (r - 1) + 1;
    let target = ideal_power(&fold, power)?;
    let copies = vec![f; k as usize];
    let product = product_of_factors(fold.ring(), &copies)?;
    let (member, method) = membership(&product, &target, limits)?;
    Ok(KfoldOutcome {
        noncontained: !member,
        power,
        symbolic: k * h,
        method,
        lower_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, PrimeField};

    fn ring(names: &[&str]) -> Arc<Ring<PrimeField>> {
        Ring::from_names(PrimeField::new(7).unwrap(), names, TermOrder::GrevLex).unwrap()
    }

    fn ideal(r: &Arc<Ring<PrimeField>>, src: &[&str]) -> Ideal<PrimeField> {
        Ideal::new(r, src.iter().map(|s| parse_polynomial(r, s).unwrap())).unwrap()
    }

    #[test]
    fn union_groebner_examples() {
        let a = ring(&["x"]);
        let b = ring(&["y"]);
        let lim = Limits::default();
        let g = TermOrder::GrevLex;
        assert!(verify_union_groebner(&ideal(&a, &["x^2 + x"]), &ideal(&b, &["y^2"]), &g, &g, &lim).unwrap());
        assert!(verify_union_groebner(&ideal(&a, &["x"]), &ideal(&b, &["y"]), &g, &g, &lim).unwrap());
    }

    #[test]
    fn product_witness_examples() {
        let a = ring(&["x"]);
        let b = ring(&["y"]);
        let lim = Limits::default();
        let x = parse_polynomial(&a, "x").unwrap();
        let y = parse_polynomial(&b, "y").unwrap();
        let (member, _) = product_witness_check(&x, &y, &ideal(&a, &["x^2"]), &ideal(&b, &["y^2"]), 1, 1, &lim).unwrap();
        assert!(!member);
        let (member, _) = product_witness_check(&x, &y, &ideal(&a, &["x^2"]), &ideal(&b, &["y^3"]), 1, 1, &lim).unwrap();
        assert!(!member);
        assert!(product_witness_check(&x, &y, &ideal(&a, &["x"]), &ideal(&b, &["y^2"]), 1, 1, &lim).is_err());
    }

    #[test]
    fn binomial_single_points() {
        let f = PrimeField::new(7).unwrap();
        let r = ring(&["x", "y", "z"]);
        let lim = Limits::default();
        let p = PointSet::from_integers(&f, 2, &[&[0, 0, 1]]).unwrap();
        let q = PointSet::from_integers(&f, 2, &[&[1, 2, 3]]).unwrap();
        for h in 1..=2 {
            assert!(verify_binomial_expansion(&r, &p, &r, &q, h, &lim).unwrap());
        }
    }

    #[test]
    fn kfold_identity_case() {
        let f = PrimeField::new(7).unwrap();
        let r = ring(&["x", "y", "z"]);
        let lim = Limits::default();
        let pts = PointSet::from_integers(&f, 2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let src = SymbolicSource::from_points(&r, pts, &lim).unwrap();
        let w = parse_polynomial(&r, "x*y*z").unwrap();
        let out = kfold_noncontainment(&src, &w, 2, 2, 1, &lim).unwrap();
        assert!(out.noncontained);
        assert_eq!(out.lower_bound, Rational64::new(1, 1));
        assert!(kfold_noncontainment(&src, &Polynomial::zero(&r), 2, 2, 1, &lim).is_err());
        assert!(kfold_noncontainment(&src, &parse_polynomial(&r, "x").unwrap(), 2, 2, 1, &lim).is_err());
    }
}
