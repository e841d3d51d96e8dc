//! Sums, products, ordinary powers and symbolic powers of ideals.

use std::sync::Arc;

use rayon::prelude::*;

use super::points::{check_point_ring, fold_intersections, point_ideal, PointSet};
use crate::algebra::poly::check_space;
use crate::algebra::{Field, Polynomial, Ring};
use crate::error::Result;
use crate::groebner::{saturate, Ideal};
use crate::limits::Limits;

/// `I + J`: the concatenated generator lists.
pub fn ideal_sum<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    check_space(i.ring(), j.ring())?;
    Ideal::new(i.ring(), i.gens().iter().chain(j.gens()).cloned())
}

/// `I·J`: all pairwise products of generators.
pub fn ideal_product<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    check_space(i.ring(), j.ring())?;
    let mut gens = Vec::with_capacity(i.gens().len() * j.gens().len());
    for f in i.gens() {
        for g in j.gens() {
            gens.push(f.checked_mul(g)?);
        }
    }
    Ideal::new(i.ring(), gens)
}

/// `I^m`: every product of `m` generators (as a multiset), with `I^0 = (1)`.
pub fn ideal_power<F: Field>(i: &Ideal<F>, m: u32) -> Result<Ideal<F>> {
    let ring = i.ring();
    if m == 0 {
        return Ok(Ideal::unit(ring));
    }
    if m == 1 {
        return Ok(i.clone());
    }
    let gens = i.gens();
    // products indexed by the smallest generator index still allowed
    let mut layer: Vec<(usize, Polynomial<F>)> =
        gens.iter().enumerate().map(|(k, g)| (k, g.clone())).collect();
    for _ in 1..m {
        let mut next = Vec::new();
        for (start, p) in &layer {
            for (k, g) in gens.iter().enumerate().skip(*start) {
                next.push((k, p.checked_mul(g)?));
            }
        }
        layer = next;
    }
    Ideal::new(ring, layer.into_iter().map(|(_, p)| p))
}

/// The fat-point ideal `⋂ P^m` over the points of `set`: the ideal of forms
/// vanishing to order at least `m` at every point. The per-point powers are
/// built concurrently and intersected left to right in input order.
pub fn symbolic_power_points<F: Field>(
    ring: &Arc<Ring<F>>,
    set: &PointSet<F>,
    m: u32,
    limits: &Limits,
) -> Result<Ideal<F>> {
    check_point_ring(ring, set)?;
    if m == 0 {
        return Ok(Ideal::unit(ring));
    }
    let powers = set
        .points()
        .par_iter()
        .map(|p| ideal_power(&point_ideal(ring, p)?, m))
        .collect::<Result<Vec<_>>>()?;
    fold_intersections(powers, limits)
}

/// `I^m : (x_0, …, x_N)^∞`, the symbolic power of the ideal of a reduced set
/// of points when the caller knows `I` to be one.
pub fn symbolic_power_saturation<F: Field>(i: &Ideal<F>, m: u32, limits: &Limits) -> Result<Ideal<F>> {
    let ring = i.ring();
    if m == 0 {
        return Ok(Ideal::unit(ring));
    }
    let irrelevant = Ideal::of_variables(ring, 0..ring.nvars());
    saturate(&ideal_power(i, m)?, &irrelevant, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, PrimeField, TermOrder};
    use crate::groebner::{graded_membership, ideal_equal};

    fn setup() -> (PrimeField, Arc<Ring<PrimeField>>) {
        let f = PrimeField::new(7).unwrap();
        (f, Ring::from_names(f, &["x", "y", "z"], TermOrder::GrevLex).unwrap())
    }

    fn ideal(r: &Arc<Ring<PrimeField>>, src: &[&str]) -> Ideal<PrimeField> {
        Ideal::new(r, src.iter().map(|s| parse_polynomial(r, s).unwrap())).unwrap()
    }

    #[test]
    fn power_examples() {
        let (_, r) = setup();
        let lim = Limits::default();
        let xy = ideal(&r, &["x", "y"]);
        assert_eq!(ideal_power(&xy, 2).unwrap().to_string(), "(x^2, x*y, y^2)");
        assert_eq!(ideal_power(&xy, 1).unwrap().gens(), xy.gens());
        assert_eq!(ideal_power(&ideal(&r, &["x"]), 3).unwrap().to_string(), "(x^3)");
        assert!(ideal_power(&xy, 0).unwrap().is_unit_ideal(&lim).unwrap());
        let p = ideal_product(&xy, &ideal(&r, &["z"])).unwrap();
        assert!(ideal_equal(&p, &ideal(&r, &["x*z", "y*z"]), &lim).unwrap());
        assert_eq!(ideal_sum(&xy, &ideal(&r, &["z", "x"])).unwrap().gens().len(), 3);
    }

    #[test]
    fn symbolic_power_examples() {
        let (f, r) = setup();
        let lim = Limits::default();
        let one = PointSet::from_integers(&f, 2, &[&[0, 0, 1]]).unwrap();
        let xy = ideal(&r, &["x", "y"]);
        for m in 1..4 {
            let s = symbolic_power_points(&r, &one, m, &lim).unwrap();
            assert!(ideal_equal(&s, &ideal_power(&xy, m).unwrap(), &lim).unwrap());
        }
        let three = PointSet::from_integers(&f, 2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let s2 = symbolic_power_points(&r, &three, 2, &lim).unwrap();
        let xyz = parse_polynomial(&r, "x*y*z").unwrap();
        assert!(s2.contains(&xyz, &lim).unwrap());
        let base = ideal(&r, &["x*y", "x*z", "y*z"]);
        let sq = ideal_power(&base, 2).unwrap();
        assert!(!graded_membership(&xyz, &sq, 3, &lim).unwrap());
        let sat = symbolic_power_saturation(&base, 2, &lim).unwrap();
        assert!(ideal_equal(&sat, &s2, &lim).unwrap());
        assert!(ideal_equal(&symbolic_power_saturation(&xy, 2, &lim).unwrap(), &ideal_power(&xy, 2).unwrap(), &lim).unwrap());
    }
}
