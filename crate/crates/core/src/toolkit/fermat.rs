//! The Fermat family of point configurations in the projective plane.

use std::sync::Arc;

use super::points::PointSet;
use crate::algebra::{find_root_of_unity, Field, Monomial, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::groebner::Ideal;

fn check_fermat_field<F: Field>(field: &F, n: u32) -> Result<F::Elem> {
    if n == 0 {
        return Err(Error::precondition("Fermat configuration needs n ≥ 1"));
    }
    if field.characteristic() == 2 {
        return Err(Error::precondition("Fermat configuration needs characteristic ≠ 2"));
    }
    find_root_of_unity(field, n)
}

/// `(x(yⁿ − zⁿ), y(zⁿ − xⁿ), z(xⁿ − yⁿ))` in a three-variable ring. The field
/// must have characteristic other than 2 and contain `n` distinct `n`-th
/// roots of unity.
pub fn fermat_ideal<F: Field>(ring: &Arc<Ring<F>>, n: u32) -> Result<Ideal<F>> {
    if ring.nvars() != 3 {
        return Err(Error::ContextMismatch(format!(
            "Fermat ideal needs 3 variables, ring has {}",
            ring.nvars()
        )));
    }
    check_fermat_field(ring.field(), n)?;
    let field = ring.field();
    let e = n as u16;
    let pow = |i: usize| {
        let mut m = Monomial::one(3);
        m.exponents_mut()[i] = e;
        Polynomial::term(ring, m, field.one())
    };
    let var = |i: usize| Polynomial::var(ring, i);
    let gens = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
        .into_iter()
        .map(|(a, b, c)| &var(a) * &(&pow(b) - &pow(c)));
    Ideal::new(ring, gens)
}

/// The `n² + 3` points cut out by the Fermat ideal: the three coordinate
/// points and `(1 : ζᵃ : ζᵇ)` for `0 ≤ a, b < n`, with `ζ` the smallest
/// primitive `n`-th root of unity.
pub fn fermat_points<F: Field>(field: &F, n: u32) -> Result<PointSet<F>> {
    let zeta = check_fermat_field(field, n)?;
    let (zero, one) = (field.zero(), field.one());
    let roots: Vec<F::Elem> = (0..n).map(|a| field.pow(&zeta, a as u64)).collect();
    let mut points = vec![
        vec![one.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), one.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), one.clone()],
    ];
    for a in &roots {
        for b in &roots {
            points.push(vec![one.clone(), a.clone(), b.clone()]);
        }
    }
    PointSet::new(field, 2, points)
}

/// `(x³ − y³)(y³ − z³)(z³ − x³)` generalised to exponent `n`: a form of
/// degree `3n` vanishing to order 3 at every Fermat point, the classical
/// element outside the square of the Fermat ideal.
pub fn fermat_witness<F: Field>(ring: &Arc<Ring<F>>, n: u32) -> Result<Polynomial<F>> {
    if ring.nvars() != 3 {
        return Err(Error::ContextMismatch("Fermat witness needs 3 variables".into()));
    }
    let e = n as u16;
    let pow = |i: usize| {
        let mut m = Monomial::one(3);
        m.exponents_mut()[i] = e;
        Polynomial::term(ring, m, ring.field().one())
    };
    Ok(&(&(&pow(0) - &pow(1)) * &(&pow(1) - &pow(2))) * &(&pow(2) - &pow(0)))
}
