//! Degree-by-degree linear algebra: Macaulay-matrix membership and Hilbert functions.

use std::collections::HashMap;

use super::ideal::Ideal;
use crate::algebra::poly::check_space;
use crate::algebra::{Field, Monomial, Polynomial, Ring};
use crate::error::{Error, ResourceKind, Result};
use crate::limits::Limits;

type SparseRow<E> = Vec<(usize, E)>;

/// Monomials of the given multidegree, one entry per variable block.
fn monomials_of_multidegree<F: Field>(ring: &Ring<F>, degrees: &[u32]) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(ring.nvars())];
    for (range, &d) in ring.block_ranges().into_iter().zip(degrees) {
        let part = Monomial::all_of_degree(range.len(), d);
        let mut next = Vec::with_capacity(out.len() * part.len());
        for m in &out {
            for p in &part {
                let mut e = m.clone();
                e.exponents_mut()[range.clone()].copy_from_slice(p.exponents());
                next.push(e);
            }
        }
        out = next;
    }
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Grading used for a membership test: per-block degrees when the ideal is
/// multihomogeneous in a multi-block ring, total degree otherwise.
struct Grading {
    multi: bool,
}

impl Grading {
    fn degree_of<F: Field>(&self, ring: &Ring<F>, m: &Monomial) -> Vec<u32> {
        if self.multi {
            Polynomial::multidegree_of(ring, m)
        } else {
            vec![m.degree()]
        }
    }

    fn monomials<F: Field>(&self, ring: &Ring<F>, degrees: &[u32]) -> Vec<Monomial> {
        if self.multi {
            monomials_of_multidegree(ring, degrees)
        } else {
            Monomial::all_of_degree(ring.nvars(), degrees[0])
        }
    }

    fn count<F: Field>(&self, ring: &Ring<F>, degrees: &[u32]) -> u64 {
        if self.multi {
            ring.block_sizes()
                .iter()
                .zip(degrees)
                .map(|(&n, &d)| binomial(d as u64 + n as u64 - 1, n as u64 - 1))
                .product()
        } else {
            let n = ring.nvars() as u64;
            binomial(degrees[0] as u64 + n - 1, n - 1)
        }
    }
}

/// Whether the homogeneous polynomial `f` of degree `d` lies in the
/// homogeneous ideal `ideal`, decided by row-reducing the span of
/// `{m·g : g a generator, deg(m·g) = d}`.
///
/// When the ring has several variable blocks and every generator is
/// multihomogeneous, each multihomogeneous component of `f` is tested in its
/// own multidegree, which keeps the matrices small. Matrices with more than
/// `limits.macaulay_threshold` cells are refused with a resource error.
pub fn graded_membership<F: Field>(
    f: &Polynomial<F>,
    ideal: &Ideal<F>,
    d: u32,
    limits: &Limits,
) -> Result<bool> {
    check_space(f.ring(), ideal.ring())?;
    let ring = ideal.ring();
    if f.is_zero() {
        return Ok(true);
    }
    if f.total_degree() != Some(d) || !f.is_homogeneous() {
        return Err(Error::NotHomogeneous(format!("{f} is not homogeneous of degree {d}")));
    }
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous("ideal has inhomogeneous generators".into()));
    }
    let f = f.to_ring(ring)?;
    let grading = grading_for(ideal);
    let parts = if grading.multi {
        f.multihomogeneous_parts()
    } else {
        vec![(vec![d], f)]
    };
    for (degrees, part) in parts {
        if !member_in_degree(&part, ideal, &degrees, &grading, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generators whose degree fits under `degrees`, paired with the multiplier degree.
fn fitting_generators<'a, F: Field>(
    ideal: &'a Ideal<F>,
    degrees: &[u32],
    grading: &Grading,
) -> Vec<(&'a Polynomial<F>, Vec<u32>)> {
    let ring = ideal.ring();
    ideal
        .gens()
        .iter()
        .filter_map(|g| {
            let e = grading.degree_of(ring, &g.terms()[0].0);
            e.iter()
                .zip(degrees)
                .all(|(a, b)| a <= b)
                .then(|| (g, degrees.iter().zip(&e).map(|(a, b)| a - b).collect()))
        })
        .collect()
}

fn matrix_cells<F: Field>(ideal: &Ideal<F>, degrees: &[u32], grading: &Grading) -> usize {
    let ring = ideal.ring();
    let rows: u64 = fitting_generators(ideal, degrees, grading)
        .iter()
        .map(|(_, rest)| grading.count(ring, rest))
        .sum();
    usize::try_from(rows.saturating_mul(grading.count(ring, degrees))).unwrap_or(usize::MAX)
}

fn grading_for<F: Field>(ideal: &Ideal<F>) -> Grading {
    Grading {
        multi: ideal.ring().block_count() > 1 && ideal.is_multihomogeneous(),
    }
}

/// Total number of Macaulay-matrix cells `graded_membership` would build for
/// `f`, or `None` when `f` or the ideal is not homogeneous.
pub fn macaulay_cells<F: Field>(f: &Polynomial<F>, ideal: &Ideal<F>) -> Option<usize> {
    if f.is_zero() {
        return Some(0);
    }
    if !f.is_homogeneous() || !ideal.is_homogeneous() || !f.ring().same_space(ideal.ring()) {
        return None;
    }
    let grading = grading_for(ideal);
    let d = f.total_degree()?;
    let parts = if grading.multi {
        f.multihomogeneous_parts().into_iter().map(|(e, _)| e).collect()
    } else {
        vec![vec![d]]
    };
    Some(
        parts
            .iter()
            .map(|e| matrix_cells(ideal, e, &grading))
            .fold(0usize, usize::saturating_add),
    )
}

/// How a membership verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Groebner,
    GradedLinearAlgebra,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Groebner => "groebner",
            Method::GradedLinearAlgebra => "graded",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Graded linear algebra when every polynomial in `fs` is homogeneous and
/// the Macaulay matrices together stay within `limits.macaulay_threshold`
/// cells; a Gröbner basis otherwise. The choice depends only on the inputs,
/// never on which bases happen to be cached.
pub fn choose_method<'a, F: Field>(
    fs: impl IntoIterator<Item = &'a Polynomial<F>>,
    ideal: &Ideal<F>,
    limits: &Limits,
) -> Method {
    let mut total = 0usize;
    for f in fs {
        match macaulay_cells(f, ideal) {
            Some(c) => total = total.saturating_add(c),
            None => return Method::Groebner,
        }
    }
    if total <= limits.macaulay_threshold {
        Method::GradedLinearAlgebra
    } else {
        Method::Groebner
    }
}

/// Membership of `f` in `ideal` decided by the given method.
pub fn membership_by<F: Field>(
    f: &Polynomial<F>,
    ideal: &Ideal<F>,
    method: Method,
    limits: &Limits,
) -> Result<bool> {
    match method {
        Method::Groebner => ideal.contains(f, limits),
        Method::GradedLinearAlgebra => {
            let d = f.total_degree().unwrap_or(0);
            graded_membership(f, ideal, d, limits)
        }
    }
}

/// Membership with the method picked by [`choose_method`].
pub fn membership<F: Field>(f: &Polynomial<F>, ideal: &Ideal<F>, limits: &Limits) -> Result<(bool, Method)> {
    let method = choose_method([f], ideal, limits);
    Ok((membership_by(f, ideal, method, limits)?, method))
}

fn member_in_degree<F: Field>(
    f: &Polynomial<F>,
    ideal: &Ideal<F>,
    degrees: &[u32],
    grading: &Grading,
    limits: &Limits,
) -> Result<bool> {
    let ring = ideal.ring();
    let field = ring.field();
    let cells = matrix_cells(ideal, degrees, grading);
    if cells > limits.macaulay_threshold {
        return Err(Error::Resource(ResourceKind::MatrixTooLarge {
            cells,
            cap: limits.macaulay_threshold,
        }));
    }
    let gens = fitting_generators(ideal, degrees, grading);
    if gens.is_empty() {
        return Ok(false);
    }

    // columns in descending ring order so that column 0 is the largest monomial
    let mut cols = grading.monomials(ring, degrees);
    let ord = ring.order();
    cols.sort_unstable_by(|a, b| ord.cmp_monomials(b, a));
    let index: HashMap<Monomial, usize> = cols.into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let to_row = |p: &Polynomial<F>| -> SparseRow<F::Elem> {
        p.terms().iter().map(|(m, c)| (index[m], c.clone())).collect()
    };

    let mut pivots: HashMap<usize, SparseRow<F::Elem>> = HashMap::new();
    let mut target = to_row(f);
    let mut count = 0u32;
    for (g, rest) in &gens {
        for m in grading.monomials(ring, rest) {
            count += 1;
            if count.is_multiple_of(256) {
                limits.check_deadline()?;
            }
            let row = reduce_row(field, to_row(&g.mul_term(&m, &field.one())), &pivots);
            if let Some(&(lead, _)) = row.first() {
                pivots.insert(lead, normalize(field, row)?);
                target = reduce_row(field, target, &pivots);
                if target.is_empty() {
                    return Ok(true);
                }
            }
        }
    }
    Ok(reduce_row(field, target, &pivots).is_empty())
}

fn normalize<F: Field>(field: &F, row: SparseRow<F::Elem>) -> Result<SparseRow<F::Elem>> {
    let inv = field.inv(&row[0].1)?;
    Ok(row.into_iter().map(|(c, v)| (c, field.mul(&v, &inv))).collect())
}

/// Top-reduces `row` by monic pivot rows until its leading column has no pivot.
fn reduce_row<F: Field>(
    field: &F,
    mut row: SparseRow<F::Elem>,
    pivots: &HashMap<usize, SparseRow<F::Elem>>,
) -> SparseRow<F::Elem> {
    while let Some((lead, c)) = row.first().cloned() {
        let Some(p) = pivots.get(&lead) else {
            break;
        };
        let mut out = Vec::with_capacity(row.len() + p.len());
        let (mut i, mut j) = (1, 1);
        while i < row.len() || j < p.len() {
            let a = row.get(i).map(|x| x.0);
            let b = p.get(j).map(|x| x.0);
            match (a, b) {
                (Some(x), Some(y)) if x == y => {
                    let v = field.sub(&row[i].1, &field.mul(&c, &p[j].1));
                    if !field.is_zero(&v) {
                        out.push((x, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push(row[i].clone());
                    i += 1;
                }
                (Some(_), None) => {
                    out.push(row[i].clone());
                    i += 1;
                }
                (_, Some(y)) => {
                    out.push((y, field.neg(&field.mul(&c, &p[j].1))));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        row = out;
    }
    row
}

/// `dim_k (R/I)_d`: degree-`d` monomials outside the leading-term ideal of
/// the reduced basis for the ring order.
pub fn hilbert_function<F: Field>(ideal: &Ideal<F>, d: u32, limits: &Limits) -> Result<u64> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous("Hilbert function of an inhomogeneous ideal".into()));
    }
    Ok(ideal.basis(limits)?.standard_monomial_count(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, PrimeField, TermOrder};
    use std::sync::Arc;

    fn setup(names: &[&str]) -> Arc<Ring<PrimeField>> {
        Ring::from_names(PrimeField::new(7).unwrap(), names, TermOrder::GrevLex).unwrap()
    }

    fn ideal(r: &Arc<Ring<PrimeField>>, src: &[&str]) -> Ideal<PrimeField> {
        Ideal::new(r, src.iter().map(|s| parse_polynomial(r, s).unwrap())).unwrap()
    }

    #[test]
    fn macaulay_examples() {
        let r = setup(&["x", "y", "z"]);
        let lim = Limits::default();
        let i = ideal(&r, &["x*y", "y*z"]);
        let p = |s: &str| parse_polynomial(&r, s).unwrap();
        assert!(!graded_membership(&p("x^3"), &i, 3, &lim).unwrap());
        assert!(graded_membership(&p("x^2*y + 3*y*z^2"), &i, 3, &lim).unwrap());
        assert!(graded_membership(&p("0"), &i, 3, &lim).unwrap());
        assert!(matches!(
            graded_membership(&p("x^2 + y"), &i, 2, &lim),
            Err(Error::NotHomogeneous(_))
        ));
    }

    #[test]
    fn matrix_threshold_is_enforced() {
        let r = setup(&["x", "y", "z"]);
        let i = ideal(&r, &["x*y", "y*z"]);
        let lim = Limits {
            macaulay_threshold: 10,
            ..Limits::default()
        };
        let err = graded_membership(&parse_polynomial(&r, "x^5").unwrap(), &i, 5, &lim).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn multigraded_agrees_with_groebner() {
        let f = PrimeField::new(7).unwrap();
        let a = Ring::from_names(f, &["x", "y"], TermOrder::GrevLex).unwrap();
        let r = Ring::product(&[&a, &a]).unwrap();
        let i = Ideal::new(
            &r,
            ["x_1*y_2 - y_1*x_2", "x_1^2"].iter().map(|s| parse_polynomial(&r, s).unwrap()),
        )
        .unwrap();
        let lim = Limits::default();
        for s in ["x_1^2*y_2", "x_1*y_1*x_2*y_2 - y_1^2*x_2^2", "x_1*y_1*y_2^2", "x_1*x_2 + y_1*y_2"] {
            let p = parse_polynomial(&r, s).unwrap();
            let d = p.total_degree().unwrap();
            assert_eq!(
                graded_membership(&p, &i, d, &lim).unwrap(),
                i.contains(&p, &lim).unwrap(),
                "{s}"
            );
        }
    }

    #[test]
    fn hilbert_examples() {
        let r = setup(&["x", "y", "z"]);
        let lim = Limits::default();
        let i = ideal(&r, &["x", "y"]);
        for d in 0..6 {
            assert_eq!(hilbert_function(&i, d, &lim).unwrap(), 1);
            assert_eq!(
                hilbert_function(&Ideal::zero(&r), d, &lim).unwrap(),
                ((d + 2) * (d + 1) / 2) as u64
            );
        }
    }
}
