//! Projective point configurations and their ideals.

use std::sync::Arc;

use crate::algebra::{Field, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::groebner::{intersect, Ideal};
use crate::limits::Limits;

/// Distinct points of projective `N`-space, each stored with its first
/// nonzero coordinate scaled to one.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet<F: Field> {
    field: F,
    dim: usize,
    points: Vec<Vec<F::Elem>>,
}

/// Scales a coordinate vector so its first nonzero entry is one.
fn normalize<F: Field>(field: &F, p: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let lead = p
        .iter()
        .find(|c| !field.is_zero(c))
        .ok_or_else(|| Error::precondition("the zero vector is not a projective point"))?;
    let inv = field.inv(lead)?;
    Ok(p.iter().map(|c| field.mul(c, &inv)).collect())
}

impl<F: Field> PointSet<F> {
    /// Points of projective `dim`-space given by `dim + 1` coordinates each.
    /// Zero vectors and projectively repeated points are rejected.
    pub fn new(field: &F, dim: usize, points: Vec<Vec<F::Elem>>) -> Result<Self> {
        let mut out: Vec<Vec<F::Elem>> = Vec::with_capacity(points.len());
        for p in points {
            if p.len() != dim + 1 {
                return Err(Error::ContextMismatch(format!(
                    "point with {} coordinates in projective {dim}-space",
                    p.len()
                )));
            }
            let q = normalize(field, &p)?;
            if out.contains(&q) {
                return Err(Error::precondition(format!(
                    "repeated point ({})",
                    format_point(field, &q)
                )));
            }
            out.push(q);
        }
        Ok(PointSet {
            field: field.clone(),
            dim,
            points: out,
        })
    }

    pub fn from_integers(field: &F, dim: usize, points: &[&[i64]]) -> Result<Self> {
        let pts = points
            .iter()
            .map(|p| p.iter().map(|&c| field.from_i64(c)).collect())
            .collect();
        Self::new(field, dim, pts)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<F::Elem>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The same configuration with the point at `index` removed.
    pub fn without(&self, index: usize) -> Self {
        let mut points = self.points.clone();
        points.remove(index);
        PointSet {
            points,
            ..self.clone()
        }
    }

    pub fn format_point(&self, index: usize) -> String {
        format_point(&self.field, &self.points[index])
    }
}

fn format_point<F: Field>(field: &F, p: &[F::Elem]) -> String {
    p.iter().map(|c| field.format(c)).collect::<Vec<_>>().join(":")
}

/// Every point of projective `dim`-space over a finite field, in the order
/// `(1:*:…:*)`, then `(0:1:*:…)`, and so on, with coordinates enumerated in
/// the field's element order.
pub fn rational_points<F: Field>(field: &F, dim: usize) -> Result<PointSet<F>> {
    let elems = field
        .elements()
        .ok_or_else(|| Error::precondition(format!("{} is not a finite field", field.spec())))?;
    let q = elems.len();
    let mut points = Vec::new();
    for lead in 0..=dim {
        let free = (dim - lead) as u32;
        for code in 0..q.pow(free) {
            let mut p = vec![field.zero(); dim + 1];
            p[lead] = field.one();
            let mut rest = code;
            for k in (lead + 1..=dim).rev() {
                p[k] = elems[rest % q].clone();
                rest /= q;
            }
            points.push(p);
        }
    }
    PointSet::new(field, dim, points)
}

/// All points of projective `dim`-space over a finite field except the last
/// one in enumeration order, `(0:…:0:1)`.
pub fn all_but_one_points<F: Field>(field: &F, dim: usize) -> Result<PointSet<F>> {
    let all = rational_points(field, dim)?;
    let last = all.len() - 1;
    Ok(all.without(last))
}

/// The prime ideal of `point`: with `j` the first nonzero coordinate and the
/// point scaled so that its `j`-th coordinate is one, the linear forms
/// `x_i − p_i·x_j` for `i ≠ j`.
pub fn point_ideal<F: Field>(ring: &Arc<Ring<F>>, point: &[F::Elem]) -> Result<Ideal<F>> {
    let field = ring.field();
    if point.len() != ring.nvars() {
        return Err(Error::ContextMismatch(format!(
            "point with {} coordinates in a ring with {} variables",
            point.len(),
            ring.nvars()
        )));
    }
    let p = normalize(field, point)?;
    let j = p.iter().position(|c| !field.is_zero(c)).expect("normalized");
    let xj = Polynomial::var(ring, j);
    let forms = (0..ring.nvars())
        .filter(|&i| i != j)
        .map(|i| &Polynomial::var(ring, i) - &xj.scale(&p[i]));
    Ideal::new(ring, forms)
}

pub(crate) fn check_point_ring<F: Field>(ring: &Ring<F>, set: &PointSet<F>) -> Result<()> {
    if ring.field() != set.field() || ring.nvars() != set.dim() + 1 {
        return Err(Error::ContextMismatch(format!(
            "points of projective {}-space over {} in a ring with {} variables over {}",
            set.dim(),
            set.field().spec(),
            ring.nvars(),
            ring.field().spec()
        )));
    }
    if set.is_empty() {
        return Err(Error::precondition("empty point set"));
    }
    Ok(())
}

/// Intersection of the point ideals, folded left to right in input order.
pub fn points_defining_ideal<F: Field>(
    ring: &Arc<Ring<F>>,
    set: &PointSet<F>,
    limits: &Limits,
) -> Result<Ideal<F>> {
    check_point_ring(ring, set)?;
    let ideals = set
        .points()
        .iter()
        .map(|p| point_ideal(ring, p))
        .collect::<Result<Vec<_>>>()?;
    fold_intersections(ideals, limits)
}

pub(crate) fn fold_intersections<F: Field>(ideals: Vec<Ideal<F>>, limits: &Limits) -> Result<Ideal<F>> {
    let mut iter = ideals.into_iter();
    let mut acc = iter.next().ok_or_else(|| Error::precondition("empty intersection"))?;
    for next in iter {
        acc = intersect(&acc, &next, limits)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, PrimeField, TermOrder};
    use crate::groebner::ideal_equal;

    fn setup() -> (PrimeField, Arc<Ring<PrimeField>>) {
        let f = PrimeField::new(7).unwrap();
        (f, Ring::from_names(f, &["x", "y", "z"], TermOrder::GrevLex).unwrap())
    }

    fn ideal(r: &Arc<Ring<PrimeField>>, src: &[&str]) -> Ideal<PrimeField> {
        Ideal::new(r, src.iter().map(|s| parse_polynomial(r, s).unwrap())).unwrap()
    }

    #[test]
    fn point_ideal_examples() {
        let (f, r) = setup();
        let lim = Limits::default();
        let pt = |c: &[i64]| c.iter().map(|&v| f.from_i64(v)).collect::<Vec<_>>();
        assert!(ideal_equal(&point_ideal(&r, &pt(&[0, 0, 1])).unwrap(), &ideal(&r, &["x", "y"]), &lim).unwrap());
        assert!(ideal_equal(&point_ideal(&r, &pt(&[1, 1, 1])).unwrap(), &ideal(&r, &["x - y", "y - z"]), &lim).unwrap());
        assert!(ideal_equal(&point_ideal(&r, &pt(&[1, 0, 0])).unwrap(), &ideal(&r, &["y", "z"]), &lim).unwrap());
        assert!(point_ideal(&r, &pt(&[0, 0, 0])).is_err());
    }

    #[test]
    fn point_sets_reject_repeats() {
        let (f, _) = setup();
        assert!(PointSet::from_integers(&f, 2, &[&[1, 2, 3], &[2, 4, 6]]).is_err());
        assert!(PointSet::from_integers(&f, 2, &[&[1, 2]]).is_err());
        assert!(PointSet::from_integers(&f, 2, &[&[0, 0, 0]]).is_err());
    }

    #[test]
    fn coordinate_points() {
        let (f, r) = setup();
        let lim = Limits::default();
        let s = PointSet::from_integers(&f, 2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let i = points_defining_ideal(&r, &s, &lim).unwrap();
        assert!(ideal_equal(&i, &ideal(&r, &["x*y", "x*z", "y*z"]), &lim).unwrap());
        let empty = PointSet::new(&f, 2, vec![]).unwrap();
        assert!(points_defining_ideal(&r, &empty, &lim).is_err());
    }

    #[test]
    fn rational_point_counts() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(rational_points(&f, 2).unwrap().len(), 13);
        assert_eq!(rational_points(&f, 1).unwrap().len(), 4);
        let abo = all_but_one_points(&f, 2).unwrap();
        assert_eq!(abo.len(), 12);
        assert!(!abo.points().contains(&vec![0, 0, 1]));
    }
}
