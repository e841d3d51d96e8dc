//! Ideals with cached Gröbner bases, and the elimination-based operations
//! built on them: intersection, colon and saturation.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use super::basis::{buchberger, GroebnerBasis};
use crate::algebra::poly::check_space;
use crate::algebra::{Field, Polynomial, Ring, TermOrder};
use crate::error::{Error, ResourceKind, Result};
use crate::limits::Limits;

/// An ideal given by generators in a fixed ring.
///
/// Generators are made monic, zero generators are dropped, and the list is
/// deduplicated and sorted (by degree, then by terms under the ring order),
/// so equal generator sets print identically. Gröbner bases are computed on
/// demand and cached per term order.
pub struct Ideal<F: Field> {
    ring: Arc<Ring<F>>,
    gens: Vec<Polynomial<F>>,
    cache: RwLock<HashMap<TermOrder, Arc<GroebnerBasis<F>>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
        }
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{}", self)
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        if self.gens.is_empty() {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

/// Canonical generator order: by total degree, then term by term.
fn canonical_cmp<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Ordering {
    let ord = a.ring().order();
    let field = a.field();
    a.total_degree().cmp(&b.total_degree()).then_with(|| {
        for (x, y) in a.terms().iter().zip(b.terms()) {
            let o = ord
                .cmp_monomials(&y.0, &x.0)
                .then_with(|| field.format(&x.1).cmp(&field.format(&y.1)));
            if o != Ordering::Equal {
                return o;
            }
        }
        a.len().cmp(&b.len())
    })
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Arc<Ring<F>>, gens: impl IntoIterator<Item = Polynomial<F>>) -> Result<Self> {
        let mut out = Vec::new();
        for g in gens {
            check_space(g.ring(), ring)?;
            if g.is_zero() {
                continue;
            }
            out.push(g.to_ring(ring)?.monic()?);
        }
        out.sort_by(canonical_cmp);
        out.dedup();
        Ok(Ideal {
            ring: ring.clone(),
            gens: out,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: Vec::new(),
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn unit(ring: &Arc<Ring<F>>) -> Self {
        Self::new(ring, [Polynomial::one(ring)]).expect("unit ideal")
    }

    /// The ideal generated by the ring variables with indices in `vars`.
    pub fn of_variables(ring: &Arc<Ring<F>>, vars: impl IntoIterator<Item = usize>) -> Self {
        Self::new(ring, vars.into_iter().map(|i| Polynomial::var(ring, i))).expect("same ring")
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    /// True when every generator is homogeneous for each variable block.
    pub fn is_multihomogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_multihomogeneous)
    }

    /// Reduced Gröbner basis for `order`, computed once and cached.
    pub fn groebner(&self, order: &TermOrder, limits: &Limits) -> Result<Arc<GroebnerBasis<F>>> {
        if let Some(gb) = self.cached(order) {
            return Ok(gb);
        }
        let gb = Arc::new(buchberger(&self.gens, &self.ring, order, limits)?);
        self.cache
            .write()
            .expect("cache lock")
            .entry(order.clone())
            .or_insert_with(|| gb.clone());
        Ok(gb)
    }

    /// Gröbner basis for the ring's own order.
    pub fn basis(&self, limits: &Limits) -> Result<Arc<GroebnerBasis<F>>> {
        self.groebner(&self.ring.order().clone(), limits)
    }

    pub fn cached(&self, order: &TermOrder) -> Option<Arc<GroebnerBasis<F>>> {
        self.cache.read().expect("cache lock").get(order).cloned()
    }

    /// Records a basis known to be a reduced Gröbner basis of this ideal.
    pub(crate) fn seed_basis(&self, gb: GroebnerBasis<F>) {
        self.cache
            .write()
            .expect("cache lock")
            .insert(gb.order().clone(), Arc::new(gb));
    }

    pub fn is_unit_ideal(&self, limits: &Limits) -> Result<bool> {
        Ok(self.basis(limits)?.is_unit())
    }

    pub fn contains(&self, f: &Polynomial<F>, limits: &Limits) -> Result<bool> {
        check_space(f.ring(), &self.ring)?;
        Ok(self.basis(limits)?.normal_form_limited(f, limits)?.is_zero())
    }

    /// The first generator of `other` outside this ideal, if any.
    pub fn first_missing(&self, other: &Ideal<F>, limits: &Limits) -> Result<Option<Polynomial<F>>> {
        check_space(other.ring(), &self.ring)?;
        let gb = self.basis(limits)?;
        for g in &other.gens {
            if !gb.normal_form_limited(g, limits)?.is_zero() {
                return Ok(Some(g.clone()));
            }
        }
        Ok(None)
    }

    pub fn contains_ideal(&self, other: &Ideal<F>, limits: &Limits) -> Result<bool> {
        Ok(self.first_missing(other, limits)?.is_none())
    }
}

/// Whether `f` lies in `ideal`, decided by the reduced basis for `order`.
pub fn ideal_membership<F: Field>(
    f: &Polynomial<F>,
    ideal: &Ideal<F>,
    order: &TermOrder,
    limits: &Limits,
) -> Result<bool> {
    check_space(f.ring(), ideal.ring())?;
    Ok(ideal
        .groebner(order, limits)?
        .normal_form_limited(f, limits)?
        .is_zero())
}

/// Equality of ideals by comparing reduced Gröbner bases under `a`'s ring order.
pub fn ideal_equal<F: Field>(a: &Ideal<F>, b: &Ideal<F>, limits: &Limits) -> Result<bool> {
    check_space(a.ring(), b.ring())?;
    let order = a.ring().order().clone();
    let ga = a.groebner(&order, limits)?;
    let gb = b.groebner(&order, limits)?;
    Ok(ga.elements() == gb.elements())
}

/// `ideal ∩ k[remaining variables]`: generators not involving the variables
/// with indices in `elim`, returned as an ideal of the same ring.
pub fn eliminate<F: Field>(ideal: &Ideal<F>, elim: &[usize], limits: &Limits) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    for (i, &v) in elim.iter().enumerate() {
        if v >= n || elim[..i].contains(&v) {
            return Err(Error::precondition(format!(
                "invalid elimination variable index {v}"
            )));
        }
    }
    if elim.is_empty() {
        return Ok(ideal.clone());
    }
    let rest: Vec<usize> = (0..n).filter(|i| !elim.contains(i)).collect();
    let perm: Vec<usize> = elim.iter().chain(&rest).copied().collect();
    let mut to_aux = vec![0; n];
    for (k, &v) in perm.iter().enumerate() {
        to_aux[v] = k;
    }
    let order = if rest.is_empty() {
        TermOrder::GrevLex
    } else {
        TermOrder::elimination(elim.len(), rest.len(), TermOrder::GrevLex)
    };
    let names = perm.iter().map(|&v| ring.vars()[v].clone()).collect();
    let aux = Ring::new(ring.field().clone(), names, order.clone())?;
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.map_vars(&aux, &to_aux))
        .collect::<Result<Vec<_>>>()?;
    let gb = buchberger(&gens, &aux, &order, limits)?;
    let k = elim.len();
    let kept = gb
        .elements()
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0)))
        .map(|g| g.map_vars(ring, &perm))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, kept)
}

/// `a ∩ b`, by eliminating `t` from `t·a + (1 − t)·b`.
pub fn intersect<F: Field>(a: &Ideal<F>, b: &Ideal<F>, limits: &Limits) -> Result<Ideal<F>> {
    check_space(a.ring(), b.ring())?;
    let ring = a.ring();
    if a.is_zero_ideal() || b.is_zero_ideal() {
        return Ok(Ideal::zero(ring));
    }
    let n = ring.nvars();
    let order = TermOrder::Block(vec![(1, TermOrder::GrevLex), (n, ring.order().clone())]);
    let mut names = vec![fresh_name(ring)];
    names.extend(ring.vars().iter().cloned());
    let aux = Ring::new(ring.field().clone(), names, order.clone())?;
    let shift: Vec<usize> = (1..=n).collect();
    let t = Polynomial::var(&aux, 0);
    let one_minus_t = &Polynomial::one(&aux) - &t;
    let mut gens = Vec::with_capacity(a.gens().len() + b.gens().len());
    for g in a.gens() {
        gens.push(&t * &g.map_vars(&aux, &shift)?);
    }
    for g in b.gens() {
        gens.push(&one_minus_t * &g.map_vars(&aux, &shift)?);
    }
    let gb = buchberger(&gens, &aux, &order, limits)?;
    let mut back = vec![0];
    back.extend(0..n);
    let kept = gb
        .elements()
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[0] == 0))
        .map(|g| g.map_vars(ring, &back))
        .collect::<Result<Vec<_>>>()?;
    let result = Ideal::new(ring, kept.iter().cloned())?;
    // the t-free part of an elimination basis is a reduced basis for the ring order
    result.seed_basis(GroebnerBasis::from_elements_unchecked(ring, ring.order(), &kept)?);
    Ok(result)
}

fn fresh_name<F: Field>(ring: &Ring<F>) -> String {
    let mut name = "t".to_string();
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

/// `ideal : (f)`, computed as `(ideal ∩ (f)) / f`.
pub fn colon<F: Field>(ideal: &Ideal<F>, f: &Polynomial<F>, limits: &Limits) -> Result<Ideal<F>> {
    check_space(f.ring(), ideal.ring())?;
    let ring = ideal.ring();
    if f.is_zero() {
        return Ok(Ideal::unit(ring));
    }
    let f = f.to_ring(ring)?;
    let principal = Ideal::new(ring, [f.clone()])?;
    let meet = intersect(ideal, &principal, limits)?;
    let divide = |gs: &[Polynomial<F>]| -> Result<Vec<Polynomial<F>>> {
        gs.iter()
            .map(|g| {
                g.to_ring(ring)?
                    .div_exact(&f)?
                    .ok_or_else(|| Error::precondition("intersection with (f) not divisible by f"))
            })
            .collect()
    };
    let quotients = divide(meet.gens())?;
    let result = Ideal::new(ring, quotients)?;
    if let Some(gb) = meet.cached(ring.order()) {
        // leading terms are multiplicative, so the quotients of a basis form a basis
        let q = divide(gb.elements())?;
        result.seed_basis(GroebnerBasis::from_elements_unchecked(ring, ring.order(), &q)?);
    }
    Ok(result)
}

/// `ideal : j^∞`: for each generator `f` of `j`, colon by `f` until the ideal
/// stabilizes, then intersect the results. `j` must be a nonzero proper ideal.
pub fn saturate<F: Field>(ideal: &Ideal<F>, j: &Ideal<F>, limits: &Limits) -> Result<Ideal<F>> {
    check_space(ideal.ring(), j.ring())?;
    if j.is_zero_ideal() || j.is_unit_ideal(limits)? {
        return Err(Error::precondition(
            "saturation requires a nonzero proper ideal",
        ));
    }
    let mut parts = Vec::with_capacity(j.gens().len());
    for f in j.gens() {
        let mut current = ideal.clone();
        let mut stable = false;
        for _ in 0..limits.saturation_cap {
            limits.check_deadline()?;
            let next = colon(&current, f, limits)?;
            if ideal_equal(&next, &current, limits)? {
                stable = true;
                break;
            }
            current = next;
        }
        if !stable {
            return Err(Error::Resource(ResourceKind::IterationCap {
                what: "saturation",
                cap: limits.saturation_cap,
            }));
        }
        parts.push(current);
    }
    let mut acc = parts.remove(0);
    for p in &parts {
        acc = intersect(&acc, p, limits)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, RationalField};

    fn ring(names: &[&str]) -> Arc<Ring<RationalField>> {
        Ring::from_names(RationalField, names, TermOrder::GrevLex).unwrap()
    }

    fn ideal<F: Field>(r: &Arc<Ring<F>>, src: &[&str]) -> Ideal<F> {
        Ideal::new(r, src.iter().map(|s| parse_polynomial(r, s).unwrap())).unwrap()
    }

    fn same<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> bool {
        ideal_equal(a, b, &Limits::default()).unwrap()
    }

    #[test]
    fn elimination_example() {
        let r = ring(&["t", "x", "y"]);
        let i = ideal(&r, &["t*x", "(1 - t)*y"]);
        let e = eliminate(&i, &[0], &Limits::default()).unwrap();
        assert!(same(&e, &ideal(&r, &["x*y"])));
    }

    #[test]
    fn intersection_example() {
        let r = ring(&["x", "y", "z"]);
        let i = intersect(&ideal(&r, &["x", "y"]), &ideal(&r, &["x", "z"]), &Limits::default()).unwrap();
        assert!(same(&i, &ideal(&r, &["x", "y*z"])));
        let gb = i.cached(r.order()).unwrap();
        assert!(gb.is_groebner().unwrap());
    }

    #[test]
    fn intersection_identities() {
        let r = ring(&["x", "y", "z"]);
        let lim = Limits::default();
        let i = ideal(&r, &["x^2 - y*z", "x*y"]);
        assert!(same(&intersect(&i, &Ideal::unit(&r), &lim).unwrap(), &i));
        assert!(same(&intersect(&i, &i, &lim).unwrap(), &i));
        assert!(intersect(&i, &Ideal::zero(&r), &lim).unwrap().is_zero_ideal());
    }

    #[test]
    fn saturation_example() {
        let r = ring(&["x", "y"]);
        let lim = Limits::default();
        let s = saturate(&ideal(&r, &["x^2", "x*y"]), &ideal(&r, &["x", "y"]), &lim).unwrap();
        assert!(same(&s, &ideal(&r, &["x"])));
        assert!(saturate(&s, &Ideal::unit(&r), &lim).is_err());
        assert!(saturate(&s, &Ideal::zero(&r), &lim).is_err());
    }

    #[test]
    fn colon_by_monomial() {
        let r = ring(&["x", "y", "z"]);
        let c = colon(&ideal(&r, &["x^2*y", "z"]), &parse_polynomial(&r, "x").unwrap(), &Limits::default())
            .unwrap();
        assert!(same(&c, &ideal(&r, &["x*y", "z"])));
    }

    #[test]
    fn membership_and_context() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, &["x^2", "x*y + y^2"]);
        let lim = Limits::default();
        assert!(ideal_membership(&parse_polynomial(&r, "y^3").unwrap(), &i, &TermOrder::Lex, &lim).unwrap());
        assert!(!i.contains(&parse_polynomial(&r, "y^2").unwrap(), &lim).unwrap());
        let s = ring(&["x", "y", "z"]);
        assert!(matches!(
            i.contains(&parse_polynomial(&s, "x").unwrap(), &lim),
            Err(Error::ContextMismatch(_))
        ));
    }

    #[test]
    fn generators_are_canonical() {
        let r = ring(&["x", "y"]);
        let a = ideal(&r, &["2*y", "x^2", "0", "y"]);
        assert_eq!(a.to_string(), "(y, x^2)");
    }
}
