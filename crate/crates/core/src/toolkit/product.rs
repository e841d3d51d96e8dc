//! Extension of ideals to product rings: fiber sums and k-fold products.

use std::sync::Arc;

use crate::algebra::{Field, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::groebner::Ideal;

/// Renames the variables of `source` onto one block of `target`.
#[derive(Clone, Debug)]
pub struct ProductRingMap<F: Field> {
    source: Arc<Ring<F>>,
    target: Arc<Ring<F>>,
    block: usize,
}

impl<F: Field> ProductRingMap<F> {
    /// Maps `source` onto block `block` (zero-based) of `target`; the block
    /// must have exactly as many variables as `source`.
    pub fn new(source: &Arc<Ring<F>>, target: &Arc<Ring<F>>, block: usize) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::ContextMismatch("product-ring map across fields".into()));
        }
        let sizes = target.block_sizes();
        let size = *sizes.get(block).ok_or_else(|| {
            Error::ContextMismatch(format!(
                "block {} requested in a ring with {} blocks",
                block + 1,
                sizes.len()
            ))
        })?;
        if size != source.nvars() {
            return Err(Error::ContextMismatch(format!(
                "ring with {} variables mapped onto a block of {size}",
                source.nvars()
            )));
        }
        Ok(ProductRingMap {
            source: source.clone(),
            target: target.clone(),
            block,
        })
    }

    pub fn source(&self) -> &Arc<Ring<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Ring<F>> {
        &self.target
    }

    pub fn block(&self) -> usize {
        self.block
    }

    fn indices(&self) -> Vec<usize> {
        let start = self.target.block_ranges()[self.block].start;
        (start..start + self.source.nvars()).collect()
    }

    pub fn map_polynomial(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !f.ring().same_space(&self.source) {
            return Err(Error::ContextMismatch(
                "polynomial does not live in the map's source ring".into(),
            ));
        }
        f.map_vars(&self.target, &self.indices())
    }
}

/// The ideal generated by `ideal`'s generators renamed into the map's block.
pub fn extend_to_block<F: Field>(ideal: &Ideal<F>, map: &ProductRingMap<F>) -> Result<Ideal<F>> {
    let gens = ideal
        .gens()
        .iter()
        .map(|g| map.map_polynomial(g))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(map.target(), gens)
}

/// `I + J` in the product of the two ambient rings, with `I` in block 1 and
/// `J` in block 2. When a factor ring has several blocks of its own they are
/// kept, so "block 2" is then the first block after the factor's blocks.
pub fn fiber_sum<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    product_sum(&[i, j])
}

/// Sum of the extensions of the given ideals into the product of their
/// rings, factor `t` landing in the variables suffixed `_{t+1}`.
pub fn product_sum<F: Field>(ideals: &[&Ideal<F>]) -> Result<Ideal<F>> {
    let rings: Vec<&Ring<F>> = ideals.iter().map(|i| i.ring().as_ref()).collect();
    let target = Ring::product(&rings)?;
    let mut offset = 0;
    let mut gens = Vec::new();
    for ideal in ideals {
        let n = ideal.ring().nvars();
        let map: Vec<usize> = (offset..offset + n).collect();
        for g in ideal.gens() {
            gens.push(g.map_vars(&target, &map)?);
        }
        offset += n;
    }
    Ideal::new(&target, gens)
}

/// Places factor polynomials in consecutive variable ranges of `target` and
/// multiplies them; `factors[t]` must live in a ring with the same variables
/// as the `t`-th factor of `target`.
pub fn product_of_factors<F: Field>(
    target: &Arc<Ring<F>>,
    factors: &[&Polynomial<F>],
) -> Result<Polynomial<F>> {
    let mut acc = Polynomial::one(target);
    let mut offset = 0;
    for f in factors {
        let n = f.ring().nvars();
        if offset + n > target.nvars() {
            return Err(Error::ContextMismatch("factors exceed the product ring".into()));
        }
        let map: Vec<usize> = (offset..offset + n).collect();
        acc = acc.checked_mul(&f.map_vars(target, &map)?)?;
        offset += n;
    }
    if offset != target.nvars() {
        return Err(Error::ContextMismatch("factors do not cover the product ring".into()));
    }
    Ok(acc)
}

/// `I^[k]`: the defining ideal of the `k`-fold fiber product, one copy of
/// `I` per block. `kfold(I, 1)` is `I` itself, in its own ring.
pub fn kfold<F: Field>(ideal: &Ideal<F>, k: usize) -> Result<Ideal<F>> {
    match k {
        0 => Err(Error::precondition("k-fold product needs k ≥ 1")),
        1 => Ok(ideal.clone()),
        _ => product_sum(&vec![ideal; k]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, PrimeField, TermOrder};

    fn ring(names: &[&str]) -> Arc<Ring<PrimeField>> {
        Ring::from_names(PrimeField::new(7).unwrap(), names, TermOrder::GrevLex).unwrap()
    }

    fn ideal(r: &Arc<Ring<PrimeField>>, src: &[&str]) -> Ideal<PrimeField> {
        Ideal::new(r, src.iter().map(|s| parse_polynomial(r, s).unwrap())).unwrap()
    }

    #[test]
    fn extension_examples() {
        let a = ring(&["x", "y", "z"]);
        let target = Ring::with_blocks(
            *a.field(),
            ["x", "y", "z", "u", "v", "w"].iter().map(|s| s.to_string()).collect(),
            vec![3, 3],
            TermOrder::Block(vec![(3, TermOrder::GrevLex), (3, TermOrder::GrevLex)]),
        )
        .unwrap();
        let map = ProductRingMap::new(&a, &target, 1).unwrap();
        assert_eq!(extend_to_block(&ideal(&a, &["x", "y"]), &map).unwrap().to_string(), "(u, v)");
        assert!(extend_to_block(&Ideal::zero(&a), &map).unwrap().is_zero_ideal());
        let small = ring(&["x", "y"]);
        assert!(ProductRingMap::new(&small, &target, 0).is_err());
        assert!(ProductRingMap::new(&a, &target, 2).is_err());
    }

    #[test]
    fn fiber_sum_examples() {
        let a = ring(&["x"]);
        let b = ring(&["y"]);
        let s = fiber_sum(&ideal(&a, &["x"]), &ideal(&b, &["y"])).unwrap();
        assert_eq!(s.to_string(), "(x_1, y_2)");
        assert_eq!(s.ring().block_count(), 2);
        let t = fiber_sum(&ideal(&a, &["x"]), &Ideal::zero(&b)).unwrap();
        assert_eq!(t.to_string(), "(x_1)");
    }

    #[test]
    fn kfold_examples() {
        let a = ring(&["x", "y"]);
        let i = ideal(&a, &["x", "y"]);
        assert_eq!(kfold(&i, 1).unwrap().to_string(), i.to_string());
        let k2 = kfold(&i, 2).unwrap();
        assert_eq!(k2.ring().vars(), &["x_1", "y_1", "x_2", "y_2"]);
        assert_eq!(k2.gens().len(), 4);
        let k3 = kfold(&i, 3).unwrap();
        assert_eq!(k3.ring().block_count(), 3);
        assert!(kfold(&i, 0).is_err());
    }

    #[test]
    fn factor_products() {
        let a = ring(&["x", "y"]);
        let r = Ring::product(&[a.as_ref(), a.as_ref()]).unwrap();
        let f = parse_polynomial(&a, "x + y").unwrap();
        let p = product_of_factors(&r, &[&f, &f]).unwrap();
        assert_eq!(p, parse_polynomial(&r, "(x_1 + y_1)*(x_2 + y_2)").unwrap());
        assert!(product_of_factors(&r, &[&f]).is_err());
    }
}
