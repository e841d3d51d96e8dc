use std::ops::Range;
use std::sync::Arc;

use super::field::Field;
use super::monomial::TermOrder;
use crate::error::{Error, Result};

/// A polynomial ring: coefficient field, ordered variables partitioned into
/// consecutive blocks, and the ambient term order polynomials are sorted by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring<F: Field> {
    field: F,
    vars: Vec<String>,
    blocks: Vec<usize>,
    order: TermOrder,
}

impl<F: Field> Ring<F> {
    /// A single-block ring.
    pub fn new(field: F, vars: Vec<String>, order: TermOrder) -> Result<Arc<Self>> {
        let n = vars.len();
        Self::with_blocks(field, vars, vec![n], order)
    }

    pub fn with_blocks(
        field: F,
        vars: Vec<String>,
        blocks: Vec<usize>,
        order: TermOrder,
    ) -> Result<Arc<Self>> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::precondition(format!("duplicate variable name `{v}`")));
            }
        }
        if blocks.iter().sum::<usize>() != vars.len() || blocks.contains(&0) && !vars.is_empty() {
            return Err(Error::precondition(
                "blocks must partition the variables into nonempty runs",
            ));
        }
        order.validate(vars.len())?;
        Ok(Arc::new(Ring {
            field,
            vars,
            blocks,
            order,
        }))
    }

    /// Convenience constructor from string slices.
    pub fn from_names(field: F, names: &[&str], order: TermOrder) -> Result<Arc<Self>> {
        Self::new(field, names.iter().map(|s| s.to_string()).collect(), order)
    }

    /// Tensor product of the factor rings: factor `i`'s variables get the
    /// suffix `_{i+1}`, its blocks are kept, and the ambient order is the
    /// block order of the factors' orders (earlier factors dominate).
    pub fn product(factors: &[&Ring<F>]) -> Result<Arc<Self>> {
        let first = factors
            .first()
            .ok_or_else(|| Error::precondition("product of zero rings"))?;
        let mut vars = Vec::new();
        let mut blocks = Vec::new();
        let mut parts = Vec::new();
        for (i, r) in factors.iter().enumerate() {
            if r.field != first.field {
                return Err(Error::ContextMismatch(
                    "product of rings over different fields".into(),
                ));
            }
            vars.extend(r.vars.iter().map(|v| format!("{v}_{}", i + 1)));
            blocks.extend_from_slice(&r.blocks);
            parts.push((r.nvars(), r.order.clone()));
        }
        Self::with_blocks(first.field.clone(), vars, blocks, TermOrder::Block(parts))
    }

    pub fn with_order(&self, order: TermOrder) -> Result<Arc<Self>> {
        order.validate(self.nvars())?;
        Ok(Arc::new(Ring {
            order,
            ..self.clone()
        }))
    }

    /// Same field, variables and blocks; the ambient order may differ.
    pub fn same_space(&self, other: &Ring<F>) -> bool {
        self.field == other.field && self.vars == other.vars && self.blocks == other.blocks
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_ranges(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.blocks
            .iter()
            .map(|n| {
                let r = start..start + n;
                start += n;
                r
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;

    #[test]
    fn product_naming_and_blocks() {
        let f = PrimeField::new(7).unwrap();
        let a = Ring::from_names(f, &["x", "y", "z"], TermOrder::GrevLex).unwrap();
        let p = Ring::product(&[&a, &a]).unwrap();
        assert_eq!(p.vars(), &["x_1", "y_1", "z_1", "x_2", "y_2", "z_2"]);
        assert_eq!(p.block_ranges(), vec![0..3, 3..6]);
        assert_eq!(
            p.order(),
            &TermOrder::Block(vec![(3, TermOrder::GrevLex), (3, TermOrder::GrevLex)])
        );
    }

    #[test]
    fn rejects_duplicate_names_and_bad_blocks() {
        let f = PrimeField::new(7).unwrap();
        assert!(Ring::from_names(f, &["x", "x"], TermOrder::Lex).is_err());
        assert!(Ring::with_blocks(
            f,
            vec!["x".into(), "y".into()],
            vec![1],
            TermOrder::Lex
        )
        .is_err());
    }
}
