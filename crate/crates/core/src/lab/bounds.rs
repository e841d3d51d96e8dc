//! Closed-form resurgence bounds for fiber products.

use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};

/// `kh / (k(r − 1) + 1)`: the lower bound on ρ(I^[k]) given `I^(h) ⊄ I^r`.
pub fn kfold_lower_bound(h: i64, r: i64, k: i64) -> Result<Rational64> {
    if h < 1 || r < 1 || k < 1 {
        return Err(Error::precondition(format!(
            "k-fold bound needs h, r, k ≥ 1, got ({h}, {r}, {k})"
        )));
    }
    Ok(Rational64::new(k * h, k * (r - 1) + 1))
}

fn check_resurgence(value: Rational64) -> Result<()> {
    if value < Rational64::from_integer(1) {
        return Err(Error::precondition(format!(
            "resurgence values are at least 1, got {value}"
        )));
    }
    Ok(())
}

/// ρ_a(I + J) = max(ρ_a(I), ρ_a(J)).
pub fn rhoa_of_sum(a: Rational64, b: Rational64) -> Result<Rational64> {
    check_resurgence(a)?;
    check_resurgence(b)?;
    Ok(a.max(b))
}

/// `max(ρ(I), ρ(J)) ≤ ρ(I + J) ≤ ρ(I) + ρ(J)`, as the pair of endpoints.
pub fn rho_bounds_of_sum(a: Rational64, b: Rational64) -> Result<(Rational64, Rational64)> {
    check_resurgence(a)?;
    check_resurgence(b)?;
    Ok((a.max(b), a + b))
}

/// A derived value: exact, a lower bound, or a closed interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundValue {
    Exact(Rational64),
    AtLeast(Rational64),
    Between(Rational64, Rational64),
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Exact(v) => write!(f, "= {v}"),
            BoundValue::AtLeast(v) => write!(f, ">= {v}"),
            BoundValue::Between(lo, hi) => write!(f, "in [{lo}, {hi}]"),
        }
    }
}

/// One line of a bound sheet: the quantity, its value, and the rule used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRow {
    pub quantity: String,
    pub value: BoundValue,
    pub rule: &'static str,
}

pub const RULE_KFOLD: &str = "I^(h) not in I^r implies rho(I^[k]) >= kh/(k(r-1)+1)";
pub const RULE_RHOA_SUM: &str = "rho_a(I+J) = max{rho_a(I), rho_a(J)}";
pub const RULE_RHO_SUM: &str = "max{rho(I), rho(J)} <= rho(I+J) <= rho(I) + rho(J)";

/// Known component values and the bounds derived from them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundSheet {
    /// Known ρ of the two summands.
    pub rho_components: Option<(Rational64, Rational64)>,
    /// Known ρ_a of the two summands.
    pub rhoa_components: Option<(Rational64, Rational64)>,
    /// `(h, r, k)` triples of k-fold bounds.
    pub kfold: Vec<(i64, i64, i64)>,
}

impl BoundSheet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_rho(mut self, a: Rational64, b: Rational64) -> Self {
        self.rho_components = Some((a, b));
        self
    }

    pub fn with_rhoa(mut self, a: Rational64, b: Rational64) -> Self {
        self.rhoa_components = Some((a, b));
        self
    }

    pub fn with_kfold(mut self, h: i64, r: i64, k: i64) -> Self {
        self.kfold.push((h, r, k));
        self
    }

    /// The derived rows, in the order ρ_a of the sum, ρ of the sum, k-fold bounds.
    pub fn rows(&self) -> Result<Vec<BoundRow>> {
        let mut rows = Vec::new();
        if let Some((a, b)) = self.rhoa_components {
            rows.push(BoundRow {
                quantity: "rho_a(I+J)".into(),
                value: BoundValue::Exact(rhoa_of_sum(a, b)?),
                rule: RULE_RHOA_SUM,
            });
        }
        if let Some((a, b)) = self.rho_components {
            let (lo, hi) = rho_bounds_of_sum(a, b)?;
            rows.push(BoundRow {
                quantity: "rho(I+J)".into(),
                value: BoundValue::Between(lo, hi),
                rule: RULE_RHO_SUM,
            });
        }
        for &(h, r, k) in &self.kfold {
            rows.push(BoundRow {
                quantity: format!("rho(I^[{k}]) given I^({h}) not in I^{r}"),
                value: BoundValue::AtLeast(kfold_lower_bound(h, r, k)?),
                rule: RULE_KFOLD,
            });
        }
        Ok(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn kfold_examples() {
        let got: Vec<_> = (1..=4).map(|k| kfold_lower_bound(3, 2, k).unwrap()).collect();
        assert_eq!(got, vec![q(3, 2), q(2, 1), q(9, 4), q(12, 5)]);
        assert_eq!(kfold_lower_bound(7, 3, 1).unwrap(), q(7, 3));
        // all-but-one configuration with N = 2: k(N+1)/(k+1)
        assert_eq!(kfold_lower_bound(3, 2, 5).unwrap(), q(15, 6));
        assert!(kfold_lower_bound(0, 2, 2).is_err());
    }

    #[test]
    fn sum_examples() {
        assert_eq!(rhoa_of_sum(q(4, 3), q(4, 3)).unwrap(), q(4, 3));
        assert_eq!(rho_bounds_of_sum(q(3, 2), q(3, 2)).unwrap(), (q(3, 2), q(3, 1)));
        assert!(rhoa_of_sum(q(1, 2), q(3, 2)).is_err());
        assert!(rho_bounds_of_sum(q(3, 2), q(0, 1)).is_err());
    }

    #[test]
    fn sheet_rows() {
        let rows = BoundSheet::new()
            .with_rhoa(q(4, 3), q(4, 3))
            .with_rho(q(3, 2), q(3, 2))
            .with_kfold(3, 2, 4)
            .rows()
            .unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[2].value, BoundValue::AtLeast(q(12, 5)));
        assert_eq!(rows[1].value.to_string(), "in [3/2, 3]");
    }

    proptest! {
        #[test]
        fn kfold_bound_increases_towards_limit(h in 2i64..20, r in 1i64..10, k in 1i64..50) {
            prop_assume!(h > r);
            let a = kfold_lower_bound(h, r, k).unwrap();
            let b = kfold_lower_bound(h, r, k + 1).unwrap();
            prop_assert!(b > a);
            if r >= 2 {
                prop_assert!(b < q(h, r - 1));
            }
        }

        #[test]
        fn sum_interval_nonempty(an in 1i64..40, ad in 1i64..20, bn in 1i64..40, bd in 1i64..20) {
            let (a, b) = (q(an, ad), q(bn, bd));
            prop_assume!(a >= q(1, 1) && b >= q(1, 1));
            let (lo, hi) = rho_bounds_of_sum(a, b).unwrap();
            prop_assert!(lo < hi);
            prop_assert_eq!(rhoa_of_sum(a, b).unwrap(), lo);
        }
    }
}
