//! Containment verdicts `I^(m) ⊆ I^r` and resurgence grids.

use std::time::{Duration, Instant};

use num_rational::Rational64;
use rayon::prelude::*;

use super::source::SymbolicSource;
use crate::algebra::{Field, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{choose_method, membership_by, Ideal, Method};
use crate::limits::Limits;

/// Outcome of one containment question.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<F: Field> {
    Contained,
    /// `witness` lies in the symbolic power but not in the ordinary power.
    NotContained { witness: Polynomial<F> },
    /// A resource limit stopped the computation; nothing is known.
    Indeterminate { reason: String },
}

/// Whether a record was computed or deduced from a neighbouring cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    /// Deduced from the computed cell `(m, r)`.
    Inferred { m: u32, r: u32 },
}

/// One `(m, r)` verdict with how and how fast it was reached.
#[derive(Clone, Debug)]
pub struct ContainmentRecord<F: Field> {
    pub m: u32,
    pub r: u32,
    pub verdict: Verdict<F>,
    pub method: Method,
    pub elapsed: Duration,
    pub provenance: Provenance,
}

impl<F: Field> ContainmentRecord<F> {
    /// `Some(true)` when contained, `Some(false)` when a witness was found,
    /// `None` when indeterminate.
    pub fn contained(&self) -> Option<bool> {
        match self.verdict {
            Verdict::Contained => Some(true),
            Verdict::NotContained { .. } => Some(false),
            Verdict::Indeterminate { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&Polynomial<F>> {
        match &self.verdict {
            Verdict::NotContained { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn ratio(&self) -> Rational64 {
        Rational64::new(self.m as i64, self.r as i64)
    }

    /// A failure with `m ≥ r`, the only kind that bounds ρ from below.
    pub fn is_significant_failure(&self) -> bool {
        self.m >= self.r && self.contained() == Some(false)
    }

    pub fn is_inferred(&self) -> bool {
        matches!(self.provenance, Provenance::Inferred { .. })
    }
}

fn check_exponents(m: u32, r: u32) -> Result<()> {
    if m == 0 || r == 0 {
        return Err(Error::precondition(format!(
            "containment exponents must be at least 1, got ({m}, {r})"
        )));
    }
    Ok(())
}

/// Decides `a ⊆ b` generator by generator with `method`, or with the method
/// [`choose_method`] picks when `None`. The first generator of `a` (in
/// canonical order) outside `b` is the witness. Resource aborts become an
/// indeterminate verdict rather than an error.
pub fn containment_check<F: Field>(
    a: &Ideal<F>,
    b: &Ideal<F>,
    method: Option<Method>,
    limits: &Limits,
) -> Result<(Verdict<F>, Method)> {
    let method = method.unwrap_or_else(|| choose_method(a.gens(), b, limits));
    let outcome = (|| -> Result<Verdict<F>> {
        for g in a.gens() {
            limits.check_deadline()?;
            if !membership_by(g, b, method, limits)? {
                return Ok(Verdict::NotContained { witness: g.clone() });
            }
        }
        Ok(Verdict::Contained)
    })();
    match outcome {
        Ok(v) => Ok((v, method)),
        Err(e) if e.is_resource() => Ok((Verdict::Indeterminate { reason: e.to_string() }, method)),
        Err(e) => Err(e),
    }
}

/// Decides `I^(m) ⊆ I^r`; see [`containment_check`] for witness selection.
pub fn symbolic_containment_check<F: Field>(
    source: &SymbolicSource<F>,
    m: u32,
    r: u32,
    limits: &Limits,
) -> Result<ContainmentRecord<F>> {
    check_exponents(m, r)?;
    let start = Instant::now();
    let powers = source
        .symbolic_power(m, limits)
        .and_then(|s| Ok((s, source.ordinary_power(r)?)));
    let (verdict, method) = match powers {
        Ok((symbolic, ordinary)) => containment_check(&symbolic, &ordinary, None, limits)?,
        Err(e) if e.is_resource() => (Verdict::Indeterminate { reason: e.to_string() }, Method::Groebner),
        Err(e) => return Err(e),
    };
    Ok(ContainmentRecord {
        m,
        r,
        verdict,
        method,
        elapsed: start.elapsed(),
        provenance: Provenance::Computed,
    })
}

/// Re-checks a non-containment witness from scratch: it must lie in `a` and
/// outside `b`, by each method that is feasible within the limits. Returns
/// the methods that confirmed it; a method that contradicts it is an error.
pub fn confirm_witness<F: Field>(
    witness: &Polynomial<F>,
    a: &Ideal<F>,
    b: &Ideal<F>,
    limits: &Limits,
) -> Result<Vec<Method>> {
    let mut confirmed = Vec::new();
    for method in [Method::Groebner, Method::GradedLinearAlgebra] {
        if method == Method::GradedLinearAlgebra
            && (choose_method([witness], a, limits) != method || choose_method([witness], b, limits) != method)
        {
            continue;
        }
        let inside = membership_by(witness, a, method, limits)?;
        let outside = !membership_by(witness, b, method, limits)?;
        if !(inside && outside) {
            return Err(Error::precondition(format!("witness {witness} fails re-verification by {method}")));
        }
        confirmed.push(method);
    }
    Ok(confirmed)
}

/// [`confirm_witness`] for a failing grid or check record.
pub fn verify_witness<F: Field>(
    source: &SymbolicSource<F>,
    record: &ContainmentRecord<F>,
    limits: &Limits,
) -> Result<Vec<Method>> {
    let witness = record
        .witness()
        .ok_or_else(|| Error::precondition("record has no witness"))?;
    let symbolic = source.symbolic_power(record.m, limits)?;
    let ordinary = source.ordinary_power(record.r)?;
    confirm_witness(witness, &symbolic, &ordinary, limits)
}

/// Grid evaluation options.
#[derive(Clone, Debug, Default)]
pub struct GridOptions {
    /// Skip cells whose verdict follows from an already computed cell.
    pub prune: bool,
    /// A claimed value of the resurgence to compare failing ratios against.
    pub reference: Option<Rational64>,
}

/// All `(m, r)` records of a grid with the evidence they give about ρ(I).
#[derive(Clone, Debug)]
pub struct GridReport<F: Field> {
    pub m_max: u32,
    pub r_max: u32,
    /// Ordered by `m`, then `r`.
    pub records: Vec<ContainmentRecord<F>>,
    /// Largest `m/r` over failing cells with `m ≥ r`, if any.
    pub rho_lower_bound: Option<Rational64>,
    pub reference: Option<Rational64>,
    /// With a reference value: whether no failing ratio exceeds it.
    pub consistent_upper_witnessed: Option<bool>,
    /// Descriptions of monotonicity violations; empty for a sound grid.
    pub violations: Vec<String>,
}

impl<F: Field> GridReport<F> {
    pub fn get(&self, m: u32, r: u32) -> Option<&ContainmentRecord<F>> {
        self.records.iter().find(|c| c.m == m && c.r == r)
    }

    pub fn indeterminate_count(&self) -> usize {
        self.records.iter().filter(|c| c.contained().is_none()).count()
    }

    /// Failing cells attaining the lower bound.
    pub fn extremal_cells(&self) -> Vec<(u32, u32)> {
        match self.rho_lower_bound {
            Some(b) => self
                .records
                .iter()
                .filter(|c| c.is_significant_failure() && c.ratio() == b)
                .map(|c| (c.m, c.r))
                .collect(),
            None => Vec::new(),
        }
    }
}

/// Largest failing ratio among the records with `m ≥ r`. Cells with `m < r`
/// always fail for a proper nonzero ideal and carry no information beyond
/// `ρ ≥ 1`, so they are left out.
pub fn rho_lower_bound<F: Field>(records: &[ContainmentRecord<F>]) -> Option<Rational64> {
    records
        .iter()
        .filter(|c| c.is_significant_failure())
        .map(ContainmentRecord::ratio)
        .max()
}

/// Violations of the two monotonicity rules: containment persists as `m`
/// grows, and failure persists as `r` grows. Indeterminate cells are ignored.
pub fn monotonicity_violations<F: Field>(records: &[ContainmentRecord<F>]) -> Vec<String> {
    let mut out = Vec::new();
    for a in records {
        for b in records {
            if a.r == b.r && b.m > a.m && a.contained() == Some(true) && b.contained() == Some(false) {
                out.push(format!(
                    "({}, {}) contained but ({}, {}) not",
                    a.m, a.r, b.m, b.r
                ));
            }
            if a.m == b.m && b.r > a.r && a.contained() == Some(false) && b.contained() == Some(true) {
                out.push(format!(
                    "({}, {}) fails but ({}, {}) contained",
                    a.m, a.r, b.m, b.r
                ));
            }
        }
    }
    out
}

/// Evaluates `I^(m) ⊆ I^r` over `1 ≤ m ≤ m_max`, `1 ≤ r ≤ r_max`.
///
/// Symbolic and ordinary powers are built concurrently first. Without
/// pruning every cell is then computed concurrently. With pruning, columns
/// are walked in increasing `r` and `m`: a contained cell marks the larger
/// `m` of its column inferred-contained, and a failing cell marks the same
/// `m` in later columns inferred-failed with the same witness.
pub fn resurgence_grid<F: Field>(
    source: &SymbolicSource<F>,
    m_max: u32,
    r_max: u32,
    options: &GridOptions,
    limits: &Limits,
) -> Result<GridReport<F>> {
    check_exponents(m_max, r_max)?;
    let warm: Vec<Result<()>> = (1..=m_max)
        .map(|m| (true, m))
        .chain((1..=r_max).map(|r| (false, r)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(symbolic, e)| {
            if symbolic {
                source.symbolic_power(e, limits).map(drop)
            } else {
                source.ordinary_power(e).map(drop)
            }
        })
        .collect();
    for w in warm {
        match w {
            Err(e) if !e.is_resource() => return Err(e),
            _ => {}
        }
    }

    let mut records = if options.prune {
        pruned_cells(source, m_max, r_max, limits)?
    } else {
        let cells: Vec<(u32, u32)> = (1..=m_max)
            .flat_map(|m| (1..=r_max).map(move |r| (m, r)))
            .collect();
        cells
            .into_par_iter()
            .map(|(m, r)| symbolic_containment_check(source, m, r, limits))
            .collect::<Result<Vec<_>>>()?
    };
    records.sort_by_key(|c| (c.m, c.r));
    let bound = rho_lower_bound(&records);
    Ok(GridReport {
        m_max,
        r_max,
        rho_lower_bound: bound,
        reference: options.reference,
        consistent_upper_witnessed: options
            .reference
            .map(|reference| bound.is_none_or(|b| b <= reference)),
        violations: monotonicity_violations(&records),
        records,
    })
}

fn pruned_cells<F: Field>(
    source: &SymbolicSource<F>,
    m_max: u32,
    r_max: u32,
    limits: &Limits,
) -> Result<Vec<ContainmentRecord<F>>> {
    let mut records: Vec<ContainmentRecord<F>> = Vec::new();
    // failing cell (with its witness) at each m in the previous column
    let mut failed_prev: Vec<Option<(u32, u32, Polynomial<F>)>> = vec![None; m_max as usize + 1];
    for r in 1..=r_max {
        let mut failed_here = vec![None; m_max as usize + 1];
        let mut contained_from: Option<(u32, u32)> = None;
        for m in 1..=m_max {
            let inferred = |verdict, from: (u32, u32)| ContainmentRecord {
                m,
                r,
                verdict,
                method: records
                    .iter()
                    .find(|c| (c.m, c.r) == from)
                    .map_or(Method::Groebner, |c| c.method),
                elapsed: Duration::ZERO,
                provenance: Provenance::Inferred { m: from.0, r: from.1 },
            };
            let record = if let Some(from) = contained_from {
                inferred(Verdict::Contained, from)
            } else if let Some((fm, fr, w)) = failed_prev[m as usize].clone() {
                inferred(Verdict::NotContained { witness: w }, (fm, fr))
            } else {
                symbolic_containment_check(source, m, r, limits)?
            };
            match &record.verdict {
                Verdict::Contained if contained_from.is_none() => contained_from = Some((m, r)),
                Verdict::NotContained { witness } => {
                    let origin = match record.provenance {
                        Provenance::Computed => (m, r),
                        Provenance::Inferred { m, r } => (m, r),
                    };
                    failed_here[m as usize] = Some((origin.0, origin.1, witness.clone()));
                }
                _ => {}
            }
            records.push(record);
        }
        failed_prev = failed_here;
    }
    Ok(records)
}
