//! Containment experiments: symbolic-versus-ordinary verdicts, resurgence
//! grids, fiber-product verifiers and closed-form bounds.

pub mod bounds;
pub mod containment;
pub mod source;
pub mod verify;

pub use bounds::{kfold_lower_bound, rho_bounds_of_sum, rhoa_of_sum, BoundRow, BoundSheet, BoundValue};
pub use containment::{
    confirm_witness, containment_check, monotonicity_violations, resurgence_grid, rho_lower_bound, symbolic_containment_check, verify_witness,
    ContainmentRecord, GridOptions, GridReport, Provenance, Verdict,
};
pub use source::SymbolicSource;
pub use verify::{
    kfold_noncontainment, product_witness_check, verify_binomial_expansion, verify_union_groebner, KfoldOutcome,
};
