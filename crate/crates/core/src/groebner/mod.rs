//! Gröbner bases and the ideal operations computed from them.

pub mod basis;
pub mod graded;
pub mod ideal;

pub use basis::{buchberger, normal_form, s_polynomial, GroebnerBasis};
pub use graded::{
    choose_method, graded_membership, hilbert_function, macaulay_cells, membership, membership_by, Method,
};
pub use ideal::{colon, eliminate, ideal_equal, ideal_membership, intersect, saturate, Ideal};
