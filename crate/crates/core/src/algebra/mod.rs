//! Coefficient fields, monomials, term orders, rings and polynomials.

pub mod field;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;

pub use field::{find_root_of_unity, Field, FieldSpec, PrimeField, RationalField};
pub use monomial::{monomial_compare, Exp, Monomial, TermOrder};
pub use parse::{parse_polynomial, PolyExpr};
pub use poly::{leading_term, poly_add, poly_mul, Polynomial, Term};
pub use ring::Ring;
