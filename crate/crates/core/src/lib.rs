//! Exact computations with ideals in polynomial rings: Gröbner bases under
//! block orders, symbolic powers of point configurations, fiber-product
//! constructions, and containment experiments between symbolic and ordinary
//! powers.

pub mod algebra;
pub mod error;
pub mod groebner;
pub mod lab;
pub mod limits;
pub mod toolkit;

pub use error::{Error, ResourceKind, Result};
pub use limits::Limits;

/// Library version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
