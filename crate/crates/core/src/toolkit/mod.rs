//! Constructions on ideals: powers, point configurations, symbolic powers,
//! product rings and the Fermat family.

pub mod fermat;
pub mod points;
pub mod powers;
pub mod product;

pub use fermat::{fermat_ideal, fermat_points, fermat_witness};
pub use points::{all_but_one_points, point_ideal, points_defining_ideal, rational_points, PointSet};
pub use powers::{ideal_power, ideal_product, ideal_sum, symbolic_power_points, symbolic_power_saturation};
pub use product::{extend_to_block, fiber_sum, kfold, product_of_factors, product_sum, ProductRingMap};
