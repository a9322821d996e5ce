//! Products of a finite median graph with the standard grid `ℤᵏ`, their
//! isometries and finite descriptions of grid minsets.

mod affine;
mod complex;
mod constraints;
mod utvpi;

pub use affine::{l1_distance, GridCycle, SignedAffineMap};
pub use complex::{
    displacement, is_fixed, subdivide_product, Point, ProductComplex, ProductIsometry, SubdividedProduct,
};
pub use constraints::{box_points, ConstraintKind, CycleConstraint, GridConstraintSet};
pub use utvpi::{Functional, System};
