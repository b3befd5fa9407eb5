//! Exact rational geometry over the unit cube.
//!
//! Everything here is exact: scalars are [`Rational`] (arbitrary precision,
//! always reduced), hyperplanes are stored with primitive integer
//! coefficients, and no floating point is used.

mod complex;
mod cover;
pub mod linalg;
mod point;
mod polytope;

pub use complex::{Complex, RSimplex};
pub use cover::{uncovered_point, union_contains, union_equals};
pub use point::{rat, rat_int, parse_rational, format_rational, RPoint, RVector, Rational};
pub use polytope::{
    combinations as polytope_combinations, segment_parameter_range, segment_polytope_intersection,
    Halfspace, RPolytope, SegmentHit,
};
