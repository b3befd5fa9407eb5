//! McNaughton functions: continuous piecewise-linear maps `[0,1]ⁿ → [0,1]`
//! with integer affine pieces.

mod affine;
mod construct;
mod function;
mod zeroset;

pub use affine::AffineMap;
pub use construct::{clamped_affine, point_zero_function, segment_zero_function};
pub use function::{compile, Piece, PLFunction};
pub use zeroset::ZeroLocus;
