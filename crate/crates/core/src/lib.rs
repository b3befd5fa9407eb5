pub mod calculus;
pub mod closed_set;
pub mod decision;
pub mod error;
pub mod formula;
pub mod geometry;
pub mod io;
pub mod poly;
pub mod tangent;

pub use error::{Error, Result};
