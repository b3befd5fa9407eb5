use thiserror::Error;

use crate::geometry::RPoint;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("variable index 0 is not allowed (variables are x1, x2, ...)")]
    ZeroVariable,
    #[error("region mismatch: complexes do not cover the same set")]
    RegionMismatch,
    #[error("direction points outside the cube at the given point")]
    DirectionLeavesCube,
    #[error("point outside the unit cube")]
    OutsideCube,
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("zeroset verification failed: {0}")]
    ZerosetCheck(String),
    #[error("hypothesis violated at {point}: f = {value} but g vanishes there")]
    Hypothesis { point: RPoint, value: String },
    #[error("empty closed set")]
    EmptySet,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
