use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: degree {degree} is out of range")]
    Degree { op: &'static str, degree: usize },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("expected dimension {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("generator index {index} outside 1..{dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// Indices are 1-based.
    #[error("not a Lie algebra: Jacobi identity fails on (e{i}, e{j}, e{k})")]
    NotALieAlgebra { i: usize, j: usize, k: usize },

    #[error("structure constants are not antisymmetric in (e{i}, e{j})")]
    NotAntisymmetric { i: usize, j: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("3-form is not positive")]
    NotPositive,

    #[error("exact arithmetic cannot represent the {what}; rerun with the float backend")]
    ExactnessLost { what: &'static str },

    #[error("the G2-structure is not closed")]
    NotClosed,

    #[error("torsion identity failed: {0}")]
    InconsistentTorsion(&'static str),

    #[error("{check}: deviation {deviation:e} exceeds tolerance {tol:e} at point {point:?}, component {component}")]
    ToleranceExceeded { check: &'static str, point: [f64; 7], component: usize, deviation: f64, tol: f64 },

    #[error("invalid configuration: {0}")]
    Config(&'static str),
}
