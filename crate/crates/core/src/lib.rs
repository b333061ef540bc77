//! Left-invariant G2-structures on 7-dimensional Lie algebras.
//!
//! The crate covers sparse exterior calculus over `e^1..e^7`, the
//! Chevalley–Eilenberg differential of a Lie algebra given by structure
//! constants, the metric, Hodge star, torsion and Hodge Laplacian of a
//! positive 3-form, the Levi-Civita connection of a left-invariant metric,
//! Laplacian-soliton certificates, a fixed-step integrator for the Laplacian
//! flow, and finite-difference checks on an explicit matrix group.
//!
//! All algebra is generic over a [`Scalar`] backend: exact [`Rational`]s or
//! `f64`. The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod charts;
pub mod connection;
pub mod error;
pub mod exterior;
pub mod fixtures;
pub mod flow;
pub mod g2;
pub mod liealg;
pub mod linalg;
pub mod metric;
pub mod scalar;
pub mod soliton;
mod text;

/// Dimension of the underlying Lie algebras.
pub const DIM: usize = 7;

pub use error::{Error, Result};
pub use exterior::{KForm, MultiIndex, Vector};
pub use liealg::LieAlgebra;
pub use metric::Metric;
pub use scalar::{Rational, Scalar};
