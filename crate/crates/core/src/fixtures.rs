//! Built-in algebras and forms.

use crate::exterior::{parse_form, KForm};
use crate::liealg::{parse_salamon, LieAlgebra};
use crate::scalar::Scalar;

/// Structure equations of the 7-dimensional almost-nilpotent Lie algebra
/// `(R ⊕ n_{5,2}) ⋊ R` carrying the homogeneous gradient steady soliton.
pub const SOLITON_ALGEBRA: &str = "(0,0,-37,47,2*14+57,-2*24+67,0)";

/// The 5-dimensional 2-step nilpotent algebra `n_{5,2}`.
pub const N52: &str = "(0,0,0,12,13)";

pub const ABELIAN: &str = "(0,0,0,0,0,0,0)";

/// The model positive 3-form; its metric is `Σ e^i ⊗ e^i`.
pub const MODEL_PHI: &str = "e127 + e347 + e567 + e135 - e146 - e236 - e245";

/// Torsion 2-form of the model form on the soliton algebra.
pub const SOLITON_TAU: &str = "2*e12 + 2*e34 - 4*e56";

/// Hodge Laplacian of the model form on the soliton algebra.
pub const SOLITON_LAPLACIAN: &str = "-8*e146 - 8*e245 + 8*e567";

pub fn soliton_algebra<S: Scalar>() -> LieAlgebra<S> {
    parse_salamon(SOLITON_ALGEBRA).expect("built-in algebra")
}

pub fn n52<S: Scalar>() -> LieAlgebra<S> {
    parse_salamon(N52).expect("built-in algebra")
}

pub fn abelian<S: Scalar>() -> LieAlgebra<S> {
    parse_salamon(ABELIAN).expect("built-in algebra")
}

pub fn model_phi<S: Scalar>() -> KForm<S> {
    parse_form(MODEL_PHI).expect("built-in form")
}
