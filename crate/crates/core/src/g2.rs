//! G2-structures defined by a positive 3-form on a 7-dimensional Lie algebra.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exterior::{KForm, Vector};
use crate::liealg::LieAlgebra;
use crate::linalg::Matrix;
use crate::metric::Metric;
use crate::scalar::Scalar;
use crate::DIM;

/// The metric and orientation induced by a 3-form.
///
/// With `b_ij vol₀ = (e_i ⌟ φ) ∧ (e_j ⌟ φ) ∧ φ` and `vol₀ = e^{1234567}`,
/// `g = b / (6 s)` where `s⁹ = det b / 6⁷`. The sign of `s` fixes the
/// orientation.
pub fn metric_from_phi<S: Scalar>(phi: &KForm<S>) -> Result<Metric<S>> {
    if phi.degree() != 3 {
        return Err(Error::Degree { op: "metric_from_phi", degree: phi.degree() });
    }
    let b = b_matrix(phi)?;
    // b is definite for positive φ, so its diagonal has one strict sign and
    // 0 < det b / Π b_ii <= 1
    let mut diagonal = S::one();
    for i in 0..DIM {
        if b[(i, i)].is_zero() {
            return Err(Error::NotPositive);
        }
        diagonal = diagonal * b[(i, i)].clone();
    }
    let det = b.determinant();
    let ratio = det.clone() / diagonal;
    if !ratio.is_positive() || ratio.is_negligible() {
        return Err(Error::NotPositive);
    }
    let six = S::from_i64(6);
    let s = (det / S::from_i64(6i64.pow(7))).root(9).ok_or(Error::ExactnessLost { what: "ninth root of det b" })?;
    let gram = b.scale(&(S::one() / (six * s.clone())));
    let orientation = if s.is_negative() { -1 } else { 1 };
    Metric::with_orientation(gram, orientation)
}

/// The symmetric bilinear form `b` with `b_ij e^{1234567} = ι_iφ ∧ ι_jφ ∧ φ`.
pub fn b_matrix<S: Scalar>(phi: &KForm<S>) -> Result<Matrix<S>> {
    let contractions: Vec<KForm<S>> =
        (0..DIM).map(|i| phi.interior(&Vector::basis(i))).collect::<Result<_>>()?;
    let with_phi: Vec<KForm<S>> = contractions.iter().map(|c| c.wedge(phi)).collect::<Result<_>>()?;
    let mut b = Matrix::zeros(DIM, DIM);
    for i in 0..DIM {
        for j in i..DIM {
            let v = contractions[i].wedge(&with_phi[j])?.top_coefficient();
            b[(j, i)] = v.clone();
            b[(i, j)] = v;
        }
    }
    Ok(b)
}

/// A positive 3-form with its induced metric and `⋆φ`.
#[derive(Clone, Debug)]
pub struct G2Structure<S> {
    phi: KForm<S>,
    metric: Metric<S>,
    star_phi: KForm<S>,
}

impl<S: Scalar> G2Structure<S> {
    pub fn new(phi: KForm<S>) -> Result<Self> {
        let metric = metric_from_phi(&phi)?;
        let star_phi = metric.hodge_star(&phi);
        Ok(Self { phi, metric, star_phi })
    }

    pub fn phi(&self) -> &KForm<S> {
        &self.phi
    }

    pub fn metric(&self) -> &Metric<S> {
        &self.metric
    }

    pub fn star_phi(&self) -> &KForm<S> {
        &self.star_phi
    }
}

fn require_dim7<S: Scalar>(alg: &LieAlgebra<S>) -> Result<()> {
    if alg.dim() != DIM {
        return Err(Error::Dimension { expected: DIM, found: alg.dim() });
    }
    Ok(())
}

/// `d` on left-invariant forms. A top-degree form has no `(k+1)`-form to map to,
/// so its differential is returned as the zero 7-form.
pub fn exterior_derivative<S: Scalar>(alg: &LieAlgebra<S>, a: &KForm<S>) -> Result<KForm<S>> {
    if a.degree() == DIM {
        require_dim7(alg)?;
        return Ok(KForm::zero(DIM));
    }
    alg.ce_differential(a)
}

/// `d* = (-1)^k ⋆ d ⋆` on k-forms.
pub fn coderivative<S: Scalar>(alg: &LieAlgebra<S>, g: &Metric<S>, a: &KForm<S>) -> Result<KForm<S>> {
    require_dim7(alg)?;
    let k = a.degree();
    if k == 0 {
        return Err(Error::Degree { op: "coderivative", degree: 0 });
    }
    let inner = alg.ce_differential(&g.hodge_star(a))?;
    let out = g.hodge_star(&inner);
    Ok(if k % 2 == 0 { out } else { -out })
}

/// `Δ = d d* + d* d`.
pub fn hodge_laplacian<S: Scalar>(alg: &LieAlgebra<S>, g: &Metric<S>, a: &KForm<S>) -> Result<KForm<S>> {
    require_dim7(alg)?;
    let k = a.degree();
    let mut out = KForm::zero(k);
    if k > 0 {
        out = out + alg.ce_differential(&coderivative(alg, g, a)?)?;
    }
    if k < DIM {
        out = out + coderivative(alg, g, &alg.ce_differential(a)?)?;
    }
    Ok(out)
}

/// Intrinsic torsion of a closed G2-structure.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionData<S> {
    /// The torsion 2-form `τ = d*φ`.
    pub tau: KForm<S>,
    /// `T` with `τ = g(T·,·)`; column `j` holds `T e_j`.
    pub endomorphism: Matrix<S>,
    /// `t(e_i, e_j) = g(T² e_i, e_j)`.
    pub t: Matrix<S>,
    /// `|τ|²`.
    pub norm_sq: S,
}

/// The 2-form `τ(e_i, e_j)` as an antisymmetric matrix.
pub fn two_form_matrix<S: Scalar>(tau: &KForm<S>) -> Matrix<S> {
    debug_assert_eq!(tau.degree(), 2);
    let mut a = Matrix::zeros(DIM, DIM);
    for (m, c) in tau.terms() {
        let idx = m.indices();
        a[(idx[0], idx[1])] = c.clone();
        a[(idx[1], idx[0])] = -c.clone();
    }
    a
}

/// The endomorphism `T` with `τ = g(T·,·)`.
pub fn skew_endomorphism<S: Scalar>(tau: &KForm<S>, g: &Metric<S>) -> Matrix<S> {
    g.inverse().mul(&two_form_matrix(tau)).scale(&-S::one())
}

pub fn torsion<S: Scalar>(alg: &LieAlgebra<S>, s: &G2Structure<S>) -> Result<TorsionData<S>> {
    require_dim7(alg)?;
    if !alg.ce_differential(&s.phi)?.is_negligible() {
        return Err(Error::NotClosed);
    }
    let g = &s.metric;
    let tau = coderivative(alg, g, &s.phi)?;
    let d_star_phi = alg.ce_differential(&s.star_phi)?;
    let tau_phi = tau.wedge(&s.phi)?;
    if !d_star_phi.approx_eq(&tau_phi) {
        return Err(Error::InconsistentTorsion("d⋆φ ≠ τ∧φ"));
    }
    if !tau_phi.approx_eq(&-g.hodge_star(&tau)) {
        return Err(Error::InconsistentTorsion("τ∧φ ≠ −⋆τ"));
    }
    let endomorphism = skew_endomorphism(&tau, g);
    let t = endomorphism.mul(&endomorphism).transpose().mul(g.gram());
    let norm_sq = g.norm_sq(&tau);
    Ok(TorsionData { tau, endomorphism, t, norm_sq })
}

/// `dτ − |τ|²φ/6 − ⋆(τ∧τ)/6`; zero exactly for extremally Ricci pinched
/// structures.
pub fn erp_residual<S: Scalar>(alg: &LieAlgebra<S>, s: &G2Structure<S>) -> Result<KForm<S>> {
    let td = torsion(alg, s)?;
    let sixth = S::from_ratio(1, 6);
    let d_tau = alg.ce_differential(&td.tau)?;
    let tau_sq = td.tau.wedge(&td.tau)?;
    let rhs = s.phi.scale(&(td.norm_sq * sixth.clone())) + s.metric.hodge_star(&tau_sq).scale(&sixth);
    Ok(d_tau - rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureClass {
    NotPositive,
    NotClosed,
    ClosedWithTorsion,
    TorsionFree,
}

impl StructureClass {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::NotPositive => "NotPositive",
            Self::NotClosed => "NotClosed",
            Self::ClosedWithTorsion => "ClosedWithTorsion",
            Self::TorsionFree => "TorsionFree",
        }
    }
}

/// Positivity, then `dφ = 0`, then `d⋆φ = 0`. Errors other than a failed
/// positivity test (wrong degree, wrong dimension, lost exactness) are
/// passed through.
pub fn classify_structure<S: Scalar>(alg: &LieAlgebra<S>, phi: &KForm<S>) -> Result<StructureClass> {
    require_dim7(alg)?;
    let s = match G2Structure::new(phi.clone()) {
        Ok(s) => s,
        Err(Error::NotPositive) => return Ok(StructureClass::NotPositive),
        Err(e) => return Err(e),
    };
    if !alg.ce_differential(&s.phi)?.is_negligible() {
        return Ok(StructureClass::NotClosed);
    }
    if alg.ce_differential(&s.star_phi)?.is_negligible() {
        Ok(StructureClass::TorsionFree)
    } else {
        Ok(StructureClass::ClosedWithTorsion)
    }
}
