//! Laplacian solitons `Δφ = λφ + L_X φ` with left-invariant `X`.

use alloc::vec::Vec;

use crate::charts;
use crate::error::Result;
use crate::exterior::{KForm, Vector};
use crate::g2::{hodge_laplacian, G2Structure};
use crate::liealg::LieAlgebra;
use crate::linalg::Matrix;
use crate::metric::{inner_product, Metric};
use crate::scalar::Scalar;
use crate::DIM;

/// `L_X a = d(ι_X a) + ι_X(da)`.
pub fn lie_derivative<S: Scalar>(alg: &LieAlgebra<S>, x: &Vector<S>, a: &KForm<S>) -> Result<KForm<S>> {
    let mut out = KForm::zero(a.degree());
    if a.degree() > 0 {
        out = out + alg.ce_differential(&a.interior(x)?)?;
    }
    if a.degree() < alg.dim() {
        out = out + alg.ce_differential(a)?.interior(x)?;
    }
    Ok(out)
}

pub fn lie_derivative_phi<S: Scalar>(alg: &LieAlgebra<S>, x: &Vector<S>, phi: &KForm<S>) -> Result<KForm<S>> {
    lie_derivative(alg, x, phi)
}

/// `Δφ − λφ − L_X φ`.
pub fn soliton_residual<S: Scalar>(alg: &LieAlgebra<S>, s: &G2Structure<S>, lambda: &S, x: &Vector<S>) -> Result<KForm<S>> {
    let lap = hodge_laplacian(alg, s.metric(), s.phi())?;
    Ok(lap - s.phi().scale(lambda) - lie_derivative(alg, x, s.phi())?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolitonType {
    Expanding,
    Steady,
    Shrinking,
    NotSoliton,
}

impl SolitonType {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Expanding => "Expanding",
            Self::Steady => "Steady",
            Self::Shrinking => "Shrinking",
            Self::NotSoliton => "NotSoliton",
        }
    }
}

/// A primitive `f = slope · x_k + b` in the global chart.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartPrimitive<S> {
    /// 0-based coordinate index.
    pub coordinate: usize,
    pub slope: S,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GradientVerdict<S> {
    Gradient { primitive: Option<ChartPrimitive<S>> },
    NotGradient,
}

impl<S> GradientVerdict<S> {
    pub fn is_gradient(&self) -> bool {
        matches!(self, Self::Gradient { .. })
    }
}

/// `X` is a gradient on the simply connected group iff `d(X♭) = 0`.
pub fn gradient_check<S: Scalar>(alg: &LieAlgebra<S>, g: &Metric<S>, x: &Vector<S>) -> Result<GradientVerdict<S>> {
    let flat = g.flat(x);
    if !alg.ce_differential(&flat)?.is_negligible() {
        return Ok(GradientVerdict::NotGradient);
    }
    let support: Vec<_> = flat.terms().filter(|(_, c)| !c.is_negligible()).collect();
    let primitive = match support.as_slice() {
        [(m, c)] => {
            let k = m.indices()[0];
            charts::exact_covector(alg, k).map(|(coordinate, sign)| ChartPrimitive {
                coordinate,
                slope: if sign > 0 { (*c).clone() } else { -(*c).clone() },
            })
        }
        _ => None,
    };
    Ok(GradientVerdict::Gradient { primitive })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolitonCertificate<S> {
    pub lambda: S,
    pub x: Vector<S>,
    pub residual: KForm<S>,
    /// `|Δφ − λφ − L_X φ|²` in the metric of `φ`.
    pub residual_norm_sq: S,
    pub soliton_type: SolitonType,
    /// Basis of `{(μ, Y) : μφ + L_Y φ = 0}`; the minimizers are the returned
    /// `(λ, X)` plus this span.
    pub kernel: Vec<(S, Vector<S>)>,
    /// `None` when the residual does not vanish.
    pub gradient: Option<GradientVerdict<S>>,
}

/// Least squares for `(λ, X)` in the metric of `φ`; among minimizers, the
/// smallest `|λ|`, then the smallest `|X|_g`.
pub fn soliton_solve<S: Scalar>(alg: &LieAlgebra<S>, s: &G2Structure<S>) -> Result<SolitonCertificate<S>> {
    let g = s.metric();
    let target = hodge_laplacian(alg, g, s.phi())?;
    let mut columns = Vec::with_capacity(DIM + 1);
    columns.push(s.phi().clone());
    for i in 0..DIM {
        columns.push(lie_derivative(alg, &Vector::basis(i), s.phi())?);
    }
    let n = columns.len();
    let gram = Matrix::from_fn(n, n, |a, b| inner_product(&columns[a], &columns[b], g).expect("3-forms"));
    let rhs: Vec<S> = columns.iter().map(|c| inner_product(c, &target, g).expect("3-forms")).collect();
    let mut p = gram.solve_any(&rhs).expect("normal equations are consistent");
    let kernel = gram.kernel();

    let mut directions = kernel.clone();
    if let Some(pos) = directions.iter().position(|k| !k[0].is_negligible()) {
        let pivot = directions.remove(pos);
        let shift = p[0].clone() / pivot[0].clone();
        p = axpy(&p, &-shift, &pivot);
        directions = directions
            .into_iter()
            .map(|k| {
                let f = k[0].clone() / pivot[0].clone();
                axpy(&k, &-f, &pivot)
            })
            .collect();
    }

    if !directions.is_empty() {
        let xp = Vector::from_slice(&p[1..]);
        let xs: Vec<Vector<S>> = directions.iter().map(|k| Vector::from_slice(&k[1..])).collect();
        let m = Matrix::from_fn(xs.len(), xs.len(), |a, b| g.apply(&xs[a], &xs[b]));
        let r: Vec<S> = xs.iter().map(|v| -g.apply(v, &xp)).collect();
        let c = m.solve_any(&r).expect("kernel directions are independent");
        for (k, ck) in directions.iter().zip(c) {
            p = axpy(&p, &ck, k);
        }
    }

    let lambda = p[0].clone();
    let x = Vector::from_slice(&p[1..]);
    let residual = soliton_residual(alg, s, &lambda, &x)?;
    let residual_norm_sq = g.norm_sq(&residual);
    let solved = residual.is_negligible();
    let soliton_type = if !solved {
        SolitonType::NotSoliton
    } else if lambda.is_positive() {
        SolitonType::Expanding
    } else if lambda.is_negative() {
        SolitonType::Shrinking
    } else {
        SolitonType::Steady
    };
    let gradient = if solved { Some(gradient_check(alg, g, &x)?) } else { None };
    let kernel = kernel.into_iter().map(|k| (k[0].clone(), Vector::from_slice(&k[1..]))).collect();
    Ok(SolitonCertificate { lambda, x, residual, residual_norm_sq, soliton_type, kernel, gradient })
}

fn axpy<S: Scalar>(y: &[S], a: &S, x: &[S]) -> Vec<S> {
    y.iter().zip(x).map(|(yi, xi)| yi.clone() + a.clone() * xi.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::parse_form;
    use crate::fixtures;
    use crate::scalar::Rational;

    type Q = Rational;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    #[test]
    fn lie_derivative_along_e7() {
        let alg = fixtures::soliton_algebra::<Q>();
        let x = Vector::basis(6).scale(&q(-4));
        let l = lie_derivative_phi(&alg, &x, &fixtures::model_phi()).unwrap();
        assert_eq!(l, parse_form(fixtures::SOLITON_LAPLACIAN).unwrap());
    }

    #[test]
    fn residuals() {
        let alg = fixtures::soliton_algebra::<Q>();
        let s = G2Structure::new(fixtures::model_phi()).unwrap();
        let x = Vector::basis(6).scale(&q(-4));
        assert!(soliton_residual(&alg, &s, &q(0), &x).unwrap().is_zero());
        let r = soliton_residual(&alg, &s, &q(0), &Vector::zero()).unwrap();
        assert_eq!(r, parse_form(fixtures::SOLITON_LAPLACIAN).unwrap());
        assert!(soliton_residual(&fixtures::abelian(), &s, &q(0), &Vector::zero()).unwrap().is_zero());
    }

    #[test]
    fn solve_recovers_steady_gradient_soliton() {
        let alg = fixtures::soliton_algebra::<Q>();
        let s = G2Structure::new(fixtures::model_phi()).unwrap();
        let cert = soliton_solve(&alg, &s).unwrap();
        assert_eq!(cert.lambda, q(0));
        assert_eq!(cert.x, Vector::basis(6).scale(&q(-4)));
        assert!(cert.residual.is_zero());
        assert_eq!(cert.residual_norm_sq, q(0));
        assert_eq!(cert.soliton_type, SolitonType::Steady);
        let primitive = ChartPrimitive { coordinate: 6, slope: q(4) };
        assert_eq!(cert.gradient, Some(GradientVerdict::Gradient { primitive: Some(primitive) }));
    }

    #[test]
    fn torsion_free_solve_is_trivial() {
        let s = G2Structure::new(fixtures::model_phi::<Q>()).unwrap();
        let cert = soliton_solve(&fixtures::abelian(), &s).unwrap();
        assert_eq!(cert.lambda, q(0));
        assert!(cert.x.is_zero());
        assert_eq!(cert.kernel.len(), 7);
        assert_eq!(cert.soliton_type, SolitonType::Steady);
    }

    #[test]
    fn gradient_criterion() {
        let alg = fixtures::soliton_algebra::<Q>();
        let g = Metric::identity();
        assert_eq!(gradient_check(&alg, &g, &Vector::basis(4)).unwrap(), GradientVerdict::NotGradient);
        let ab = fixtures::abelian::<Q>();
        assert!(gradient_check(&ab, &g, &Vector::basis(4)).unwrap().is_gradient());
    }
}
