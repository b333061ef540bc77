//! Levi-Civita connection of a left-invariant metric and divergence of
//! left-invariant symmetric 2-tensors.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exterior::Vector;
use crate::g2::{torsion, G2Structure};
use crate::liealg::LieAlgebra;
use crate::linalg::Matrix;
use crate::metric::Metric;
use crate::scalar::Scalar;
use crate::DIM;

/// Christoffel symbols in the frame: `∇_{e_i} e_j = Σ_l Γ^l_{ij} e_l`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection<S> {
    gamma: Vec<S>,
}

impl<S: Scalar> Connection<S> {
    /// `Γ^l_{ij}`.
    pub fn gamma(&self, i: usize, j: usize, l: usize) -> &S {
        &self.gamma[(i * DIM + j) * DIM + l]
    }

    /// `∇_{e_i} e_j`.
    pub fn covariant(&self, i: usize, j: usize) -> Vector<S> {
        Vector(core::array::from_fn(|l| self.gamma(i, j, l).clone()))
    }

    /// `∇_{e_i} Y` for a left-invariant `Y`.
    pub fn derivative(&self, i: usize, y: &Vector<S>) -> Vector<S> {
        let mut out = Vector::zero();
        for (m, ym) in y.0.iter().enumerate() {
            if ym.is_zero() {
                continue;
            }
            out = out.add(&self.covariant(i, m).scale(ym));
        }
        out
    }

    /// `∇_X Y` for left-invariant `X`, `Y`.
    pub fn nabla(&self, x: &Vector<S>, y: &Vector<S>) -> Vector<S> {
        let mut out = Vector::zero();
        for (i, xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            out = out.add(&self.derivative(i, y).scale(xi));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.iter().all(Scalar::is_negligible)
    }

    /// First `(i, j, k)` with `⟨∇_i e_j, e_k⟩ + ⟨e_j, ∇_i e_k⟩ ≠ 0`.
    pub fn compatibility_violation(&self, g: &Metric<S>) -> Option<(usize, usize, usize)> {
        for i in 0..DIM {
            for j in 0..DIM {
                let a = self.covariant(i, j);
                for k in 0..DIM {
                    let b = self.covariant(i, k);
                    let v = g.apply(&a, &Vector::basis(k)) + g.apply(&Vector::basis(j), &b);
                    if !v.is_negligible() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// First `(i, j)` with `∇_i e_j − ∇_j e_i ≠ [e_i, e_j]`.
    pub fn torsion_violation(&self, alg: &LieAlgebra<S>) -> Option<(usize, usize)> {
        for i in 0..DIM {
            for j in 0..DIM {
                let lhs = self.covariant(i, j).sub(&self.covariant(j, i));
                if !lhs.approx_eq(&alg.bracket_basis(i, j)) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Koszul formula for left-invariant fields:
/// `g(∇_i e_j, e_k) = ½(g([e_i,e_j],e_k) − g([e_j,e_k],e_i) + g([e_k,e_i],e_j))`,
/// then raised with `g⁻¹`.
pub fn koszul<S: Scalar>(alg: &LieAlgebra<S>, g: &Metric<S>) -> Result<Connection<S>> {
    if alg.dim() != DIM {
        return Err(Error::Dimension { expected: DIM, found: alg.dim() });
    }
    let br: Vec<Vector<S>> = (0..DIM * DIM).map(|n| alg.bracket_basis(n / DIM, n % DIM)).collect();
    let b = |i: usize, j: usize| &br[i * DIM + j];
    let e = Vector::<S>::basis;
    let half = S::from_ratio(1, 2);
    let mut gamma = alloc::vec![S::zero(); DIM * DIM * DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            let lowered: Vec<S> = (0..DIM)
                .map(|k| {
                    let v = g.apply(b(i, j), &e(k)) - g.apply(b(j, k), &e(i)) + g.apply(b(k, i), &e(j));
                    v * half.clone()
                })
                .collect();
            let raised = g.inverse().mul_vec(&lowered);
            for (l, v) in raised.into_iter().enumerate() {
                gamma[(i * DIM + j) * DIM + l] = v;
            }
        }
    }
    Ok(Connection { gamma })
}

/// A left-invariant symmetric 2-tensor, `t(e_i, e_j)` in the frame.
#[derive(Clone, Debug, PartialEq)]
pub struct Sym2Tensor<S> {
    matrix: Matrix<S>,
}

impl<S: Scalar> Sym2Tensor<S> {
    pub fn new(matrix: Matrix<S>) -> Result<Self> {
        if matrix.rows() != DIM || matrix.cols() != DIM {
            return Err(Error::Dimension { expected: DIM, found: matrix.rows() });
        }
        if !matrix.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }
}

/// Which contraction produced a divergence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivergenceRoute {
    /// `Σ_i g(∇_i(S e_i) − S(∇_i e_i), ·)` over an orthonormal frame, with
    /// `t = g(S·,·)`.
    Orthonormal,
    /// `Σ_{ab} g^{ab} (∇_a t)(e_b, ·)`, used when the frame is not orthonormal.
    Contracted,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Divergence<S> {
    /// `div(t)(e_c)` for `c = 1..7`.
    pub components: Vector<S>,
    pub route: DivergenceRoute,
}

impl<S: Scalar> Divergence<S> {
    pub fn is_zero(&self) -> bool {
        self.components.is_zero()
    }
}

/// Divergence of `t`, via the orthonormal-frame formula when `g` is the
/// identity in the frame and the general contraction otherwise.
pub fn divergence_sym2<S: Scalar>(g: &Metric<S>, conn: &Connection<S>, t: &Sym2Tensor<S>) -> Divergence<S> {
    if g.is_orthonormal() {
        Divergence { components: divergence_orthonormal(g, conn, t), route: DivergenceRoute::Orthonormal }
    } else {
        Divergence { components: divergence_contracted(g, conn, t), route: DivergenceRoute::Contracted }
    }
}

/// `Σ_i g(∇_i(S e_i) − S(∇_i e_i), e_c)` with `S = g⁻¹ t`.
pub fn divergence_orthonormal<S: Scalar>(g: &Metric<S>, conn: &Connection<S>, t: &Sym2Tensor<S>) -> Vector<S> {
    let endo = g.inverse().mul(&t.matrix);
    let mut acc = Vector::zero();
    for i in 0..DIM {
        let se_i = Vector::from_slice(&endo.column(i));
        let first = conn.derivative(i, &se_i);
        let second = Vector::from_slice(&endo.mul_vec(&conn.covariant(i, i).0));
        acc = acc.add(&first.sub(&second));
    }
    Vector(core::array::from_fn(|c| g.apply(&acc, &Vector::basis(c))))
}

/// `Σ_{ab} g^{ab} (−Σ_l Γ^l_{ab} t_{lc} − Σ_l Γ^l_{ac} t_{bl})`.
pub fn divergence_contracted<S: Scalar>(g: &Metric<S>, conn: &Connection<S>, t: &Sym2Tensor<S>) -> Vector<S> {
    let gi = g.inverse();
    let tm = &t.matrix;
    Vector(core::array::from_fn(|c| {
        let mut sum = S::zero();
        for a in 0..DIM {
            for b in 0..DIM {
                let w = &gi[(a, b)];
                if w.is_zero() {
                    continue;
                }
                let mut inner = S::zero();
                for l in 0..DIM {
                    inner = inner
                        - conn.gamma(a, b, l).clone() * tm[(l, c)].clone()
                        - conn.gamma(a, c, l).clone() * tm[(b, l)].clone();
                }
                sum = sum + w.clone() * inner;
            }
        }
        sum
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trichotomy {
    /// `t_φ` is divergence-free: the metric splits as a product.
    DivergenceFree,
    /// `div t_φ ≠ 0`: the one-dimensional extension branch.
    NotDivergenceFree,
}

impl Trichotomy {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::DivergenceFree => "DivergenceFree",
            Self::NotDivergenceFree => "NotDivergenceFree",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrichotomyReport<S> {
    pub verdict: Trichotomy,
    pub divergence: Divergence<S>,
}

/// Divergence test on an arbitrary symmetric tensor.
pub fn trichotomy_for<S: Scalar>(g: &Metric<S>, conn: &Connection<S>, t: &Sym2Tensor<S>) -> TrichotomyReport<S> {
    let divergence = divergence_sym2(g, conn, t);
    let verdict = if divergence.is_zero() { Trichotomy::DivergenceFree } else { Trichotomy::NotDivergenceFree };
    TrichotomyReport { verdict, divergence }
}

/// Divergence test on `t_φ = g(T²·,·)` of a closed structure.
pub fn trichotomy_test<S: Scalar>(alg: &LieAlgebra<S>, s: &G2Structure<S>) -> Result<TrichotomyReport<S>> {
    let td = torsion(alg, s)?;
    let conn = koszul(alg, s.metric())?;
    Ok(trichotomy_for(s.metric(), &conn, &Sym2Tensor::new(td.t)?))
}
