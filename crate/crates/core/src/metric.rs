//! Left-invariant Riemannian metrics in the frame `e_1..e_7`, the induced
//! pairing on k-forms, and the Hodge star.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exterior::{KForm, MultiIndex, Vector};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::DIM;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    Identity,
    Diagonal,
    General,
}

/// A positive-definite symmetric bilinear form on the frame, with its
/// inverse, determinant and oriented volume form cached.
#[derive(Clone, Debug)]
pub struct Metric<S> {
    gram: Matrix<S>,
    inverse: Matrix<S>,
    det: S,
    sqrt_det: S,
    orientation: i8,
    vol: KForm<S>,
    shape: Shape,
    // compound matrices of the inverse Gram matrix, one per degree, indexed by lex rank
    compounds: Vec<Matrix<S>>,
}

impl<S: Scalar> Metric<S> {
    /// `g = Σ e^i ⊗ e^i`, positively oriented.
    pub fn identity() -> Self {
        Self::new(Matrix::identity(DIM)).expect("identity metric")
    }

    pub fn new(gram: Matrix<S>) -> Result<Self> {
        Self::with_orientation(gram, 1)
    }

    /// `orientation` is `+1` when `e^{1234567}` is positive, `-1` otherwise.
    pub fn with_orientation(gram: Matrix<S>, orientation: i8) -> Result<Self> {
        if gram.rows() != DIM || gram.cols() != DIM {
            return Err(Error::Dimension { expected: DIM, found: gram.rows() });
        }
        if !gram.is_positive_definite() {
            return Err(Error::NotPositive);
        }
        let det = gram.determinant();
        let sqrt_det = det.root(2).ok_or(Error::ExactnessLost { what: "square root of det g" })?;
        let inverse = gram.inverse().ok_or(Error::NotPositive)?;
        let shape = if gram.is_identity() {
            Shape::Identity
        } else if gram.is_diagonal() {
            Shape::Diagonal
        } else {
            Shape::General
        };
        let orientation = if orientation < 0 { -1 } else { 1 };
        let signed = if orientation < 0 { -sqrt_det.clone() } else { sqrt_det.clone() };
        let vol = KForm::term(MultiIndex::TOP, signed);
        let compounds = if shape == Shape::General {
            (0..=DIM).map(|k| compound(&inverse, k)).collect()
        } else {
            Vec::new()
        };
        Ok(Self { gram, inverse, det, sqrt_det, orientation, vol, shape, compounds })
    }

    pub fn gram(&self) -> &Matrix<S> {
        &self.gram
    }

    pub fn inverse(&self) -> &Matrix<S> {
        &self.inverse
    }

    pub fn det(&self) -> &S {
        &self.det
    }

    pub fn sqrt_det(&self) -> &S {
        &self.sqrt_det
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    /// The Riemannian volume form.
    pub fn vol(&self) -> &KForm<S> {
        &self.vol
    }

    /// Whether the frame is orthonormal for this metric.
    pub fn is_orthonormal(&self) -> bool {
        self.shape == Shape::Identity
    }

    /// `g(x, y)`.
    pub fn apply(&self, x: &Vector<S>, y: &Vector<S>) -> S {
        let gy = self.gram.mul_vec(&y.0);
        crate::linalg::dot(&x.0, &gy)
    }

    /// `x♭ = g(x, ·)` as a 1-form.
    pub fn flat(&self, x: &Vector<S>) -> KForm<S> {
        let coeffs = self.gram.mul_vec(&x.0);
        KForm::from_dense(1, &coeffs)
    }

    /// `α♯`, the vector metrically dual to a 1-form.
    pub fn sharp(&self, alpha: &KForm<S>) -> Result<Vector<S>> {
        if alpha.degree() != 1 {
            return Err(Error::Degree { op: "sharp", degree: alpha.degree() });
        }
        Ok(Vector::from_slice(&self.inverse.mul_vec(&alpha.to_dense())))
    }

    /// `⟨e^I, e^J⟩_g = det(g^{i_p j_q})`.
    pub fn pair_monomials(&self, i: MultiIndex, j: MultiIndex) -> S {
        match self.shape {
            Shape::Identity => {
                if i == j {
                    S::one()
                } else {
                    S::zero()
                }
            }
            Shape::Diagonal => {
                if i == j {
                    i.iter().fold(S::one(), |acc, k| acc * self.inverse[(k, k)].clone())
                } else {
                    S::zero()
                }
            }
            Shape::General => self.compounds[i.degree()][(i.lex_rank(), j.lex_rank())].clone(),
        }
    }

    /// `|a|²`.
    pub fn norm_sq(&self, a: &KForm<S>) -> S {
        inner_product(a, a, self).expect("same degree")
    }

    /// Hodge star: the unique `⋆a` of degree `7 - k` with
    /// `b ∧ ⋆a = ⟨b, a⟩ vol` for every k-form `b`.
    pub fn hodge_star(&self, a: &KForm<S>) -> KForm<S> {
        let k = a.degree();
        let mut out = KForm::zero(DIM - k);
        let scale = if self.orientation < 0 { -self.sqrt_det.clone() } else { self.sqrt_det.clone() };
        for (i, c) in a.terms() {
            match self.shape {
                Shape::Identity | Shape::Diagonal => {
                    let pair = self.pair_monomials(i, i);
                    let comp = i.complement();
                    let sign = i.wedge_sign(comp).expect("disjoint");
                    let v = c.clone() * pair * scale.clone();
                    out.accumulate(comp, if sign > 0 { v } else { -v });
                }
                Shape::General => {
                    for kk in MultiIndex::all_of_degree(k) {
                        let pair = self.pair_monomials(i, kk);
                        if pair.is_zero() {
                            continue;
                        }
                        let comp = kk.complement();
                        let sign = kk.wedge_sign(comp).expect("disjoint");
                        let v = c.clone() * pair * scale.clone();
                        out.accumulate(comp, if sign > 0 { v } else { -v });
                    }
                }
            }
        }
        out
    }
}

/// Metric pairing of two forms of the same degree.
pub fn inner_product<S: Scalar>(a: &KForm<S>, b: &KForm<S>, g: &Metric<S>) -> Result<S> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch { left: a.degree(), right: b.degree() });
    }
    let mut acc = S::zero();
    for (i, ca) in a.terms() {
        for (j, cb) in b.terms() {
            let p = g.pair_monomials(i, j);
            if p.is_zero() {
                continue;
            }
            acc = acc + ca.clone() * cb.clone() * p;
        }
    }
    Ok(acc)
}

/// k-th compound matrix: minors `det(m[I, J])` over lex-ordered k-subsets.
fn compound<S: Scalar>(m: &Matrix<S>, k: usize) -> Matrix<S> {
    let basis = MultiIndex::all_of_degree(k);
    let n = basis.len();
    Matrix::from_fn(n, n, |r, c| {
        let rows = basis[r].indices();
        let cols = basis[c].indices();
        Matrix::from_fn(k, k, |p, q| m[(rows[p], cols[q])].clone()).determinant()
    })
}
