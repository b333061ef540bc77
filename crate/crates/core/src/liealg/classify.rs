use alloc::vec::Vec;

use super::LieAlgebra;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Algebraic invariants of a Lie algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraReport<S> {
    pub dim: usize,
    /// `tr(ad_{e_i})` for each basis vector.
    pub trace_vector: Vec<S>,
    pub unimodular: bool,
    /// Dimensions of `g ⊇ [g,g] ⊇ [[g,g],[g,g]] ⊇ …` until it stabilizes.
    pub derived_series: Vec<usize>,
    /// Dimensions of `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ …` until it stabilizes.
    pub lower_central_series: Vec<usize>,
    pub solvable: bool,
    pub nilpotent: bool,
    /// Nilpotency class (number of steps to reach zero), when nilpotent.
    pub nilpotency_step: Option<usize>,
    pub abelian: bool,
}

/// Unimodularity, solvability and nilpotency via exact (or tolerance-ranked)
/// linear algebra on spans of brackets.
pub fn classify<S: Scalar>(alg: &LieAlgebra<S>) -> AlgebraReport<S> {
    let n = alg.dim();
    let whole = Matrix::<S>::identity(n);
    let trace_vector = alg.trace_vector();
    let unimodular = trace_vector.iter().all(Scalar::is_negligible);

    let mut derived_series = alloc::vec![n];
    let mut current = whole.clone();
    loop {
        let next = bracket_span(alg, &current, &current);
        let d = next.rows();
        if d == current.rows() {
            break;
        }
        derived_series.push(d);
        current = next;
        if d == 0 {
            break;
        }
    }

    let mut lower_central_series = alloc::vec![n];
    let mut current = whole.clone();
    loop {
        let next = bracket_span(alg, &whole, &current);
        let d = next.rows();
        if d == current.rows() {
            break;
        }
        lower_central_series.push(d);
        current = next;
        if d == 0 {
            break;
        }
    }

    let solvable = derived_series.last() == Some(&0);
    let nilpotent = lower_central_series.last() == Some(&0);
    let nilpotency_step = nilpotent.then(|| lower_central_series.len() - 1);
    AlgebraReport {
        dim: n,
        trace_vector,
        unimodular,
        solvable,
        nilpotent,
        nilpotency_step,
        abelian: n == 0 || derived_series.get(1) == Some(&0),
        derived_series,
        lower_central_series,
    }
}

/// Basis (as rows) of `span{[a, b] : a ∈ A, b ∈ B}`.
fn bracket_span<S: Scalar>(alg: &LieAlgebra<S>, a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    let n = alg.dim();
    let mut rows = Vec::new();
    for i in 0..a.rows() {
        for j in 0..b.rows() {
            let v = alg.bracket(a.row(i), b.row(j));
            if v.iter().any(|x| !x.is_negligible()) {
                rows.push(v);
            }
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(0, n);
    }
    let ech = Matrix::from_rows(rows).rref();
    let r = ech.pivots.len();
    Matrix::from_fn(r, n, |i, j| ech.reduced[(i, j)].clone())
}
