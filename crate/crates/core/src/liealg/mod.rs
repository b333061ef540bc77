//! Lie algebras given by structure constants, and their Chevalley–Eilenberg
//! differential on left-invariant forms.
//!
//! Sign convention: `de^k(e_i, e_j) = -e^k([e_i, e_j])`, so `[e_3, e_7] = e_3`
//! corresponds to `de^3 = -e^{37}`.

mod classify;
mod salamon;

use alloc::vec::Vec;

pub use classify::{classify, AlgebraReport};
pub use salamon::{parse_salamon, parse_structure_equations};

use crate::error::{Error, Result};
use crate::exterior::{KForm, MultiIndex, Vector};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::DIM;

/// A Lie algebra of dimension at most 7 with basis `e_1..e_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<S> {
    dim: usize,
    // c[(i * dim + j) * dim + k] = c^k_{ij}, with [e_i, e_j] = Σ_k c^k_{ij} e_k
    constants: Vec<S>,
    // exterior derivative of every monomial supported on the first `dim` generators
    d_table: Vec<Option<KForm<S>>>,
}

/// The exterior derivatives `de^1..de^n` of the dual basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureEquationSet<S> {
    pub differentials: Vec<KForm<S>>,
}

impl<S: Scalar> StructureEquationSet<S> {
    pub fn dim(&self) -> usize {
        self.differentials.len()
    }

    /// Extended Salamon notation, e.g. `(0,0,-37,47,2*14+57,-2*24+67,0)`.
    pub fn to_salamon(&self) -> alloc::string::String {
        salamon::format_salamon(self)
    }
}

impl<S: Scalar> LieAlgebra<S> {
    /// Validated constructor: antisymmetry and the Jacobi identity.
    pub fn new(dim: usize, constants: Vec<S>) -> Result<Self> {
        let alg = Self::new_unvalidated(dim, constants)?;
        if let Some((i, j, k)) = alg.jacobi_violation() {
            return Err(Error::NotALieAlgebra { i: i + 1, j: j + 1, k: k + 1 });
        }
        Ok(alg)
    }

    /// Checks antisymmetry only. The result may violate Jacobi; used to study
    /// arbitrary skew brackets.
    pub fn new_unvalidated(dim: usize, constants: Vec<S>) -> Result<Self> {
        if dim == 0 || dim > DIM {
            return Err(Error::Dimension { expected: DIM, found: dim });
        }
        if constants.len() != dim * dim * dim {
            return Err(Error::Dimension { expected: dim * dim * dim, found: constants.len() });
        }
        for i in 0..dim {
            for j in i..dim {
                for k in 0..dim {
                    let a = &constants[(i * dim + j) * dim + k];
                    let b = &constants[(j * dim + i) * dim + k];
                    if !(a.clone() + b.clone()).is_negligible() {
                        return Err(Error::NotAntisymmetric { i: i + 1, j: j + 1 });
                    }
                }
            }
        }
        let mut alg = Self { dim, constants, d_table: Vec::new() };
        alg.d_table = alg.build_d_table();
        Ok(alg)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::new(dim, alloc::vec![S::zero(); dim * dim * dim]).expect("abelian algebra")
    }

    /// Builds the algebra from brackets `[e_i, e_j] = v` (0-based `i < j`
    /// or `i > j`); unlisted brackets vanish.
    pub fn from_brackets(dim: usize, brackets: &[((usize, usize), Vec<S>)]) -> Result<Self> {
        let mut c = alloc::vec![S::zero(); dim * dim * dim];
        for ((i, j), v) in brackets {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim || v.len() != dim {
                return Err(Error::Dimension { expected: dim, found: i.max(j).max(v.len()) });
            }
            for (k, x) in v.iter().enumerate() {
                c[(i * dim + j) * dim + k] = x.clone();
                c[(j * dim + i) * dim + k] = -x.clone();
            }
        }
        Self::new(dim, c)
    }

    /// Recovers brackets from `de^k`, via `c^k_{ij} = -de^k(e_i, e_j)`.
    pub fn from_structure_equations(eqs: &StructureEquationSet<S>) -> Result<Self> {
        let dim = eqs.dim();
        if dim == 0 || dim > DIM {
            return Err(Error::Dimension { expected: DIM, found: dim });
        }
        let mut c = alloc::vec![S::zero(); dim * dim * dim];
        for (k, dk) in eqs.differentials.iter().enumerate() {
            if dk.degree() != 2 {
                return Err(Error::Degree { op: "structure equation", degree: dk.degree() });
            }
            for (m, v) in dk.terms() {
                let ix = m.indices();
                let (i, j) = (ix[0], ix[1]);
                if j >= dim {
                    return Err(Error::IndexOutOfRange { index: j + 1, dim });
                }
                c[(i * dim + j) * dim + k] = -v.clone();
                c[(j * dim + i) * dim + k] = v.clone();
            }
        }
        Self::new(dim, c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c^k_{ij}`, 0-based.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &S {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// `[e_i, e_j]` as a frame vector (padded with zeros to length 7).
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector<S> {
        Vector(core::array::from_fn(|k| {
            if k < self.dim {
                self.structure_constant(i, j, k).clone()
            } else {
                S::zero()
            }
        }))
    }

    /// Bracket of two coefficient vectors of length `dim`.
    pub fn bracket(&self, x: &[S], y: &[S]) -> Vec<S> {
        let n = self.dim;
        let mut out = alloc::vec![S::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let xy = x[i].clone() * y[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        *o = o.clone() + xy.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    /// The nonzero brackets `[e_i, e_j]` with `i < j`, 0-based.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vector<S>)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.bracket_basis(i, j);
                if !v.is_zero() {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    /// Matrix of `ad_{e_i}` (column `j` holds `[e_i, e_j]`).
    pub fn ad(&self, i: usize) -> Matrix<S> {
        Matrix::from_fn(self.dim, self.dim, |k, j| self.structure_constant(i, j, k).clone())
    }

    /// `x ↦ tr(ad_x)` evaluated on the basis.
    pub fn trace_vector(&self) -> Vec<S> {
        (0..self.dim)
            .map(|i| (0..self.dim).fold(S::zero(), |acc, k| acc + self.structure_constant(i, k, k).clone()))
            .collect()
    }

    /// First basis triple `i < j < k` on which the Jacobi identity fails.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        let basis = |i: usize| -> Vec<S> { (0..n).map(|k| if k == i { S::one() } else { S::zero() }).collect() };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (basis(i), basis(j), basis(k));
                    let a = self.bracket(&self.bracket(&ei, &ej), &ek);
                    let b = self.bracket(&self.bracket(&ej, &ek), &ei);
                    let c = self.bracket(&self.bracket(&ek, &ei), &ej);
                    let bad = (0..n).any(|m| !(a[m].clone() + b[m].clone() + c[m].clone()).is_negligible());
                    if bad {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// First generator `e^k` with `d(de^k) ≠ 0`.
    pub fn dd_violation(&self) -> Option<usize> {
        (0..self.dim).find(|&k| {
            let dk = self.ce_differential(&KForm::covector(k)).expect("degree 1");
            !self.ce_differential(&dk).expect("degree 2").is_negligible()
        })
    }

    /// The structure equations `de^k`.
    pub fn structure_equations(&self) -> StructureEquationSet<S> {
        StructureEquationSet {
            differentials: (0..self.dim)
                .map(|k| self.ce_differential(&KForm::covector(k)).expect("degree 1"))
                .collect(),
        }
    }

    /// Direct sum with an abelian algebra, up to dimension `n`.
    pub fn padded(&self, n: usize) -> Result<Self> {
        if n < self.dim || n > DIM {
            return Err(Error::Dimension { expected: DIM, found: n });
        }
        let mut c = alloc::vec![S::zero(); n * n * n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    c[(i * n + j) * n + k] = self.structure_constant(i, j, k).clone();
                }
            }
        }
        Self::new_unvalidated(n, c)
    }

    /// Chevalley–Eilenberg differential on left-invariant forms.
    pub fn ce_differential(&self, a: &KForm<S>) -> Result<KForm<S>> {
        if a.degree() >= DIM {
            return Err(Error::Degree { op: "ce_differential", degree: a.degree() });
        }
        let mut out = KForm::zero(a.degree() + 1);
        for (m, c) in a.terms() {
            let Some(dm) = &self.d_table[m.bits() as usize] else {
                let bad = m.iter().find(|&i| i >= self.dim).unwrap_or(0);
                return Err(Error::IndexOutOfRange { index: bad + 1, dim: self.dim });
            };
            for (n, v) in dm.terms() {
                out.accumulate(n, c.clone() * v.clone());
            }
        }
        Ok(out)
    }

    fn build_d_table(&self) -> Vec<Option<KForm<S>>> {
        let n = self.dim;
        let de: Vec<KForm<S>> = (0..n)
            .map(|k| {
                let mut f = KForm::zero(2);
                for i in 0..n {
                    for j in i + 1..n {
                        let c = self.structure_constant(i, j, k);
                        if !c.is_zero() {
                            f.accumulate(MultiIndex::canonicalize(&[i, j]).unwrap().0, -c.clone());
                        }
                    }
                }
                f
            })
            .collect();
        (0u8..128)
            .map(|bits| {
                let m = MultiIndex::from_bits(bits).expect("7 bits");
                if m.iter().any(|i| i >= n) {
                    return None;
                }
                if m.degree() == DIM {
                    return Some(KForm::zero(DIM));
                }
                // Leibniz: d(e^{i_0} ∧ … ∧ e^{i_{k-1}}) = Σ_p (-1)^p … ∧ de^{i_p} ∧ …
                let ix = m.indices();
                let mut out = KForm::zero(m.degree() + 1);
                for (p, &i) in ix.iter().enumerate() {
                    let before = MultiIndex::canonicalize(&ix[..p]).unwrap().0;
                    let after = MultiIndex::canonicalize(&ix[p + 1..]).unwrap().0;
                    let term = KForm::monomial(before)
                        .wedge(&de[i])
                        .and_then(|f| f.wedge(&KForm::monomial(after)))
                        .expect("degree at most 7");
                    let term = if p % 2 == 0 { term } else { -term };
                    out = &out + &term;
                }
                Some(out)
            })
            .collect()
    }
}
