#![allow(dead_code)]

use g2forge_core::exterior::{KForm, MultiIndex, Vector};
use g2forge_core::linalg::Matrix;
use g2forge_core::{Rational, Scalar};
use proptest::prelude::*;

pub type Q = Rational;

pub fn q(n: i64) -> Q {
    Q::from_i64(n)
}

pub fn qr(p: i64, d: i64) -> Q {
    Q::from_ratio(p, d)
}

pub fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=3).prop_map(|(p, d)| qr(p, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Q> {
    rational().prop_filter("nonzero", |c| !Scalar::is_zero(c))
}

/// Up to six random monomials of the given degree.
pub fn sparse_form(degree: usize) -> impl Strategy<Value = KForm<Q>> {
    let basis = MultiIndex::all_of_degree(degree);
    let n = basis.len();
    prop::collection::vec((0..n, rational()), 0..=6).prop_map(move |terms| {
        let mut f = KForm::zero(degree);
        for (i, c) in terms {
            f = f + KForm::term(basis[i], c);
        }
        f
    })
}

pub fn vector() -> impl Strategy<Value = Vector<Q>> {
    prop::array::uniform7(rational()).prop_map(Vector)
}

/// Small integer matrices with nonzero determinant.
pub fn frame_change() -> impl Strategy<Value = Matrix<Q>> {
    prop::collection::vec(-1i64..=1, 49)
        .prop_map(|v| Matrix::from_fn(7, 7, |i, j| q(v[i * 7 + j] + if i == j { 2 } else { 0 })))
        .prop_filter("invertible", |p| !Scalar::is_zero(&p.determinant()))
}

/// Substitutes `e^i ↦ Σ_j P_ij e^j` in every monomial.
pub fn pullback(p: &Matrix<Q>, a: &KForm<Q>) -> KForm<Q> {
    let rows: Vec<KForm<Q>> = (0..7).map(|i| KForm::from_dense(1, p.row(i))).collect();
    let mut out = KForm::zero(a.degree());
    for (m, c) in a.terms() {
        let mut w = KForm::scalar(c.clone());
        for i in m.iter() {
            w = w.wedge(&rows[i]).unwrap();
        }
        out = out + w;
    }
    out
}

/// Determinant by the Leibniz permutation sum.
pub fn leibniz_det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    if n == 0 {
        return q(1);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = q(0);
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, k: usize, m: &[Vec<Q>], total: &mut Q) {
    let n = perm.len();
    if k == n {
        let mut inversions = 0;
        for a in 0..n {
            for b in a + 1..n {
                if perm[a] > perm[b] {
                    inversions += 1;
                }
            }
        }
        let mut prod = q(if inversions % 2 == 0 { 1 } else { -1 });
        for (r, &c) in perm.iter().enumerate() {
            prod = prod * m[r][c].clone();
        }
        *total = total.clone() + prod;
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, m, total);
        perm.swap(k, i);
    }
}

/// `⟨e^I, e^J⟩ = det(g^{-1}[I, J])` by brute force.
pub fn gram_oracle(g_inv: &Matrix<Q>, i: MultiIndex, j: MultiIndex) -> Q {
    let (ii, jj) = (i.indices(), j.indices());
    let sub: Vec<Vec<Q>> = ii.iter().map(|&a| jj.iter().map(|&b| g_inv[(a, b)].clone()).collect()).collect();
    leibniz_det(&sub)
}

/// Diagonal automorphisms `e^i ↦ a_i e^i` of the soliton algebra:
/// `a_5 = a_1 a_4`, `a_6 = a_2 a_4`, `a_7 = 1`.
pub fn soliton_automorphism(a1: Q, a2: Q, a3: Q, a4: Q) -> Matrix<Q> {
    let d = [a1.clone(), a2.clone(), a3, a4.clone(), a1 * a4.clone(), a2 * a4, q(1)];
    Matrix::from_fn(7, 7, |i, j| if i == j { d[i].clone() } else { q(0) })
}

/// Structure constants `c^k_ij` with a few random antisymmetric entries.
pub fn skew_constants() -> impl Strategy<Value = (usize, Vec<Q>)> {
    (3usize..=7).prop_flat_map(|dim| {
        let entry = (0..dim, 0..dim, 0..dim, -2i64..=2);
        (Just(dim), prop::collection::vec(entry, 1..=5)).prop_map(|(dim, entries)| {
            let mut c = vec![q(0); dim * dim * dim];
            for (i, j, k, v) in entries {
                if i == j {
                    continue;
                }
                c[(i * dim + j) * dim + k] = c[(i * dim + j) * dim + k].clone() + q(v);
                c[(j * dim + i) * dim + k] = c[(j * dim + i) * dim + k].clone() - q(v);
            }
            (dim, c)
        })
    })
}

/// Jacobi identity checked directly on brackets of basis vectors.
pub fn jacobi_oracle(dim: usize, c: &[Q]) -> bool {
    let br = |x: &[Q], y: &[Q]| -> Vec<Q> {
        let mut out = vec![q(0); dim];
        for i in 0..dim {
            for j in 0..dim {
                let xy = x[i].clone() * y[j].clone();
                if Scalar::is_zero(&xy) {
                    continue;
                }
                for k in 0..dim {
                    out[k] = out[k].clone() + xy.clone() * c[(i * dim + j) * dim + k].clone();
                }
            }
        }
        out
    };
    let e = |i: usize| -> Vec<Q> { (0..dim).map(|k| q((k == i) as i64)).collect() };
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                let a = br(&br(&e(i), &e(j)), &e(k));
                let b = br(&br(&e(j), &e(k)), &e(i));
                let d = br(&br(&e(k), &e(i)), &e(j));
                if (0..dim).any(|n| !Scalar::is_zero(&(a[n].clone() + b[n].clone() + d[n].clone()))) {
                    return false;
                }
            }
        }
    }
    true
}
