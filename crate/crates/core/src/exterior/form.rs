use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use super::index::MultiIndex;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::DIM;

/// A sparse alternating k-form on the 7-dimensional dual space.
///
/// Keys are canonical monomials of length `degree`; zero coefficients are
/// never stored, so equality is structural.
#[derive(Clone, PartialEq)]
pub struct KForm<S> {
    degree: usize,
    terms: BTreeMap<MultiIndex, S>,
}

impl<S: Scalar> KForm<S> {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= DIM, "form degree above 7");
        Self { degree, terms: BTreeMap::new() }
    }

    /// Degree-0 form.
    pub fn scalar(c: S) -> Self {
        let mut f = Self::zero(0);
        f.insert(MultiIndex::EMPTY, c);
        f
    }

    /// The monomial `e^I`.
    pub fn monomial(index: MultiIndex) -> Self {
        Self::term(index, S::one())
    }

    pub fn term(index: MultiIndex, c: S) -> Self {
        let mut f = Self::zero(index.degree());
        f.insert(index, c);
        f
    }

    /// The covector `e^i`, 0-based.
    pub fn covector(i: usize) -> Self {
        Self::monomial(MultiIndex::single(i))
    }

    /// Builds a form from `(indices, coefficient)` pairs with 0-based,
    /// possibly unsorted indices. Repeated indices contribute nothing.
    pub fn from_terms<'a>(degree: usize, terms: impl IntoIterator<Item = (&'a [usize], S)>) -> Result<Self> {
        let mut f = Self::zero(degree);
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::Degree { op: "from_terms", degree: idx.len() });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= DIM) {
                return Err(Error::IndexOutOfRange { index: bad + 1, dim: DIM });
            }
            if let Some((m, sign)) = MultiIndex::canonicalize(idx) {
                f.accumulate(m, if sign > 0 { c } else { -c });
            }
        }
        Ok(f)
    }

    /// Coefficients listed in the lexicographic monomial order of
    /// [`MultiIndex::all_of_degree`].
    pub fn from_dense(degree: usize, coeffs: &[S]) -> Self {
        let basis = MultiIndex::all_of_degree(degree);
        assert_eq!(basis.len(), coeffs.len(), "dense coefficient count mismatch");
        let mut f = Self::zero(degree);
        for (m, c) in basis.into_iter().zip(coeffs) {
            f.insert(m, c.clone());
        }
        f
    }

    pub fn to_dense(&self) -> Vec<S> {
        MultiIndex::all_of_degree(self.degree).into_iter().map(|m| self.coefficient(m)).collect()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Structural zero: no stored terms.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Zero up to the backend tolerance.
    pub fn is_negligible(&self) -> bool {
        self.terms.values().all(Scalar::is_negligible)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.degree == other.degree && (self - other).is_negligible()
    }

    pub fn coefficient(&self, index: MultiIndex) -> S {
        self.terms.get(&index).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &S)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| libm::fabs(c.to_f64())).fold(0.0, f64::max)
    }

    fn insert(&mut self, index: MultiIndex, c: S) {
        debug_assert_eq!(index.degree(), self.degree);
        if c.is_zero() {
            self.terms.remove(&index);
        } else {
            self.terms.insert(index, c);
        }
    }

    /// Adds `c e^index` in place, dropping the entry if it cancels.
    pub(crate) fn accumulate(&mut self, index: MultiIndex, c: S) {
        debug_assert_eq!(index.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&index) {
            Some(v) => {
                let sum = v.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&index);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.terms.insert(index, c);
            }
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.degree);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.insert(*m, v.clone() * c.clone());
        }
        out
    }

    pub fn map_coefficients<T: Scalar>(&self, f: impl Fn(&S) -> T) -> KForm<T> {
        let mut out = KForm::zero(self.degree);
        for (m, v) in &self.terms {
            out.accumulate(*m, f(v));
        }
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: other.degree });
        }
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.accumulate(*m, v.clone());
        }
        Ok(out)
    }

    /// Exterior product. Fails when the degrees add up to more than 7.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        let degree = self.degree + other.degree;
        if degree > DIM {
            return Err(Error::Degree { op: "wedge", degree });
        }
        let mut out = Self::zero(degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(sign) = a.wedge_sign(*b) {
                    let c = ca.clone() * cb.clone();
                    out.accumulate(a.union(*b), if sign > 0 { c } else { -c });
                }
            }
        }
        Ok(out)
    }

    /// Interior product `ι_x a`.
    pub fn interior(&self, x: &Vector<S>) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::Degree { op: "interior", degree: 0 });
        }
        let mut out = Self::zero(self.degree - 1);
        for (m, c) in &self.terms {
            for i in m.iter() {
                let xi = &x.0[i];
                if xi.is_zero() {
                    continue;
                }
                let v = c.clone() * xi.clone();
                let v = if m.position(i) % 2 == 0 { v } else { -v };
                out.accumulate(m.without(i), v);
            }
        }
        Ok(out)
    }

    /// Coefficient of `e^{1234567}` of a top-degree form.
    pub fn top_coefficient(&self) -> S {
        debug_assert_eq!(self.degree, DIM);
        self.coefficient(MultiIndex::TOP)
    }
}

impl<S: Scalar> Add for &KForm<S> {
    type Output = KForm<S>;
    /// Panics on a degree mismatch; use [`KForm::checked_add`] to recover.
    fn add(self, rhs: Self) -> KForm<S> {
        self.checked_add(rhs).expect("adding forms of different degree")
    }
}

impl<S: Scalar> Sub for &KForm<S> {
    type Output = KForm<S>;
    fn sub(self, rhs: Self) -> KForm<S> {
        self.checked_add(&-rhs).expect("subtracting forms of different degree")
    }
}

impl<S: Scalar> Add for KForm<S> {
    type Output = KForm<S>;
    fn add(self, rhs: Self) -> KForm<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for KForm<S> {
    type Output = KForm<S>;
    fn sub(self, rhs: Self) -> KForm<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Neg for &KForm<S> {
    type Output = KForm<S>;
    fn neg(self) -> KForm<S> {
        KForm { degree: self.degree, terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl<S: Scalar> Neg for KForm<S> {
    type Output = KForm<S>;
    fn neg(self) -> KForm<S> {
        -&self
    }
}

impl<S: Scalar> fmt::Display for KForm<S> {
    /// Signed sum of `c*eI` terms, e.g. `2*e12 + 2*e34 - 4*e56`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative() || (c.is_negligible() && c.to_f64() < 0.0);
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude == S::one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<S: fmt::Debug> fmt::Debug for KForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm<{}>", self.degree)?;
        f.debug_map().entries(self.terms.iter().map(|(m, c)| (alloc::format!("{m}"), c))).finish()
    }
}

/// A left-invariant vector field, as components in the frame `e_1..e_7`.
#[derive(Clone, PartialEq, Debug)]
pub struct Vector<S>(pub [S; DIM]);

impl<S: Scalar> Vector<S> {
    pub fn zero() -> Self {
        Self(core::array::from_fn(|_| S::zero()))
    }

    /// `e_i`, 0-based.
    pub fn basis(i: usize) -> Self {
        Self(core::array::from_fn(|k| if k == i { S::one() } else { S::zero() }))
    }

    pub fn from_slice(v: &[S]) -> Self {
        assert_eq!(v.len(), DIM);
        Self(core::array::from_fn(|k| v[k].clone()))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self(core::array::from_fn(|k| self.0[k].clone() * c.clone()))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(core::array::from_fn(|k| self.0[k].clone() + other.0[k].clone()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(core::array::from_fn(|k| self.0[k].clone() - other.0[k].clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_negligible)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    pub fn components(&self) -> &[S] {
        &self.0
    }
}

impl<S: Scalar> fmt::Display for Vector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if magnitude == S::one() {
                write!(f, "e_{}", i + 1)?;
            } else {
                write!(f, "{magnitude}*e_{}", i + 1)?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
