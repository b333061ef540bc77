//! Scalar backends.
//!
//! Every computation runs over one [`Scalar`] type chosen up front: either
//! exact arbitrary-precision rationals ([`Rational`]) or `f64`. The two are
//! never mixed inside a computation.

use alloc::string::String;
use core::fmt::{Debug, Display};
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational numbers with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;

/// Default absolute tolerance used by the float backend for zero tests.
pub const FLOAT_EPS: f64 = 1e-9;

/// A field element usable as a coefficient of forms, vectors and matrices.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `true` for backends where field operations are exact.
    const EXACT: bool;
    /// Short backend name used in reports (`"exact"` or `"float"`).
    const BACKEND: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// Converts an exact rational into this backend.
    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;

    /// Structural zero test: the stored value is exactly zero.
    fn is_zero(&self) -> bool;

    /// Zero test used for mathematical decisions. Exact for rationals,
    /// `|x| <= FLOAT_EPS` for floats.
    fn is_negligible(&self) -> bool;

    /// Real `n`-th root. `None` when the root is not representable in the
    /// backend (irrational for [`Rational`], or an even root of a negative).
    fn root(&self, n: u32) -> Option<Self>;

    fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_i64(p) / Self::from_i64(q)
    }

    fn is_positive(&self) -> bool {
        !self.is_negligible() && self.to_f64() > 0.0
    }

    fn is_negative(&self) -> bool {
        !self.is_negligible() && self.to_f64() < 0.0
    }

    fn abs(&self) -> Self {
        if self.to_f64() < 0.0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Tolerance-aware equality.
    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_negligible()
    }

    /// Lossless textual encoding used in reports: `p/q` or a float literal.
    fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const BACKEND: &'static str = "float";

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_negligible(&self) -> bool {
        libm::fabs(*self) <= FLOAT_EPS
    }
    fn root(&self, n: u32) -> Option<Self> {
        if n == 0 {
            return None;
        }
        if *self < 0.0 {
            if n % 2 == 0 {
                return None;
            }
            return Some(-libm::pow(-*self, 1.0 / n as f64));
        }
        Some(libm::pow(*self, 1.0 / n as f64))
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const BACKEND: &'static str = "exact";

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negligible(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn root(&self, n: u32) -> Option<Self> {
        if n == 0 {
            return None;
        }
        let negative = Signed::is_negative(self);
        if negative && n % 2 == 0 {
            return None;
        }
        let num = exact_int_root(self.numer(), n)?;
        let den = exact_int_root(self.denom(), n)?;
        Some(Rational::new(num, den))
    }
}

fn exact_int_root(x: &BigInt, n: u32) -> Option<BigInt> {
    let magnitude = x.magnitude();
    let r = magnitude.nth_root(n);
    if num_traits::pow(r.clone(), n as usize) != *magnitude {
        return None;
    }
    let sign = if x.sign() == Sign::Minus { Sign::Minus } else { Sign::Plus };
    Some(BigInt::from_biguint(sign, r))
}

/// Parses `p`, `p/q` or a finite decimal `a.b` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if Zero::is_zero(&q) {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some((int_part, frac_part)) = text.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let mut digits = String::from(int_digits);
        digits.push_str(frac_part);
        let mut num: BigInt = digits.parse().ok()?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        return Some(Rational::new(num, den));
    }
    let n: BigInt = text.parse().ok()?;
    Some(Rational::from_integer(n))
}
