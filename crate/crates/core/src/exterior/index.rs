use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::DIM;

/// A basis monomial `e^{i1 i2 ... ik}` with strictly increasing indices,
/// stored as a bitmask over the seven generators (bit `i` = index `i + 1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(u8);

const FULL: u8 = (1 << DIM) - 1;

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);
    /// `e^{1234567}`.
    pub const TOP: MultiIndex = MultiIndex(FULL);

    pub fn from_bits(bits: u8) -> Option<Self> {
        (bits & !FULL == 0).then_some(Self(bits))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// Single generator, 0-based.
    pub fn single(i: usize) -> Self {
        assert!(i < DIM, "generator index out of range");
        Self(1 << i)
    }

    /// Canonicalizes a list of 0-based indices. Returns the monomial and the
    /// sign of the sorting permutation, or `None` if an index repeats.
    pub fn canonicalize(indices: &[usize]) -> Option<(Self, i8)> {
        let mut bits = 0u8;
        let mut sign = 1i8;
        for &i in indices {
            assert!(i < DIM, "generator index out of range");
            if bits & (1 << i) != 0 {
                return None;
            }
            // inserting `i` after the already-placed indices passes every larger one
            if (bits >> i).count_ones() % 2 == 1 {
                sign = -sign;
            }
            bits |= 1 << i;
        }
        Some((Self(bits), sign))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < DIM && self.0 & (1 << i) != 0
    }

    pub fn complement(self) -> Self {
        Self(!self.0 & FULL)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// 0-based indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..DIM).filter(move |&i| self.0 & (1 << i) != 0)
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Sign `s` with `e^self ∧ e^other = s e^{self ∪ other}`, or `None` when
    /// the monomials share an index.
    pub fn wedge_sign(self, other: Self) -> Option<i8> {
        if !self.is_disjoint(other) {
            return None;
        }
        let mut inversions = 0u32;
        for j in other.iter() {
            inversions += (self.0 >> (j + 1)).count_ones();
        }
        Some(if inversions % 2 == 0 { 1 } else { -1 })
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn without(self, i: usize) -> Self {
        Self(self.0 & !(1 << i))
    }

    /// Number of indices of `self` strictly smaller than `i`.
    pub fn position(self, i: usize) -> usize {
        (self.0 & ((1u8 << i) - 1)).count_ones() as usize
    }

    /// Position of `self` within [`MultiIndex::all_of_degree`] of its degree.
    pub fn lex_rank(self) -> usize {
        let k = self.degree();
        let mut rank = 0;
        let mut next = 0;
        for (p, i) in self.iter().enumerate() {
            for j in next..i {
                rank += binomial(DIM - 1 - j, k - p - 1);
            }
            next = i + 1;
        }
        rank
    }

    /// All monomials of degree `k` in lexicographic order of index tuples.
    pub fn all_of_degree(k: usize) -> Vec<Self> {
        let mut v: Vec<Self> = (0..=FULL).filter(|b| b.count_ones() as usize == k).map(Self).collect();
        v.sort();
        v
    }
}

pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("e")?;
        for i in self.iter() {
            write!(f, "{}", i + 1)?;
        }
        Ok(())
    }
}
