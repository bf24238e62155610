//! Integer weight vectors: exponents of torus characters.
//!
//! A [`Weight`] is a vector of integers of length equal to the torus rank.
//! Entries are always interpreted relative to a lattice denominator `D ≥ 1`
//! carried by the owning polynomial or fraction, so a stored entry `a` means
//! the exponent `a / D`. The denominator is refined on demand (see
//! [`crate::poly::LaurentPolynomial::refined_to`]); `Weight` itself is plain
//! integer data.

use alloc::vec::Vec;
use core::cmp::Ordering;

/// Exponent vector of a torus character, stored as integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    entries: Vec<i64>,
}

impl Weight {
    pub fn new(entries: Vec<i64>) -> Self {
        Weight { entries }
    }

    /// The zero weight of the given rank.
    pub fn zero(rank: usize) -> Self {
        Weight { entries: alloc::vec![0; rank] }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// First nonzero entry, if any.
    pub fn leading_entry(&self) -> Option<i64> {
        self.entries.iter().copied().find(|&e| e != 0)
    }

    pub fn negated(&self) -> Self {
        Weight { entries: self.entries.iter().map(|e| -e).collect() }
    }

    pub fn plus(&self, other: &Weight) -> Self {
        debug_assert_eq!(self.rank(), other.rank());
        Weight {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn minus(&self, other: &Weight) -> Self {
        debug_assert_eq!(self.rank(), other.rank());
        Weight {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Entrywise scaling, used when refining the lattice denominator.
    pub fn scaled(&self, factor: i64) -> Self {
        Weight { entries: self.entries.iter().map(|e| e * factor).collect() }
    }

    /// Standard dot product with an integer vector.
    pub fn dot(&self, other: &[i64]) -> i128 {
        debug_assert_eq!(self.entries.len(), other.len());
        self.entries
            .iter()
            .zip(other)
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum()
    }

    /// Total degree (sum of entries), the grading used by the term order.
    pub fn total_degree(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// `self - other` is componentwise nonnegative.
    pub fn dominates(&self, other: &Weight) -> bool {
        self.entries.iter().zip(&other.entries).all(|(a, b)| a >= b)
    }

    /// Graded lexicographic comparison: total degree first, ties broken
    /// lexicographically. This is the term order used by exact division.
    pub fn grlex_cmp(&self, other: &Weight) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.entries.cmp(&other.entries))
    }
}

impl From<Vec<i64>> for Weight {
    fn from(entries: Vec<i64>) -> Self {
        Weight::new(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        let a = Weight::new(vec![2, 0]);
        let b = Weight::new(vec![1, 1]);
        let c = Weight::new(vec![0, 1]);
        assert_eq!(a.grlex_cmp(&b), Ordering::Greater); // same degree, lex
        assert_eq!(c.grlex_cmp(&b), Ordering::Less); // lower degree
        assert_eq!(a.grlex_cmp(&a), Ordering::Equal);
    }

    #[test]
    fn leading_entry_skips_zeros() {
        assert_eq!(Weight::new(vec![0, -3, 1]).leading_entry(), Some(-3));
        assert_eq!(Weight::zero(3).leading_entry(), None);
    }

    #[test]
    fn dot_uses_wide_arithmetic() {
        let w = Weight::new(vec![i64::MAX / 2, 2]);
        assert_eq!(w.dot(&[2, 3]), (i64::MAX / 2) as i128 * 2 + 6);
    }
}
