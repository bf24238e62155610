//! Character fractions: Laurent polynomials over products of binomials.
//!
//! Every isolated fixed point contributes a term of the closed form
//! `numerator / ∏ (1 - t^{α})`, so denominators are kept as a multiset of
//! [`BinomialFactor`]s rather than expanded. Factors are normalized so the
//! first nonzero exponent entry is positive, using
//! `1 - t^{-α} = (-t^{-α})(1 - t^{α})`; the unit monomial moves into the
//! numerator. Cancellation is exact division by one binomial at a time, and
//! equality is decided by cross multiplication.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;

use crate::error::{Error, Result};
use crate::eval::{self, TorusElement};
use crate::poly::LaurentPolynomial;
use crate::weight::Weight;
use crate::DEFAULT_SINGULAR_TOLERANCE;

/// The factor `1 - t^{weight}` with the first nonzero entry of `weight`
/// positive. The exponent is read at the owning fraction's lattice
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BinomialFactor {
    weight: Weight,
}

impl BinomialFactor {
    /// Normalize `1 - t^{w}`. Returns the factor together with the unit
    /// monomial `(coeff, exponent)` that must multiply the numerator:
    /// the identity when `w` is already normalized, `-t^{-w}` inverted to
    /// `-t^{|w|}` otherwise.
    pub fn normalize(w: Weight) -> Result<(Self, Weight, BigInt)> {
        let lead = w.leading_entry().ok_or(Error::InvalidData {
            detail: "zero weight cannot be a denominator factor".to_string(),
        })?;
        if lead > 0 {
            let rank = w.rank();
            Ok((BinomialFactor { weight: w }, Weight::zero(rank), BigInt::one()))
        } else {
            let flipped = w.negated();
            // 1/(1 - t^{-a}) = (-t^{a}) / (1 - t^{a})
            Ok((
                BinomialFactor { weight: flipped.clone() },
                flipped,
                BigInt::from(-1),
            ))
        }
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    /// The factor as a Laurent polynomial `1 - t^{w}`.
    pub fn as_polynomial(&self, rank: usize, denominator: i64) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            rank,
            denominator,
            [
                (Weight::zero(rank), BigInt::one()),
                (self.weight.clone(), BigInt::from(-1)),
            ],
        )
    }

    fn scaled(&self, factor: i64) -> Self {
        BinomialFactor { weight: self.weight.scaled(factor) }
    }
}

/// A quotient `numerator / ∏ factors` of a Laurent polynomial by a multiset
/// of normalized binomials.
#[derive(Clone, Debug)]
pub struct CharacterFraction {
    numerator: LaurentPolynomial,
    /// Sorted, with multiplicity.
    denominator: Vec<BinomialFactor>,
}

impl CharacterFraction {
    /// Build `numerator / ∏ (1 - t^{w})` over the given raw exponents, which
    /// are read at the numerator's lattice denominator. Factors are
    /// normalized; the result is *not* simplified.
    pub fn new(numerator: LaurentPolynomial, raw_factors: &[Weight]) -> Result<Self> {
        let mut num = numerator;
        let mut denominator = Vec::with_capacity(raw_factors.len());
        for w in raw_factors {
            if w.rank() != num.rank() {
                return Err(Error::RankMismatch { left: num.rank(), right: w.rank() });
            }
            let (factor, unit_exp, unit_coeff) = BinomialFactor::normalize(w.clone())?;
            if !unit_coeff.is_one() || !unit_exp.is_zero() {
                num = num.mul_monomial(&unit_exp, &unit_coeff);
            }
            denominator.push(factor);
        }
        denominator.sort();
        Ok(CharacterFraction { numerator: num, denominator })
    }

    /// A plain polynomial viewed as a fraction.
    pub fn from_polynomial(p: LaurentPolynomial) -> Self {
        CharacterFraction { numerator: p, denominator: Vec::new() }
    }

    pub fn zero(rank: usize) -> Self {
        Self::from_polynomial(LaurentPolynomial::zero(rank))
    }

    pub fn one(rank: usize) -> Self {
        Self::from_polynomial(LaurentPolynomial::one(rank))
    }

    pub fn rank(&self) -> usize {
        self.numerator.rank()
    }

    pub fn lattice_denominator(&self) -> i64 {
        self.numerator.lattice_denominator()
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.numerator
    }

    pub fn denominator_factors(&self) -> &[BinomialFactor] {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// A fraction with an empty denominator multiset is a polynomial.
    pub fn as_polynomial(&self) -> Option<&LaurentPolynomial> {
        if self.denominator.is_empty() {
            Some(&self.numerator)
        } else {
            None
        }
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: other.rank() });
        }
        Ok(())
    }

    fn refined_to(&self, denominator: i64) -> Self {
        let factor = denominator / self.lattice_denominator();
        if factor == 1 {
            return self.clone();
        }
        CharacterFraction {
            numerator: self.numerator.refined_to(denominator),
            denominator: self.denominator.iter().map(|f| f.scaled(factor)).collect(),
        }
    }

    pub fn negated(&self) -> Self {
        CharacterFraction {
            numerator: self.numerator.negated(),
            denominator: self.denominator.clone(),
        }
    }

    /// Sum over a common denominator (multiset union), simplified.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let d = self
            .numerator
            .common_denominator(&other.numerator);
        let a = self.refined_to(d);
        let b = other.refined_to(d);
        // Each numerator picks up the factors the other side has in excess.
        let extra_a = multiset_diff(&b.denominator, &a.denominator);
        let extra_b = multiset_diff(&a.denominator, &b.denominator);
        let num_a = mul_factors(&a.numerator, &extra_a);
        let num_b = mul_factors(&b.numerator, &extra_b);
        let out = CharacterFraction {
            numerator: num_a.add(&num_b)?,
            denominator: multiset_union(&a.denominator, &b.denominator),
        };
        Ok(out.simplified())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.negated())
    }

    /// Product: numerators multiplied, denominator multisets concatenated,
    /// simplified.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let d = self
            .numerator
            .common_denominator(&other.numerator);
        let a = self.refined_to(d);
        let b = other.refined_to(d);
        let mut denominator = a.denominator;
        denominator.extend(b.denominator);
        denominator.sort();
        let out = CharacterFraction {
            numerator: a.numerator.mul(&b.numerator)?,
            denominator,
        };
        Ok(out.simplified())
    }

    /// Remove every denominator factor that exactly divides the numerator.
    /// Idempotent and value preserving.
    pub fn simplified(&self) -> Self {
        let mut numerator = self.numerator.clone();
        let mut denominator = self.denominator.clone();
        'pass: loop {
            for index in 0..denominator.len() {
                // The list is sorted, so a factor equal to its predecessor
                // already failed earlier in this pass.
                if index > 0 && denominator[index] == denominator[index - 1] {
                    continue;
                }
                if let Ok(quotient) =
                    numerator.exact_divide_binomial(denominator[index].weight())
                {
                    numerator = quotient;
                    denominator.remove(index);
                    continue 'pass;
                }
            }
            break;
        }
        CharacterFraction { numerator, denominator }
    }

    /// Value equality by cross multiplication: `a = b` iff
    /// `num(a)·den(b) - num(b)·den(a) = 0`.
    pub fn value_eq(&self, other: &Self) -> Result<bool> {
        self.check_rank(other)?;
        let d = self
            .numerator
            .common_denominator(&other.numerator);
        let a = self.refined_to(d);
        let b = other.refined_to(d);
        // Shared factors cancel; only the symmetric difference multiplies in.
        let only_b = multiset_diff(&b.denominator, &a.denominator);
        let only_a = multiset_diff(&a.denominator, &b.denominator);
        let lhs = mul_factors(&a.numerator, &only_b);
        let rhs = mul_factors(&b.numerator, &only_a);
        Ok(lhs == rhs)
    }

    /// Substitute `t ↦ t^{-1}` (equivalently `g ↦ g^{-1}`): exponents negate
    /// and factors renormalize.
    pub fn inverted_variables(&self) -> Self {
        let raw: Vec<Weight> = self
            .denominator
            .iter()
            .map(|f| f.weight().negated())
            .collect();
        CharacterFraction::new(self.numerator.inverted_variables(), &raw)
            .expect("inverting valid factors stays valid")
    }

    /// Evaluate at a torus element with the default singular tolerance.
    pub fn eval(&self, g: &TorusElement) -> Result<Complex64> {
        self.eval_with_tolerance(g, DEFAULT_SINGULAR_TOLERANCE)
    }

    /// Evaluate at a torus element. Rational elements get exact regularity
    /// decisions; numeric elements reject factors within
    /// `singular_tolerance` of zero.
    pub fn eval_with_tolerance(
        &self,
        g: &TorusElement,
        singular_tolerance: f64,
    ) -> Result<Complex64> {
        let denom = self.lattice_denominator();
        let mut value = eval::eval_polynomial(&self.numerator, g)?;
        for factor in &self.denominator {
            value /= eval::factor_value(factor.weight(), denom, g, singular_tolerance)?;
        }
        Ok(value)
    }
}

impl From<LaurentPolynomial> for CharacterFraction {
    fn from(p: LaurentPolynomial) -> Self {
        CharacterFraction::from_polynomial(p)
    }
}

/// Multiset union (maximum multiplicities) of two sorted factor lists.
fn multiset_union(a: &[BinomialFactor], b: &[BinomialFactor]) -> Vec<BinomialFactor> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Multiset difference `a - b` (saturating multiplicities), both sorted.
fn multiset_diff(a: &[BinomialFactor], b: &[BinomialFactor]) -> Vec<BinomialFactor> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() {
        if j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        } else {
            out.push(a[i].clone());
            i += 1;
        }
    }
    out
}

fn mul_factors(p: &LaurentPolynomial, factors: &[BinomialFactor]) -> LaurentPolynomial {
    let mut out = p.clone();
    for f in factors {
        let binomial = f.as_polynomial(p.rank(), p.lattice_denominator());
        out = out.mul(&binomial).expect("equal ranks by construction");
    }
    out
}

impl fmt::Display for CharacterFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        if self.numerator.num_terms() > 1 {
            write!(f, "({})", self.numerator)?;
        } else {
            write!(f, "{}", self.numerator)?;
        }
        write!(f, " / ")?;
        let denom = self.lattice_denominator();
        let mut i = 0;
        let mut first = true;
        while i < self.denominator.len() {
            let mut multiplicity = 1;
            while i + multiplicity < self.denominator.len()
                && self.denominator[i + multiplicity] == self.denominator[i]
            {
                multiplicity += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let factor = &self.denominator[i];
            write!(
                f,
                "(1 - {})",
                crate::poly::monomial_display(self.rank(), factor.weight(), denom)
            )?;
            if multiplicity > 1 {
                write!(f, "^{multiplicity}")?;
            }
            i += multiplicity;
        }
        Ok(())
    }
}
