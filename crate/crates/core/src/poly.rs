//! Laurent polynomials in torus variables with big-integer coefficients.
//!
//! A [`LaurentPolynomial`] is a finite map from exponent vectors to nonzero
//! arbitrary-precision integers. Exponents are stored as integers relative to
//! a lattice denominator `D ≥ 1`, so the polynomial really lives in the
//! refined lattice `(1/D)ℤ^n`; `D > 1` only occurs where half-integral
//! weights (ρ for odd root sums) are in play. Denominators of two operands
//! are unified by scaling exponents to the least common refinement.
//!
//! Exact division by a binomial `1 - t^w` (the only division the fixed-point
//! formulas need) proceeds by repeated leading-term elimination under the
//! graded lexicographic order, after a monomial shift that makes all
//! exponents nonnegative.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::weight::Weight;

/// A Laurent polynomial `Σ c_w t^{w/D}` with integer coefficients.
#[derive(Clone, Debug)]
pub struct LaurentPolynomial {
    rank: usize,
    lattice_denominator: i64,
    terms: BTreeMap<Weight, BigInt>,
}

impl LaurentPolynomial {
    /// The zero polynomial.
    pub fn zero(rank: usize) -> Self {
        LaurentPolynomial { rank, lattice_denominator: 1, terms: BTreeMap::new() }
    }

    /// The constant polynomial 1.
    pub fn one(rank: usize) -> Self {
        Self::constant(rank, BigInt::one())
    }

    /// A constant polynomial.
    pub fn constant(rank: usize, value: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Weight::zero(rank), value);
        }
        LaurentPolynomial { rank, lattice_denominator: 1, terms }
    }

    /// A single term `coeff · t^{weight}` (weight at denominator 1).
    pub fn monomial(rank: usize, weight: Weight, coeff: BigInt) -> Self {
        Self::monomial_in(rank, 1, weight, coeff)
    }

    /// A single term with its exponent read in the `(1/denominator)` lattice.
    pub fn monomial_in(rank: usize, denominator: i64, weight: Weight, coeff: BigInt) -> Self {
        debug_assert!(denominator >= 1);
        debug_assert_eq!(weight.rank(), rank);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(weight, coeff);
        }
        LaurentPolynomial { rank, lattice_denominator: denominator, terms }
    }

    /// Build from a term list, merging duplicates and pruning zeros.
    pub fn from_terms<I>(rank: usize, denominator: i64, iter: I) -> Self
    where
        I: IntoIterator<Item = (Weight, BigInt)>,
    {
        let mut poly = LaurentPolynomial {
            rank,
            lattice_denominator: denominator,
            terms: BTreeMap::new(),
        };
        for (w, c) in iter {
            poly.accumulate(w, c);
        }
        poly
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn lattice_denominator(&self) -> i64 {
        self.lattice_denominator
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Weight::zero(self.rank))
                .is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate over `(exponent, coefficient)` pairs in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Weight) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Sum of all coefficients; the value of the character at the identity.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    fn accumulate(&mut self, w: Weight, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Re-express the polynomial in a finer lattice. `denominator` must be a
    /// multiple of the current one.
    pub fn refined_to(&self, denominator: i64) -> Self {
        debug_assert!(denominator % self.lattice_denominator == 0);
        let factor = denominator / self.lattice_denominator;
        if factor == 1 {
            return self.clone();
        }
        LaurentPolynomial {
            rank: self.rank,
            lattice_denominator: denominator,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.scaled(factor), c.clone()))
                .collect(),
        }
    }

    /// Least common refinement of two lattice denominators.
    pub fn common_denominator(&self, other: &Self) -> i64 {
        self.lattice_denominator.lcm(&other.lattice_denominator)
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        Ok(())
    }

    /// Coefficient-wise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let d = self.common_denominator(other);
        let mut out = self.refined_to(d);
        for (w, c) in other.refined_to(d).terms {
            out.accumulate(w, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.negated())
    }

    pub fn negated(&self) -> Self {
        LaurentPolynomial {
            rank: self.rank,
            lattice_denominator: self.lattice_denominator,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    /// Exponent-convolution product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let d = self.common_denominator(other);
        let a = self.refined_to(d);
        let b = other.refined_to(d);
        let mut out = LaurentPolynomial {
            rank: self.rank,
            lattice_denominator: d,
            terms: BTreeMap::new(),
        };
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                out.accumulate(wa.plus(wb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiply by a single term `coeff · t^{w}` (w at this polynomial's
    /// lattice denominator).
    pub fn mul_monomial(&self, w: &Weight, coeff: &BigInt) -> Self {
        if coeff.is_zero() {
            return Self::zero(self.rank);
        }
        LaurentPolynomial {
            rank: self.rank,
            lattice_denominator: self.lattice_denominator,
            terms: self
                .terms
                .iter()
                .map(|(u, c)| (u.plus(w), c * coeff))
                .collect(),
        }
    }

    /// Substitute `t ↦ t^{-1}`: negate every exponent.
    pub fn inverted_variables(&self) -> Self {
        self.map_exponents(|w| w.negated())
    }

    /// Apply a map to every exponent vector (e.g. a Weyl group element).
    pub fn map_exponents<F>(&self, f: F) -> Self
    where
        F: Fn(&Weight) -> Weight,
    {
        let mut out = LaurentPolynomial {
            rank: self.rank,
            lattice_denominator: self.lattice_denominator,
            terms: BTreeMap::new(),
        };
        for (w, c) in &self.terms {
            let image = f(w);
            debug_assert_eq!(image.rank(), self.rank);
            out.accumulate(image, c.clone());
        }
        out
    }

    /// Componentwise minimum of all exponents.
    fn exponent_floor(&self) -> Option<Weight> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        let floor = it.fold(first.entries().to_vec(), |mut acc, w| {
            for (a, &e) in acc.iter_mut().zip(w.entries()) {
                if e < *a {
                    *a = e;
                }
            }
            acc
        });
        Some(Weight::new(floor))
    }

    /// Exact division by the binomial `1 - t^{w}`, with `w` read at this
    /// polynomial's lattice denominator. Returns `q` with
    /// `q · (1 - t^w) = self`, or [`Error::NotDivisible`].
    pub fn exact_divide_binomial(&self, w: &Weight) -> Result<Self> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch { left: self.rank, right: w.rank() });
        }
        if w.is_zero() {
            return Err(Error::InvalidData { detail: "zero binomial exponent".to_string() });
        }
        if self.is_zero() {
            return Ok(Self::zero(self.rank));
        }
        // Orient the divisor so its grlex-leading term is -t^w:
        // 1 - t^{-w} = (-t^{-w})(1 - t^{w}), so dividing by 1 - t^{-w} is
        // dividing by 1 - t^{w} after multiplying by the unit -t^{w}.
        if w.grlex_cmp(&Weight::zero(self.rank)) == Ordering::Less {
            let flipped = w.negated();
            let adjusted = self.mul_monomial(&flipped, &BigInt::from(-1));
            return adjusted.exact_divide_binomial(&flipped);
        }

        let floor = self.exponent_floor().expect("nonzero polynomial");
        // Remainder keyed by grlex order so the leading term pops off the end.
        let mut remainder: BTreeMap<GrlexKey, BigInt> = self
            .terms
            .iter()
            .map(|(u, c)| (GrlexKey(u.minus(&floor)), c.clone()))
            .collect();
        let mut quotient: Vec<(Weight, BigInt)> = Vec::new();

        while let Some((GrlexKey(lead), coeff)) = remainder.pop_last() {
            if !lead.dominates(w) {
                return Err(Error::NotDivisible);
            }
            let qexp = lead.minus(w);
            // leading term of (1 - t^w) is -t^w; cancel and fold in the tail.
            let qcoeff = -coeff;
            match remainder.entry(GrlexKey(qexp.clone())) {
                alloc::collections::btree_map::Entry::Vacant(slot) => {
                    slot.insert(-&qcoeff);
                }
                alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                    *slot.get_mut() -= &qcoeff;
                    if slot.get().is_zero() {
                        slot.remove();
                    }
                }
            }
            quotient.push((qexp.plus(&floor), qcoeff));
        }

        Ok(Self::from_terms(self.rank, self.lattice_denominator, quotient))
    }

    /// Structural equality up to lattice refinement.
    fn eq_impl(&self, other: &Self) -> bool {
        if self.rank != other.rank {
            return false;
        }
        if self.lattice_denominator == other.lattice_denominator {
            return self.terms == other.terms;
        }
        let d = self.common_denominator(other);
        self.refined_to(d).terms == other.refined_to(d).terms
    }
}

impl PartialEq for LaurentPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.eq_impl(other)
    }
}

impl Eq for LaurentPolynomial {}

/// Weight wrapper ordered by grlex, for the division worklist.
#[derive(Clone, Debug, PartialEq, Eq)]
struct GrlexKey(Weight);

impl PartialOrd for GrlexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GrlexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.grlex_cmp(&other.0)
    }
}

/// Render one exponent entry, reducing `a/D` where possible.
fn exponent_string(a: i64, d: i64) -> String {
    if a % d == 0 {
        (a / d).to_string()
    } else {
        let g = a.gcd(&d);
        let mut s = String::from("(");
        s.push_str(&(a / g).to_string());
        s.push('/');
        s.push_str(&(d / g).to_string());
        s.push(')');
        s
    }
}

/// Render the monomial part `t^e` / `t1^a*t2^b*...` of a term.
pub(crate) fn monomial_display(rank: usize, w: &Weight, d: i64) -> String {
    if rank == 1 {
        let mut s = String::from("t^");
        s.push_str(&exponent_string(w.entries()[0], d));
        return s;
    }
    let mut parts: Vec<String> = Vec::new();
    for (i, &e) in w.entries().iter().enumerate() {
        if e != 0 {
            let mut s = String::from("t");
            s.push_str(&(i + 1).to_string());
            s.push('^');
            s.push_str(&exponent_string(e, d));
            parts.push(s);
        }
    }
    parts.join("*")
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Descending lexicographic order reads naturally: t^1 + 1 + t^-1.
        for (w, c) in self.terms.iter().rev() {
            let negative = c.is_negative();
            let magnitude = c.magnitude();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if w.is_zero() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", monomial_display(self.rank, w, self.lattice_denominator))?;
            } else {
                write!(
                    f,
                    "{}*{}",
                    magnitude,
                    monomial_display(self.rank, w, self.lattice_denominator)
                )?;
            }
        }
        Ok(())
    }
}


#[cfg(test)]
mod tests {
    use super::test_support::{divide_oracle, poly1, polyn};
    use super::*;
    use crate::eval::TorusElement;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn add_cancels_to_single_term() {
        // (t + 1) + (-1) = t
        let a = poly1(&[(1, 1), (0, 1)]);
        let b = poly1(&[(0, -1)]);
        assert_eq!(a.add(&b).unwrap(), poly1(&[(1, 1)]));
    }

    #[test]
    fn add_zero_is_identity() {
        let p = poly1(&[(2, 3), (-1, -4)]);
        assert_eq!(LaurentPolynomial::zero(1).add(&p).unwrap(), p);
    }

    #[test]
    fn add_merges_term_maps() {
        // (1 + t^-1) + (t + t^-1) = t + 2t^-1 + 1, cross-checked by
        // evaluation at a handful of generic angles.
        let a = poly1(&[(0, 1), (-1, 1)]);
        let b = poly1(&[(1, 1), (-1, 1)]);
        let sum = a.add(&b).unwrap();
        assert_eq!(sum, poly1(&[(1, 1), (0, 1), (-1, 2)]));
        for theta in [0.37, 1.1, 2.9, 4.0, 5.71] {
            let g = TorusElement::numeric(vec![theta]);
            let lhs = crate::eval::eval_polynomial(&sum, &g).unwrap();
            let rhs = crate::eval::eval_polynomial(&a, &g).unwrap()
                + crate::eval::eval_polynomial(&b, &g).unwrap();
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn mul_by_one_and_zero() {
        let p = poly1(&[(3, 2), (0, -1)]);
        assert_eq!(p.mul(&LaurentPolynomial::one(1)).unwrap(), p);
        assert!(p.mul(&LaurentPolynomial::zero(1)).unwrap().is_zero());
    }

    #[test]
    fn mul_matches_convolution_oracle() {
        // (1 - t^-1)(1 + t^-1) = 1 - t^-2, and a brute-force double loop
        // over term pairs agrees on a denser example.
        let a = poly1(&[(0, 1), (-1, -1)]);
        let b = poly1(&[(0, 1), (-1, 1)]);
        assert_eq!(a.mul(&b).unwrap(), poly1(&[(0, 1), (-2, -1)]));

        let p = poly1(&[(2, 3), (0, -1), (-1, 4)]);
        let q = poly1(&[(1, -2), (0, 5)]);
        let mut expected: BTreeMap<i64, i64> = BTreeMap::new();
        for &(e1, c1) in &[(2i64, 3i64), (0, -1), (-1, 4)] {
            for &(e2, c2) in &[(1i64, -2i64), (0, 5)] {
                *expected.entry(e1 + e2).or_insert(0) += c1 * c2;
            }
        }
        let expected: Vec<(i64, i64)> = expected.into_iter().filter(|&(_, c)| c != 0).collect();
        assert_eq!(p.mul(&q).unwrap(), poly1(&expected));
    }

    #[test]
    fn rank_mismatch_is_reported() {
        let p = poly1(&[(1, 1)]);
        let q = polyn(2, &[(&[1, 0], 1)]);
        assert!(matches!(p.add(&q), Err(Error::RankMismatch { .. })));
        assert!(matches!(p.mul(&q), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn exact_division_examples() {
        // (1 - t^-2) / (1 - t^-1) = 1 + t^-1
        let p = poly1(&[(0, 1), (-2, -1)]);
        let q = p.exact_divide_binomial(&Weight::new(vec![-1])).unwrap();
        assert_eq!(q, poly1(&[(0, 1), (-1, 1)]));
        // round trip
        let back = q.mul(&poly1(&[(0, 1), (-1, -1)])).unwrap();
        assert_eq!(back, p);

        // 0 / f = 0
        let z = LaurentPolynomial::zero(1)
            .exact_divide_binomial(&Weight::new(vec![3]))
            .unwrap();
        assert!(z.is_zero());

        // (1 + t) / (1 - t): coefficient sum 2 ≠ 0, so not divisible.
        let p = poly1(&[(0, 1), (1, 1)]);
        assert!(divide_oracle(&p, &Weight::new(vec![1])).is_none());
        assert!(matches!(
            p.exact_divide_binomial(&Weight::new(vec![1])),
            Err(Error::NotDivisible)
        ));
    }

    #[test]
    fn division_handles_multivariate_mixed_signs() {
        // p = (1 - t1*t2^-1) * (t1^-2 + 3 t2)
        let f = polyn(2, &[(&[0, 0], 1), (&[1, -1], -1)]);
        let q0 = polyn(2, &[(&[-2, 0], 1), (&[0, 1], 3)]);
        let p = f.mul(&q0).unwrap();
        let q = p
            .exact_divide_binomial(&Weight::new(vec![1, -1]))
            .unwrap();
        assert_eq!(q, q0);
        let via_oracle = divide_oracle(&p, &Weight::new(vec![1, -1])).unwrap();
        assert_eq!(via_oracle, q0);
    }

    #[test]
    fn lattice_refinement_equates_scaled_exponents() {
        // t^1 at denominator 1 equals t^2 at denominator 2.
        let a = LaurentPolynomial::monomial(1, Weight::new(vec![1]), BigInt::one());
        let b = LaurentPolynomial::monomial_in(1, 2, Weight::new(vec![2]), BigInt::one());
        assert_eq!(a, b);
        let sum = a.add(&b).unwrap();
        assert_eq!(sum.lattice_denominator(), 2);
        assert_eq!(sum.coefficient(&Weight::new(vec![2])), BigInt::from(2));
    }

    #[test]
    fn display_matches_expected_rendering() {
        let p = poly1(&[(1, 1), (0, 1), (-1, 1)]);
        assert_eq!(alloc::format!("{p}"), "t^1 + 1 + t^-1");
        let q = poly1(&[(2, -3), (0, 1)]);
        assert_eq!(alloc::format!("{q}"), "-3*t^2 + 1");
        let half = LaurentPolynomial::monomial_in(1, 2, Weight::new(vec![1]), BigInt::one());
        assert_eq!(alloc::format!("{half}"), "t^(1/2)");
        let two = polyn(2, &[(&[1, -1], 1), (&[0, 0], -2)]);
        assert_eq!(alloc::format!("{two}"), "t1^1*t2^-1 - 2");
        assert_eq!(alloc::format!("{}", LaurentPolynomial::zero(1)), "0");
    }

    fn arb_poly(rank: usize) -> impl Strategy<Value = LaurentPolynomial> {
        let term = (
            proptest::collection::vec(-4i64..=4, rank),
            -5i64..=5,
        );
        proptest::collection::vec(term, 0..6).prop_map(move |terms| {
            LaurentPolynomial::from_terms(
                rank,
                1,
                terms
                    .into_iter()
                    .map(|(e, c)| (Weight::new(e), BigInt::from(c))),
            )
        })
    }

    fn arb_binomial_weight(rank: usize) -> impl Strategy<Value = Weight> {
        proptest::collection::vec(-3i64..=3, rank)
            .prop_filter("nonzero", |v| v.iter().any(|&e| e != 0))
            .prop_map(Weight::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(a in arb_poly(2), b in arb_poly(2), c in arb_poly(2)) {
            let ab = a.add(&b).unwrap();
            prop_assert_eq!(ab.clone(), b.add(&a).unwrap());
            prop_assert_eq!(
                ab.add(&c).unwrap(),
                a.add(&b.add(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn divide_round_trips(q in arb_poly(2), w in arb_binomial_weight(2)) {
            let binomial = LaurentPolynomial::from_terms(2, 1, [
                (Weight::zero(2), BigInt::one()),
                (w.clone(), BigInt::from(-1)),
            ]);
            let p = q.mul(&binomial).unwrap();
            let got = p.exact_divide_binomial(&w).unwrap();
            prop_assert_eq!(got.clone(), q);
            prop_assert_eq!(got.mul(&binomial).unwrap(), p);
        }

        #[test]
        fn divide_agrees_with_prefix_sum_oracle(p in arb_poly(2), w in arb_binomial_weight(2)) {
            match (p.exact_divide_binomial(&w), divide_oracle(&p, &w)) {
                (Ok(q), Some(expected)) => prop_assert_eq!(q, expected),
                (Err(Error::NotDivisible), None) => {}
                (lhs, rhs) => prop_assert!(false, "disagreement: {:?} vs {:?}", lhs, rhs.is_some()),
            }
        }

        #[test]
        fn inversion_is_a_ring_map(a in arb_poly(2), b in arb_poly(2)) {
            prop_assert_eq!(
                a.mul(&b).unwrap().inverted_variables(),
                a.inverted_variables().mul(&b.inverted_variables()).unwrap()
            );
            prop_assert_eq!(
                a.add(&b).unwrap().inverted_variables(),
                a.inverted_variables().add(&b.inverted_variables()).unwrap()
            );
        }
    }
}
