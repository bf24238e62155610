//! Evaluation of characters at torus elements.
//!
//! A [`TorusElement`] is either symbolic (`Generic`), a vector of rational
//! angle fractions `p_i/q_i` (meaning `θ_i = 2π p_i/q_i`), or a vector of raw
//! radians. For rational elements, regularity of a weight — whether `t^w = 1`
//! there — is decided exactly in rational arithmetic even though the value
//! itself is floating point. Numeric elements only get a tolerance check.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::LaurentPolynomial;
use crate::weight::Weight;
use crate::DEFAULT_SINGULAR_TOLERANCE;

const TAU: f64 = 2.0 * core::f64::consts::PI;

/// An evaluation point on the torus.
#[derive(Clone, Debug, PartialEq)]
pub enum TorusElement {
    /// Symbolic evaluation: characters are returned unchanged.
    Generic,
    /// Angles `θ_i = 2π p_i/q_i` as reduced fractions; regularity checks are
    /// exact.
    Rational(Vec<Rational64>),
    /// Angles in radians; no exactness guarantee.
    Numeric(Vec<f64>),
}

impl TorusElement {
    pub fn generic() -> Self {
        TorusElement::Generic
    }

    /// Build a rational element from `(p, q)` pairs. Fractions are reduced
    /// and denominators made positive.
    pub fn rational(angles: Vec<(i64, i64)>) -> Result<Self> {
        let mut out = Vec::with_capacity(angles.len());
        for (p, q) in angles {
            if q == 0 {
                return Err(Error::InvalidData {
                    detail: String::from("zero denominator in rational angle"),
                });
            }
            out.push(Rational64::new(p, q));
        }
        Ok(TorusElement::Rational(out))
    }

    pub fn numeric(angles: Vec<f64>) -> Self {
        TorusElement::Numeric(angles)
    }

    /// Rank of the torus the element lives on; `None` for generic elements.
    pub fn rank(&self) -> Option<usize> {
        match self {
            TorusElement::Generic => None,
            TorusElement::Rational(a) => Some(a.len()),
            TorusElement::Numeric(a) => Some(a.len()),
        }
    }

    /// The inverse element `g^{-1}` (negated angles).
    pub fn inverse(&self) -> Self {
        match self {
            TorusElement::Generic => TorusElement::Generic,
            TorusElement::Rational(a) => {
                TorusElement::Rational(a.iter().map(|r| -r).collect())
            }
            TorusElement::Numeric(a) => {
                TorusElement::Numeric(a.iter().map(|x| -x).collect())
            }
        }
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        match self.rank() {
            None => Err(Error::GenericNotEvaluable),
            Some(r) if r == rank => Ok(()),
            Some(r) => Err(Error::RankMismatch { left: rank, right: r }),
        }
    }
}

/// Exact exponent sum `(w · θ) / 2π = Σ w_i p_i/q_i / D` for a rational
/// element.
fn rational_turns(w: &Weight, denom: i64, angles: &[Rational64]) -> BigRational {
    let mut acc = BigRational::zero();
    for (&e, r) in w.entries().iter().zip(angles) {
        if e == 0 {
            continue;
        }
        acc += BigRational::new(
            BigInt::from(e) * BigInt::from(*r.numer()),
            BigInt::from(*r.denom()) * BigInt::from(denom),
        );
    }
    acc
}

/// Is `t^w = 1` at the rational element? Decided exactly.
pub fn is_singular_rational(w: &Weight, denom: i64, angles: &[Rational64]) -> bool {
    rational_turns(w, denom, angles).is_integer()
}

fn unit_circle(turns: f64) -> Complex64 {
    let angle = TAU * turns;
    Complex64::new(libm::cos(angle), libm::sin(angle))
}

/// Value of the character `t^w` (with `w` at lattice denominator `denom`) at
/// a non-generic element.
pub fn character_value(w: &Weight, denom: i64, g: &TorusElement) -> Result<Complex64> {
    g.check_rank(w.rank())?;
    match g {
        TorusElement::Generic => Err(Error::GenericNotEvaluable),
        TorusElement::Rational(angles) => {
            let turns = rational_turns(w, denom, angles);
            // Reduce modulo 1 exactly before rounding to f64.
            let frac = &turns - turns.floor();
            Ok(unit_circle(frac.to_f64().unwrap_or(0.0)))
        }
        TorusElement::Numeric(angles) => {
            let phase: f64 = w
                .entries()
                .iter()
                .zip(angles)
                .map(|(&e, &theta)| e as f64 * theta)
                .sum::<f64>()
                / denom as f64;
            Ok(Complex64::new(libm::cos(phase), libm::sin(phase)))
        }
    }
}

/// Value of a denominator factor `1 - t^w` at `g`, with the singularity
/// check appropriate to the element kind.
pub fn factor_value(
    w: &Weight,
    denom: i64,
    g: &TorusElement,
    singular_tolerance: f64,
) -> Result<Complex64> {
    g.check_rank(w.rank())?;
    match g {
        TorusElement::Generic => Err(Error::GenericNotEvaluable),
        TorusElement::Rational(angles) => {
            if is_singular_rational(w, denom, angles) {
                return Err(singular_error(w, denom));
            }
            Ok(Complex64::new(1.0, 0.0) - character_value(w, denom, g)?)
        }
        TorusElement::Numeric(_) => {
            let value = Complex64::new(1.0, 0.0) - character_value(w, denom, g)?;
            if value.norm() <= singular_tolerance {
                return Err(singular_error(w, denom));
            }
            Ok(value)
        }
    }
}

pub(crate) fn singular_error(w: &Weight, denom: i64) -> Error {
    let exponents: Vec<String> = w
        .entries()
        .iter()
        .map(|&e| {
            if denom == 1 {
                format!("{e}")
            } else {
                format!("{e}/{denom}")
            }
        })
        .collect();
    Error::SingularElement {
        detail: format!("factor 1 - t^[{}] vanishes", exponents.join(",")),
    }
}

/// Evaluate a Laurent polynomial at a non-generic element.
pub fn eval_polynomial(p: &LaurentPolynomial, g: &TorusElement) -> Result<Complex64> {
    g.check_rank(p.rank())?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (w, c) in p.terms() {
        let coeff = c.to_f64().unwrap_or(if c.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
        acc += character_value(w, p.lattice_denominator(), g)? * coeff;
    }
    Ok(acc)
}

/// Default numeric singular tolerance, re-exported for callers that
/// thread their own configuration.
pub fn default_singular_tolerance() -> f64 {
    DEFAULT_SINGULAR_TOLERANCE
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::test_support::poly1;
    use alloc::vec;

    #[test]
    fn polynomial_at_identity_sums_coefficients() {
        let p = poly1(&[(5, 2), (0, 3), (-2, -1)]);
        let g = TorusElement::rational(vec![(0, 1)]).unwrap();
        let v = eval_polynomial(&p, &g).unwrap();
        assert!((v - Complex64::new(4.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rational_regularity_is_exact() {
        // θ = 2π/3, weight 3: 3·(1/3) = 1 ∈ ℤ, singular.
        let angles = vec![Rational64::new(1, 3)];
        assert!(is_singular_rational(&Weight::new(vec![3]), 1, &angles));
        assert!(!is_singular_rational(&Weight::new(vec![2]), 1, &angles));
        // Lattice denominator 2: weight 3/2 at θ = 2π·(2/3): 3/2·2/3 = 1.
        assert!(is_singular_rational(&Weight::new(vec![3]), 2, &angles.iter().map(|_| Rational64::new(2, 3)).collect::<Vec<_>>()));
    }

    #[test]
    fn factor_at_half_turn() {
        // 1 - t^{-1} at θ = π equals 1 - e^{-iπ} = 2.
        let g = TorusElement::rational(vec![(1, 2)]).unwrap();
        let v = factor_value(&Weight::new(vec![-1]), 1, &g, 1e-12).unwrap();
        assert!((v - Complex64::new(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn singular_factor_is_rejected() {
        let g = TorusElement::rational(vec![(0, 1)]).unwrap();
        let err = factor_value(&Weight::new(vec![-1]), 1, &g, 1e-12).unwrap_err();
        assert!(matches!(err, Error::SingularElement { .. }));

        // Numeric elements use the tolerance.
        let g = TorusElement::numeric(vec![1e-14]);
        let err = factor_value(&Weight::new(vec![1]), 1, &g, 1e-12).unwrap_err();
        assert!(matches!(err, Error::SingularElement { .. }));
    }

    #[test]
    fn generic_elements_do_not_evaluate() {
        let p = poly1(&[(1, 1)]);
        assert!(matches!(
            eval_polynomial(&p, &TorusElement::generic()),
            Err(Error::GenericNotEvaluable)
        ));
    }

    #[test]
    fn rank_mismatch_detected() {
        let p = poly1(&[(1, 1)]);
        let g = TorusElement::numeric(vec![0.3, 0.4]);
        assert!(matches!(
            eval_polynomial(&p, &g),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn large_rational_angles_stay_accurate() {
        // Exact reduction modulo 1 keeps huge angle sums precise.
        let g = TorusElement::rational(vec![(1_000_000_007, 3)]).unwrap();
        // 3·(1000000007/3) ≡ 0 mod 1, so t^3 lands exactly on 1.
        let v = character_value(&Weight::new(vec![3]), 1, &g).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        // 1000000007/3 ≡ 2/3 mod 1.
        let v = character_value(&Weight::new(vec![1]), 1, &g).unwrap();
        let expected = unit_circle(2.0 / 3.0);
        assert!((v - expected).norm() < 1e-12);
    }
}
