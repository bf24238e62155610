//! Numeric checks for distributional characters on the circle.
//!
//! The distribution under study is `Θ = Σ_{k≥0} (g ↦ g^{-k})`, the boundary
//! value of `1/(1 - g^{-1})`. Pairings with smooth test functions are
//! computed two independent ways:
//!
//! - partial sums `Σ_{k=0}^{N} φ̂(k)` of Fourier coefficients, and
//! - the Abel regularization `Σ_{k≥0} φ̂(k) r^k`, extrapolated `r → 1`
//!   by a Richardson tableau over `r_j = 1 - 2^{-j}`.
//!
//! Fourier coefficients use the convention `φ̂(k) = (1/2π)∫ φ(θ)e^{-ikθ}dθ`,
//! so that `⟨g^{-k}, e^{ikθ}⟩ = 1`. They are exact lookups for trigonometric
//! polynomials and trapezoid sums (the DFT, spectrally accurate for periodic
//! smooth functions) for sampled grids.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

const TAU: f64 = 2.0 * core::f64::consts::PI;

/// A smooth test function on the circle.
#[derive(Clone, Debug)]
pub enum TestFunction {
    /// Finite Fourier expansion: frequency → complex coefficient.
    TrigPolynomial(BTreeMap<i64, Complex64>),
    /// Values on the uniform grid `θ_j = 2πj/len`; `len` a power of two,
    /// at least 64.
    Sampled(Vec<f64>),
}

impl TestFunction {
    /// Build a trigonometric polynomial, pruning zero coefficients.
    pub fn trig<I>(coefficients: I) -> Self
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        let map = coefficients
            .into_iter()
            .filter(|(_, c)| c.norm() != 0.0)
            .collect();
        TestFunction::TrigPolynomial(map)
    }

    /// The constant function 1.
    pub fn one() -> Self {
        TestFunction::trig([(0, Complex64::new(1.0, 0.0))])
    }

    /// The exponential `e^{imθ}`.
    pub fn exponential(m: i64) -> Self {
        TestFunction::trig([(m, Complex64::new(1.0, 0.0))])
    }

    /// Wrap sampled values; the grid must be a power of two of size ≥ 64.
    pub fn sampled(values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        if n < 64 || !n.is_power_of_two() {
            return Err(Error::InvalidData {
                detail: "sample grids need a power-of-two size of at least 64".to_string(),
            });
        }
        Ok(TestFunction::Sampled(values))
    }

    /// Sample a closure on a uniform grid.
    pub fn from_fn(grid: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..grid).map(|j| f(TAU * j as f64 / grid as f64)).collect();
        Self::sampled(values)
    }

    /// Fourier coefficient `φ̂(k)`: exact lookup for trig polynomials,
    /// trapezoid quadrature (a DFT bin) for sampled grids.
    pub fn fourier_coefficient(&self, k: i64) -> Complex64 {
        match self {
            TestFunction::TrigPolynomial(coeffs) => {
                coeffs.get(&k).copied().unwrap_or(Complex64::new(0.0, 0.0))
            }
            TestFunction::Sampled(values) => {
                let n = values.len() as f64;
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, &v) in values.iter().enumerate() {
                    let angle = -(k as f64) * TAU * j as f64 / n;
                    acc += Complex64::new(libm::cos(angle), libm::sin(angle)) * v;
                }
                acc / n
            }
        }
    }

    /// Largest retained nonnegative frequency: the positive band limit for
    /// trig polynomials, the Nyquist index for sampled grids.
    fn mode_cutoff(&self) -> i64 {
        match self {
            TestFunction::TrigPolynomial(coeffs) => {
                coeffs.keys().copied().filter(|&k| k >= 0).max().unwrap_or(0)
            }
            TestFunction::Sampled(values) => (values.len() / 2) as i64,
        }
    }
}

/// `⟨Θ, φ⟩` truncated at `N`: the partial sum `Σ_{k=0}^{N} φ̂(k)`.
pub fn theta_pair_partial(phi: &TestFunction, truncation: i64) -> Result<Complex64> {
    if truncation < 0 {
        return Err(Error::NegativeTruncation);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..=truncation {
        acc += phi.fourier_coefficient(k);
    }
    Ok(acc)
}

/// The Abel-regularized pairing `Σ_{k≥0} φ̂(k) r^k`, summed term-wise up to
/// the representation's band limit (trig polynomials are exact; sampled
/// grids stop at the Nyquist mode).
pub fn theta_pair_abel(phi: &TestFunction, radius: f64, grid: usize) -> Result<Complex64> {
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::RadiusOutOfRange);
    }
    let cutoff = match phi {
        TestFunction::TrigPolynomial(_) => phi.mode_cutoff(),
        TestFunction::Sampled(_) => phi.mode_cutoff().min((grid / 2) as i64),
    };
    let mut acc = Complex64::new(0.0, 0.0);
    let mut power = 1.0;
    for k in 0..=cutoff {
        acc += phi.fourier_coefficient(k) * power;
        power *= radius;
    }
    Ok(acc)
}

/// Richardson extrapolation of `r ↦ ⟨Abel Θ_r, φ⟩` to `r = 1` over the
/// radii `r_j = 1 - 2^{-j}` for `j` in the given inclusive range.
pub fn theta_pair_abel_extrapolated(
    phi: &TestFunction,
    j_lo: u32,
    j_hi: u32,
    grid: usize,
) -> Result<Complex64> {
    debug_assert!(j_lo <= j_hi);
    let mut column: Vec<Complex64> = Vec::with_capacity((j_hi - j_lo + 1) as usize);
    for j in j_lo..=j_hi {
        let h = libm::exp2(-(j as f64));
        column.push(theta_pair_abel(phi, 1.0 - h, grid)?);
    }
    // Halving step: eliminate successive powers of h = 1 - r.
    let mut table = column;
    let mut order = 1u32;
    while table.len() > 1 {
        let factor = libm::exp2(order as f64);
        let mut next = Vec::with_capacity(table.len() - 1);
        for i in 1..table.len() {
            next.push((table[i] * factor - table[i - 1]) / (factor - 1.0));
        }
        table = next;
        order += 1;
    }
    Ok(table[0])
}

/// Default extrapolation ladder and grid from the verification suite.
pub const DEFAULT_ABEL_J_RANGE: (u32, u32) = (4, 10);
pub const DEFAULT_GRID: usize = 4096;

/// Remainders `|⟨Θ, φ⟩_partial(N) - reference|` for each requested `N`.
///
/// For trig polynomials the reference is the exact coefficient sum, so
/// remainders vanish identically once `N` passes the band limit; sampled
/// inputs compare against the Abel extrapolation.
pub fn remainder_decay(phi: &TestFunction, truncations: &[i64]) -> Result<Vec<f64>> {
    let reference = match phi {
        TestFunction::TrigPolynomial(_) => theta_pair_partial(phi, phi.mode_cutoff())?,
        TestFunction::Sampled(_) => theta_pair_abel_extrapolated(
            phi,
            DEFAULT_ABEL_J_RANGE.0,
            DEFAULT_ABEL_J_RANGE.1,
            DEFAULT_GRID,
        )?,
    };
    truncations
        .iter()
        .map(|&n| Ok((theta_pair_partial(phi, n)? - reference).norm()))
        .collect()
}

/// Outcome of running both pairings against one test function.
#[derive(Clone, Debug)]
pub struct PairingReport {
    pub partial_sum_value: Complex64,
    pub abel_value: Complex64,
    pub discrepancy: f64,
    pub truncation: i64,
    pub j_range: (u32, u32),
    pub grid: usize,
}

/// Run the partial sum at `truncation` and the extrapolated Abel pairing,
/// and report both with their discrepancy.
pub fn pairing_report(
    phi: &TestFunction,
    truncation: i64,
    grid: usize,
) -> Result<PairingReport> {
    let partial = theta_pair_partial(phi, truncation)?;
    let (j_lo, j_hi) = DEFAULT_ABEL_J_RANGE;
    let abel = theta_pair_abel_extrapolated(phi, j_lo, j_hi, grid)?;
    Ok(PairingReport {
        partial_sum_value: partial,
        abel_value: abel,
        discrepancy: (partial - abel).norm(),
        truncation,
        j_range: (j_lo, j_hi),
        grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    const ONE: Complex64 = Complex64::new(1.0, 0.0);
    const ZERO: Complex64 = Complex64::new(0.0, 0.0);

    #[test]
    fn constant_pairs_to_one() {
        let phi = TestFunction::one();
        for n in [0, 3, 64] {
            assert_eq!(theta_pair_partial(&phi, n).unwrap(), ONE);
        }
        for r in [0.1, 0.5, 0.99] {
            assert_eq!(theta_pair_abel(&phi, r, 4096).unwrap(), ONE);
        }
        assert!(remainder_decay(&phi, &[0, 1, 2]).unwrap().iter().all(|&d| d == 0.0));
    }

    #[test]
    fn positive_frequency_needs_enough_terms() {
        let phi = TestFunction::exponential(3);
        assert_eq!(theta_pair_partial(&phi, 2).unwrap(), ZERO);
        assert_eq!(theta_pair_partial(&phi, 3).unwrap(), ONE);
        assert_eq!(theta_pair_partial(&phi, 64).unwrap(), ONE);
    }

    #[test]
    fn negative_frequencies_never_pair() {
        for m in [1, 2, 7] {
            let phi = TestFunction::exponential(-m);
            assert_eq!(theta_pair_partial(&phi, 64).unwrap(), ZERO);
            assert_eq!(theta_pair_abel(&phi, 0.9, 4096).unwrap(), ZERO);
        }
    }

    #[test]
    fn abel_matches_geometric_weight() {
        // ⟨Abel Θ_r, e^{i3θ}⟩ = r³.
        let phi = TestFunction::exponential(3);
        let v = theta_pair_abel(&phi, 0.99, 4096).unwrap();
        assert!(close(v, Complex64::new(0.99f64.powi(3), 0.0), 1e-15));

        // Extrapolation recovers the r → 1 limit.
        let lim = theta_pair_abel_extrapolated(&phi, 4, 10, 4096).unwrap();
        assert!(close(lim, ONE, 1e-6));
    }

    #[test]
    fn radius_and_truncation_are_validated() {
        let phi = TestFunction::one();
        assert!(matches!(
            theta_pair_partial(&phi, -1),
            Err(Error::NegativeTruncation)
        ));
        assert!(matches!(
            theta_pair_abel(&phi, 1.0, 64),
            Err(Error::RadiusOutOfRange)
        ));
        assert!(matches!(
            theta_pair_abel(&phi, 0.0, 64),
            Err(Error::RadiusOutOfRange)
        ));
    }

    #[test]
    fn sampled_grid_size_is_validated() {
        assert!(TestFunction::sampled(vec![0.0; 48]).is_err());
        assert!(TestFunction::sampled(vec![0.0; 100]).is_err());
        assert!(TestFunction::sampled(vec![0.0; 128]).is_ok());
    }

    /// Modified Bessel function of the first kind `I_k(1)` by its series;
    /// the Fourier coefficients of `exp(cos θ)`.
    fn bessel_i_at_one(k: u32) -> f64 {
        let mut term = 1.0;
        for j in 1..=k {
            term *= 0.5 / j as f64;
        }
        let mut sum = 0.0;
        let mut m = 0u32;
        loop {
            sum += term;
            m += 1;
            term *= 0.25 / (m as f64 * (m + k) as f64);
            if term < 1e-18 {
                break;
            }
        }
        sum
    }

    #[test]
    fn sampled_exp_cos_matches_bessel_coefficients() {
        let phi = TestFunction::from_fn(4096, |theta| libm::exp(libm::cos(theta))).unwrap();
        for k in 0..12i64 {
            let expected = bessel_i_at_one(k as u32);
            let got = phi.fourier_coefficient(k);
            assert!(close(got, Complex64::new(expected, 0.0), 1e-12), "k = {k}");
        }
    }

    #[test]
    fn exp_cos_pairings_agree() {
        let phi = TestFunction::from_fn(4096, |theta| libm::exp(libm::cos(theta))).unwrap();
        let report = pairing_report(&phi, 64, 4096).unwrap();
        assert!(report.discrepancy < 1e-6, "discrepancy {}", report.discrepancy);

        // Remainders decay monotonically past N = 10 until they bottom out
        // at the extrapolation noise floor.
        let ns: Vec<i64> = (0..20).collect();
        let remainders = remainder_decay(&phi, &ns).unwrap();
        for pair in remainders.windows(2).skip(10) {
            assert!(pair[1] <= pair[0] + 1e-15 || pair[1] < 1e-9);
        }
    }

    #[test]
    fn trig_remainders_vanish_past_band_limit() {
        let phi = TestFunction::trig([
            (5, Complex64::new(0.3, -0.2)),
            (2, Complex64::new(1.0, 0.0)),
            (-1, Complex64::new(0.4, 0.4)),
        ]);
        let remainders = remainder_decay(&phi, &[3, 4, 5, 6, 10, 64]).unwrap();
        assert!(remainders[0] > 0.0);
        for &r in &remainders[2..] {
            assert_eq!(r, 0.0);
        }
    }

    #[test]
    fn pairing_is_linear() {
        let a = TestFunction::exponential(2);
        let b = TestFunction::exponential(4);
        let combined = TestFunction::trig([
            (2, Complex64::new(2.0, 1.0)),
            (4, Complex64::new(-0.5, 0.0)),
        ]);
        for n in [1, 4, 16] {
            let lhs = theta_pair_partial(&combined, n).unwrap();
            let rhs = theta_pair_partial(&a, n).unwrap() * Complex64::new(2.0, 1.0)
                + theta_pair_partial(&b, n).unwrap() * Complex64::new(-0.5, 0.0);
            assert!(close(lhs, rhs, 1e-15));
        }
        let lhs = theta_pair_abel(&combined, 0.75, 512).unwrap();
        let rhs = theta_pair_abel(&a, 0.75, 512).unwrap() * Complex64::new(2.0, 1.0)
            + theta_pair_abel(&b, 0.75, 512).unwrap() * Complex64::new(-0.5, 0.0);
        assert!(close(lhs, rhs, 1e-15));
    }

    #[test]
    fn partial_sums_match_geometric_expansion_pairing() {
        // Pairing e^{ikθ} against the windowed expansion of 1/(1 - t^{-1})
        // picks out the coefficient of t^{-k}, matching the partial sum.
        use crate::fraction::CharacterFraction;
        use crate::poly::LaurentPolynomial;
        use crate::scenario::geometric_expansion;
        use crate::weight::Weight;

        let theta_fraction =
            CharacterFraction::new(LaurentPolynomial::one(1), &[Weight::new(vec![-1])]).unwrap();
        for n in [0u32, 3, 7] {
            let expansion = geometric_expansion(&theta_fraction, n).unwrap();
            for k in 0..=(n as i64 + 2) {
                let phi = TestFunction::exponential(k);
                let via_pairing = theta_pair_partial(&phi, n as i64).unwrap();
                let coeff = expansion.coefficient(&Weight::new(vec![-k]));
                let via_expansion = if coeff == num_bigint::BigInt::from(1) {
                    ONE
                } else {
                    ZERO
                };
                assert_eq!(via_pairing, via_expansion, "n={n} k={k}");
            }
        }
    }
}
