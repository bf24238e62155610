//! Root systems, Weyl groups, and character formulas on the torus.
//!
//! Root data is supplied as explicit integer root lists in coordinates where
//! the standard dot product is invariant under the reflections (true for the
//! built-in presets A1, A1xA1, A2, B2; A2 lives in rank-3 permutation
//! coordinates). Positivity is split by a stored regular vector, and the
//! Weyl group is enumerated by breadth-first closure over the simple
//! reflections, which also yields word lengths and signs.
//!
//! The character machinery computes, exactly:
//!
//! - the Weyl denominator `Δ = t^ρ ∏_{α>0} (1 - t^{-α})`;
//! - alternating Weyl sums `Σ_w ε(w) t^{w·λ} / Δ` over the full or compact
//!   Weyl group, simplified whenever `Δ` divides;
//! - the fixed-point scenario on the flag space `G/T` whose index recomputes
//!   the same sum along an independent code path;
//! - numeric discrete-series values `(-1)^{dim(G/K)/2} · (Weyl sum)(g)` at
//!   regular torus elements.
//!
//! Half-integral `ρ` (odd positive-root sums, e.g. B2) is handled by the
//! lattice denominator `D = 2` on the stored exponents.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::eval::TorusElement;
use crate::fraction::CharacterFraction;
use crate::poly::LaurentPolynomial;
use crate::scenario::{FixedPointDatum, FixedPointScenario, OperatorKind};
use crate::weight::Weight;

/// Default cap on Weyl group enumeration.
pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

/// An explicit root system with a distinguished compact sub-root-system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemData {
    rank: usize,
    roots: Vec<Weight>,
    compact_roots: Vec<Weight>,
    regular_vector: Vec<i64>,
}

impl RootSystemData {
    /// Validate and build. Roots must be nonzero, closed under negation, and
    /// crystallographic in the given coordinates; `compact_roots` must be a
    /// negation-closed subset; `regular_vector` must pair nonzero with every
    /// root.
    pub fn new(
        rank: usize,
        roots: Vec<Weight>,
        compact_roots: Vec<Weight>,
        regular_vector: Vec<i64>,
    ) -> Result<Self> {
        if regular_vector.len() != rank {
            return Err(Error::InvalidRootSystem {
                detail: "regular vector length differs from rank".to_string(),
            });
        }
        let root_set: BTreeSet<&Weight> = roots.iter().collect();
        for root in &roots {
            if root.rank() != rank {
                return Err(Error::InvalidRootSystem {
                    detail: "root length differs from rank".to_string(),
                });
            }
            if root.is_zero() {
                return Err(Error::InvalidRootSystem { detail: "zero root".to_string() });
            }
            if !root_set.contains(&root.negated()) {
                return Err(Error::InvalidRootSystem {
                    detail: "root set is not closed under negation".to_string(),
                });
            }
            if root.dot(&regular_vector) == 0 {
                return Err(Error::SingularRegularVector);
            }
            reflection_matrix(rank, root)?;
        }
        for root in &compact_roots {
            if !root_set.contains(root) {
                return Err(Error::InvalidRootSystem {
                    detail: "compact root outside the root set".to_string(),
                });
            }
            if !compact_roots.contains(&root.negated()) {
                return Err(Error::InvalidRootSystem {
                    detail: "compact roots are not closed under negation".to_string(),
                });
            }
        }
        Ok(RootSystemData { rank, roots, compact_roots, regular_vector })
    }

    /// The A1 system in the SU(2) weight normalization: roots ±2.
    pub fn a1() -> Self {
        let roots = alloc::vec![Weight::new(alloc::vec![2]), Weight::new(alloc::vec![-2])];
        Self::new(1, roots.clone(), roots, alloc::vec![1]).expect("valid preset")
    }

    /// Two commuting copies of A1.
    pub fn a1xa1() -> Self {
        let roots = alloc::vec![
            Weight::new(alloc::vec![2, 0]),
            Weight::new(alloc::vec![-2, 0]),
            Weight::new(alloc::vec![0, 2]),
            Weight::new(alloc::vec![0, -2]),
        ];
        Self::new(2, roots.clone(), roots, alloc::vec![2, 1]).expect("valid preset")
    }

    /// A2 in rank-3 permutation coordinates: roots `e_i - e_j`.
    pub fn a2() -> Self {
        let mut roots = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let mut e = alloc::vec![0i64; 3];
                    e[i] = 1;
                    e[j] = -1;
                    roots.push(Weight::new(e));
                }
            }
        }
        Self::new(3, roots.clone(), roots, alloc::vec![2, 1, 0]).expect("valid preset")
    }

    /// B2: roots `±e_i` and `±e_1 ± e_2`; ρ is half-integral here.
    pub fn b2() -> Self {
        let mut roots = Vec::new();
        for e in [[1, 0], [0, 1], [1, 1], [1, -1]] {
            roots.push(Weight::new(alloc::vec![e[0], e[1]]));
            roots.push(Weight::new(alloc::vec![-e[0], -e[1]]));
        }
        Self::new(2, roots.clone(), roots, alloc::vec![2, 1]).expect("valid preset")
    }

    /// Look up a preset by name.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "A1" => Some(Self::a1()),
            "A1xA1" => Some(Self::a1xa1()),
            "A2" => Some(Self::a2()),
            "B2" => Some(Self::b2()),
            _ => None,
        }
    }

    /// Same roots with a different compact subset.
    pub fn with_compact_roots(&self, compact_roots: Vec<Weight>) -> Result<Self> {
        Self::new(
            self.rank,
            self.roots.clone(),
            compact_roots,
            self.regular_vector.clone(),
        )
    }

    /// Same roots with an empty compact part (one flag fixed point).
    pub fn with_trivial_compact_part(&self) -> Self {
        self.with_compact_roots(Vec::new()).expect("empty subset is valid")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    pub fn compact_roots(&self) -> &[Weight] {
        &self.compact_roots
    }

    pub fn regular_vector(&self) -> &[i64] {
        &self.regular_vector
    }

    /// Roots pairing positively with the regular vector; exactly half of the
    /// root set.
    pub fn positive_roots(&self) -> Vec<Weight> {
        self.roots
            .iter()
            .filter(|r| r.dot(&self.regular_vector) > 0)
            .cloned()
            .collect()
    }

    fn compact_positive_roots(&self) -> Vec<Weight> {
        self.compact_roots
            .iter()
            .filter(|r| r.dot(&self.regular_vector) > 0)
            .cloned()
            .collect()
    }

    /// Lattice denominator needed to store ρ: 2 when the positive-root sum
    /// has an odd entry, 1 otherwise.
    pub fn lattice_denominator(&self) -> i64 {
        let sum = self.positive_root_sum();
        if sum.entries().iter().all(|e| e % 2 == 0) {
            1
        } else {
            2
        }
    }

    fn positive_root_sum(&self) -> Weight {
        self.positive_roots()
            .iter()
            .fold(Weight::zero(self.rank), |acc, r| acc.plus(r))
    }

    /// Half the sum of the positive roots, as stored exponents at
    /// [`Self::lattice_denominator`].
    pub fn half_sum_rho(&self) -> Weight {
        let sum = self.positive_root_sum();
        if self.lattice_denominator() == 1 {
            Weight::new(sum.entries().iter().map(|e| e / 2).collect())
        } else {
            sum
        }
    }

    /// Simple roots of a positive system: positives not expressible as a sum
    /// of two positives.
    fn simple_roots(positives: &[Weight]) -> Vec<Weight> {
        positives
            .iter()
            .filter(|candidate| {
                !positives.iter().any(|a| {
                    positives
                        .iter()
                        .any(|b| a.plus(b) == **candidate)
                })
            })
            .cloned()
            .collect()
    }

    /// Enumerate the Weyl group (of the full or compact root system) by
    /// breadth-first closure over simple reflections, with the default cap.
    pub fn weyl_group(&self, compact_only: bool) -> Result<Vec<WeylElement>> {
        self.weyl_group_with_cap(compact_only, DEFAULT_WEYL_CAP)
    }

    pub fn weyl_group_with_cap(
        &self,
        compact_only: bool,
        cap: usize,
    ) -> Result<Vec<WeylElement>> {
        let positives = if compact_only {
            self.compact_positive_roots()
        } else {
            self.positive_roots()
        };
        let simples = Self::simple_roots(&positives);
        let generators: Vec<Vec<i64>> = simples
            .iter()
            .map(|r| reflection_matrix(self.rank, r))
            .collect::<Result<_>>()?;

        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut out: Vec<WeylElement> = Vec::new();
        let mut queue: VecDeque<(Vec<i64>, u32)> = VecDeque::new();
        let identity = identity_matrix(self.rank);
        seen.insert(identity.clone());
        queue.push_back((identity, 0));
        while let Some((matrix, length)) = queue.pop_front() {
            if out.len() >= cap {
                return Err(Error::GroupTooLarge { cap });
            }
            for generator in &generators {
                let next = matrix_product(&matrix, generator, self.rank);
                if seen.insert(next.clone()) {
                    queue.push_back((next, length + 1));
                }
            }
            let sign = if length % 2 == 0 { 1 } else { -1 };
            debug_assert_eq!(sign, int_determinant(&matrix, self.rank));
            out.push(WeylElement { rank: self.rank, matrix, length, sign });
        }
        Ok(out)
    }

    /// The Weyl denominator `Δ = t^ρ ∏_{α>0} (1 - t^{-α})` as an exact
    /// Laurent polynomial in the ρ-refined lattice.
    pub fn weyl_denominator(&self) -> LaurentPolynomial {
        let d = self.lattice_denominator();
        let rho = self.half_sum_rho();
        let mut delta = LaurentPolynomial::monomial_in(self.rank, d, rho, BigInt::from(1));
        for alpha in self.positive_roots() {
            let factor = LaurentPolynomial::from_terms(
                self.rank,
                d,
                [
                    (Weight::zero(self.rank), BigInt::from(1)),
                    (alpha.negated().scaled(d), BigInt::from(-1)),
                ],
            );
            delta = delta.mul(&factor).expect("equal ranks");
        }
        delta
    }

    /// The alternating Weyl sum `Σ_w ε(w) t^{w·λ} / Δ` over the full Weyl
    /// group or the compact one, as a character fraction, simplified when
    /// the denominator divides.
    pub fn character_weyl_sum(
        &self,
        lambda: &HighestWeightParam,
        compact_only: bool,
    ) -> Result<CharacterFraction> {
        let d = self.lattice_denominator();
        let rho = self.half_sum_rho();
        let group = self.weyl_group(compact_only)?;
        let mut numerator = LaurentPolynomial::zero(self.rank);
        for w in &group {
            numerator = numerator.add(&LaurentPolynomial::monomial_in(
                self.rank,
                d,
                w.apply(&lambda.lambda),
                BigInt::from(w.sign),
            ))?;
        }
        // 1/Δ = t^{-ρ} ∏ 1/(1 - t^{-α})
        numerator = numerator.mul_monomial(&rho.negated(), &BigInt::from(1));
        let factors: Vec<Weight> = self
            .positive_roots()
            .iter()
            .map(|alpha| alpha.negated().scaled(d))
            .collect();
        Ok(CharacterFraction::new(numerator, &factors)?.simplified())
    }

    /// The fixed-point scenario of the compact torus acting on the flag
    /// space: one Dolbeault point per compact Weyl element `w`, with tangent
    /// weights `{w·α : α > 0}` and twisting character `t^{w·(λ-ρ)}`. Its
    /// index equals [`Self::character_weyl_sum`] with `compact_only = true`.
    pub fn flag_scenario(&self, lambda: &HighestWeightParam) -> Result<FixedPointScenario> {
        let d = self.lattice_denominator();
        let rho = self.half_sum_rho();
        // λ - ρ is integral: convert stored exponents back to true weights.
        let mu = Weight::new(
            lambda
                .lambda
                .minus(&rho)
                .entries()
                .iter()
                .map(|e| e / d)
                .collect(),
        );
        let positives = self.positive_roots();
        let group = self.weyl_group(true)?;
        let mut points = Vec::with_capacity(group.len());
        for (i, w) in group.iter().enumerate() {
            let tangent: Vec<Weight> = positives.iter().map(|a| w.apply(a)).collect();
            let bundle = LaurentPolynomial::monomial(self.rank, w.apply(&mu), BigInt::from(1));
            points.push(FixedPointDatum::dolbeault(format!("w{i}"), tangent, bundle));
        }
        FixedPointScenario::new(self.rank, OperatorKind::Dolbeault, points)
    }

    /// Numeric value of the Weyl character sum at a torus element.
    pub fn numeric_character(
        &self,
        lambda: &HighestWeightParam,
        compact_only: bool,
        g: &TorusElement,
    ) -> Result<Complex64> {
        self.character_weyl_sum(lambda, compact_only)?.eval(g)
    }

    /// Discrete-series character value on the regular set:
    /// `(-1)^{dim(G/K)/2}` times the compact Weyl sum at `g`. The dimension
    /// of `G/K` must be even; the caller supplies it.
    pub fn discrete_series_value(
        &self,
        lambda: &HighestWeightParam,
        dim_g_over_k: u32,
        g: &TorusElement,
    ) -> Result<Complex64> {
        let sign = discrete_series_sign(dim_g_over_k)?;
        Ok(self.numeric_character(lambda, true, g)? * sign as f64)
    }
}

/// `(-1)^{dim(G/K)/2}` as an integer; the dimension must be even.
pub fn discrete_series_sign(dim_g_over_k: u32) -> Result<i64> {
    if dim_g_over_k % 2 != 0 {
        return Err(Error::InvalidData {
            detail: "dim G/K must be even".to_string(),
        });
    }
    Ok(if (dim_g_over_k / 2) % 2 == 0 { 1 } else { -1 })
}

/// A regular infinitesimal character parameter, stored at the root system's
/// lattice denominator; `λ - ρ` (equivalently `λ + ρ`) must be integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestWeightParam {
    lambda: Weight,
}

impl HighestWeightParam {
    pub fn new(rs: &RootSystemData, lambda: Weight) -> Result<Self> {
        if lambda.rank() != rs.rank() {
            return Err(Error::RankMismatch { left: rs.rank(), right: lambda.rank() });
        }
        for root in rs.roots() {
            let scaled: Vec<i64> = root.entries().to_vec();
            if lambda.dot(&scaled) == 0 {
                return Err(Error::SingularLambda);
            }
        }
        let d = rs.lattice_denominator();
        let rho = rs.half_sum_rho();
        if lambda
            .minus(&rho)
            .entries()
            .iter()
            .any(|e| e % d != 0)
        {
            return Err(Error::NonIntegralLambda);
        }
        Ok(HighestWeightParam { lambda })
    }

    /// Stored exponents, at the owning system's lattice denominator.
    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }
}

/// One Weyl group element: an integer matrix on the weight lattice, its word
/// length in simple reflections, and its sign `(-1)^length = det`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    rank: usize,
    matrix: Vec<i64>,
    length: u32,
    sign: i64,
}

impl WeylElement {
    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn sign(&self) -> i64 {
        self.sign
    }

    /// Row-major `rank × rank` matrix entries.
    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    /// Apply to a weight (matrix–vector product).
    pub fn apply(&self, w: &Weight) -> Weight {
        debug_assert_eq!(w.rank(), self.rank);
        let entries = (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| self.matrix[i * self.rank + j] * w.entries()[j])
                    .sum()
            })
            .collect();
        Weight::new(entries)
    }

    pub fn determinant(&self) -> i64 {
        int_determinant(&self.matrix, self.rank)
    }
}

fn identity_matrix(rank: usize) -> Vec<i64> {
    let mut m = alloc::vec![0i64; rank * rank];
    for i in 0..rank {
        m[i * rank + i] = 1;
    }
    m
}

fn matrix_product(a: &[i64], b: &[i64], rank: usize) -> Vec<i64> {
    let mut out = alloc::vec![0i64; rank * rank];
    for i in 0..rank {
        for k in 0..rank {
            let aik = a[i * rank + k];
            if aik == 0 {
                continue;
            }
            for j in 0..rank {
                out[i * rank + j] += aik * b[k * rank + j];
            }
        }
    }
    out
}

/// Reflection in a root: `s(x) = x - 2(x,α)/(α,α)·α`. Fails when the matrix
/// is not integral on the stored lattice.
fn reflection_matrix(rank: usize, alpha: &Weight) -> Result<Vec<i64>> {
    let norm: i64 = alpha.entries().iter().map(|e| e * e).sum();
    let mut m = identity_matrix(rank);
    for i in 0..rank {
        for j in 0..rank {
            let twice = 2 * alpha.entries()[i] * alpha.entries()[j];
            if twice % norm != 0 {
                return Err(Error::NonIntegralReflection);
            }
            m[i * rank + j] -= twice / norm;
        }
    }
    Ok(m)
}

/// Integer determinant by fraction-free (Bareiss) elimination.
fn int_determinant(matrix: &[i64], rank: usize) -> i64 {
    if rank == 0 {
        return 1;
    }
    let mut a: Vec<i128> = matrix.iter().map(|&x| x as i128).collect();
    let mut sign = 1i128;
    let mut previous = 1i128;
    for k in 0..rank - 1 {
        if a[k * rank + k] == 0 {
            let Some(swap) = (k + 1..rank).find(|&i| a[i * rank + k] != 0) else {
                return 0;
            };
            for j in 0..rank {
                a.swap(k * rank + j, swap * rank + j);
            }
            sign = -sign;
        }
        for i in k + 1..rank {
            for j in k + 1..rank {
                a[i * rank + j] = (a[i * rank + j] * a[k * rank + k]
                    - a[i * rank + k] * a[k * rank + j])
                    / previous;
            }
            a[i * rank + k] = 0;
        }
        previous = a[k * rank + k];
    }
    (sign * a[rank * rank - 1]) as i64
}
