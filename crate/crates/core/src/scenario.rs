//! Torus actions with isolated fixed points and their index sums.
//!
//! A [`FixedPointScenario`] holds the combinatorial data a Lefschetz-type
//! fixed point formula consumes: per fixed point, the nonzero tangent
//! weights and the virtual characters of the operator there. Three operator
//! kinds are supported:
//!
//! - `Generic`: explicit `Tr(g|E±)` numerators over the full real
//!   determinant `∏ (1 - t^{-α})(1 - t^{α})`;
//! - `Dolbeault`: a twisting bundle character over the complex determinant
//!   `∏ (1 - t^{-α})`;
//! - `DeRham`: numerators derived from the exterior algebra of the tangent
//!   space, which collapse to the fixed point count.
//!
//! On top of the plain index sum the module provides the linearisation
//! decomposition, twisting by K-theory classes (index pairing), products,
//! relative indices, and a truncated geometric-series expansion for
//! distribution checks on the circle.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fraction::CharacterFraction;
use crate::poly::LaurentPolynomial;
use crate::weight::Weight;

/// The operator kind a scenario models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    Generic,
    Dolbeault,
    DeRham,
}

impl OperatorKind {
    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::Generic => "generic",
            OperatorKind::Dolbeault => "dolbeault",
            OperatorKind::DeRham => "deRham",
        }
    }
}

/// Kind-specific data attached to one fixed point.
#[derive(Clone, Debug, PartialEq)]
pub enum PointData {
    /// Characters `Tr(g|E^+)` and `Tr(g|E^-)` at the point.
    Generic {
        plus: LaurentPolynomial,
        minus: LaurentPolynomial,
    },
    /// Character of the twisting fibre `F_m`.
    Dolbeault { bundle: LaurentPolynomial },
    /// No extra data; the numerators come from the tangent weights.
    DeRham,
}

impl PointData {
    fn kind(&self) -> OperatorKind {
        match self {
            PointData::Generic { .. } => OperatorKind::Generic,
            PointData::Dolbeault { .. } => OperatorKind::Dolbeault,
            PointData::DeRham => OperatorKind::DeRham,
        }
    }
}

/// One isolated fixed point: a label, its tangent weights, and the operator
/// data the owning scenario's kind requires.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointDatum {
    name: String,
    tangent_weights: Vec<Weight>,
    data: PointData,
}

impl FixedPointDatum {
    pub fn generic(
        name: impl Into<String>,
        tangent_weights: Vec<Weight>,
        plus: LaurentPolynomial,
        minus: LaurentPolynomial,
    ) -> Self {
        FixedPointDatum {
            name: name.into(),
            tangent_weights,
            data: PointData::Generic { plus, minus },
        }
    }

    pub fn dolbeault(
        name: impl Into<String>,
        tangent_weights: Vec<Weight>,
        bundle: LaurentPolynomial,
    ) -> Self {
        FixedPointDatum {
            name: name.into(),
            tangent_weights,
            data: PointData::Dolbeault { bundle },
        }
    }

    pub fn derham(name: impl Into<String>, tangent_weights: Vec<Weight>) -> Self {
        FixedPointDatum { name: name.into(), tangent_weights, data: PointData::DeRham }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tangent_weights(&self) -> &[Weight] {
        &self.tangent_weights
    }

    pub fn data(&self) -> &PointData {
        &self.data
    }
}

/// A rank-n torus action with isolated fixed points.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointScenario {
    rank: usize,
    kind: OperatorKind,
    points: Vec<FixedPointDatum>,
}

impl FixedPointScenario {
    /// Validate and build a scenario. Every point must carry the data of the
    /// scenario's operator kind, weights must match the rank and be nonzero.
    pub fn new(
        rank: usize,
        kind: OperatorKind,
        points: Vec<FixedPointDatum>,
    ) -> Result<Self> {
        for point in &points {
            if point.data.kind() != kind {
                return Err(Error::WrongOperatorKind {
                    expected: kind.name(),
                    found: point.data.kind().name(),
                });
            }
            for w in &point.tangent_weights {
                if w.rank() != rank {
                    return Err(Error::RankMismatch { left: rank, right: w.rank() });
                }
                if w.is_zero() {
                    return Err(Error::ZeroTangentWeight { point: point.name.clone() });
                }
            }
            let polys: Vec<&LaurentPolynomial> = match &point.data {
                PointData::Generic { plus, minus } => alloc::vec![plus, minus],
                PointData::Dolbeault { bundle } => alloc::vec![bundle],
                PointData::DeRham => Vec::new(),
            };
            for p in polys {
                if p.rank() != rank {
                    return Err(Error::RankMismatch { left: rank, right: p.rank() });
                }
            }
        }
        Ok(FixedPointScenario { rank, kind, points })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn operator_kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn points(&self) -> &[FixedPointDatum] {
        &self.points
    }

    pub fn point(&self, name: &str) -> Option<&FixedPointDatum> {
        self.points.iter().find(|p| p.name == name)
    }

    fn expect_kind(&self, kind: OperatorKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::WrongOperatorKind {
                expected: kind.name(),
                found: self.kind.name(),
            });
        }
        Ok(())
    }

    /// The contribution of a single point, before summation. For generic
    /// points this is `(Tr⁺ - Tr⁻) / det_ℝ(1 - g^{-1}|T_mM)`, for Dolbeault
    /// points `Tr(g|F_m) / det_ℂ(1 - g^{-1}|T_mM)`, and for de Rham points
    /// the generic formula applied to the exterior algebra numerators.
    pub fn point_contribution(&self, point: &FixedPointDatum) -> CharacterFraction {
        match &point.data {
            PointData::Generic { plus, minus } => {
                let numerator = plus.sub(minus).expect("ranks validated");
                CharacterFraction::new(numerator, &real_determinant_exponents(&point.tangent_weights))
                    .expect("weights validated nonzero")
            }
            PointData::Dolbeault { bundle } => {
                CharacterFraction::new(bundle.clone(), &complex_determinant_exponents(&point.tangent_weights))
                    .expect("weights validated nonzero")
            }
            PointData::DeRham => {
                // Λ^even - Λ^odd of ⊕ (ℂ_α ⊕ ℂ_{-α}) is ∏ (1-t^α)(1-t^{-α}),
                // the same product as det_ℝ; the quotient is forced to 1 by
                // exact division, not assumed.
                let numerator = exterior_supertrace(self.rank, &point.tangent_weights);
                CharacterFraction::new(numerator, &real_determinant_exponents(&point.tangent_weights))
                    .expect("weights validated nonzero")
            }
        }
    }

    fn sum_contributions<F>(&self, twist: F) -> Result<CharacterFraction>
    where
        F: Fn(&FixedPointDatum, CharacterFraction) -> Result<CharacterFraction>,
    {
        let mut total = CharacterFraction::zero(self.rank);
        for point in &self.points {
            let contribution = twist(point, self.point_contribution(point))?;
            total = total.add(&contribution)?;
        }
        Ok(total.simplified())
    }

    /// The index sum for a generic scenario.
    pub fn generic_index(&self) -> Result<CharacterFraction> {
        self.expect_kind(OperatorKind::Generic)?;
        self.sum_contributions(|_, c| Ok(c))
    }

    /// The index sum for a Dolbeault scenario.
    pub fn dolbeault_index(&self) -> Result<CharacterFraction> {
        self.expect_kind(OperatorKind::Dolbeault)?;
        self.sum_contributions(|_, c| Ok(c))
    }

    /// The index sum for a de Rham scenario; simplifies to the point count.
    pub fn derham_index(&self) -> Result<CharacterFraction> {
        self.expect_kind(OperatorKind::DeRham)?;
        self.sum_contributions(|_, c| Ok(c))
    }

    /// Kind dispatch.
    pub fn index(&self) -> Result<CharacterFraction> {
        match self.kind {
            OperatorKind::Generic => self.generic_index(),
            OperatorKind::Dolbeault => self.dolbeault_index(),
            OperatorKind::DeRham => self.derham_index(),
        }
    }

    /// Per-point decomposition of a Dolbeault index: label, fibre character,
    /// and the linear-space index `∏ 1/(1 - t^{-α})`. The weighted sum of
    /// the pieces recombines to the scenario index.
    pub fn linearize(&self) -> Result<Vec<(String, LaurentPolynomial, CharacterFraction)>> {
        self.expect_kind(OperatorKind::Dolbeault)?;
        let mut out = Vec::with_capacity(self.points.len());
        for point in &self.points {
            let PointData::Dolbeault { bundle } = &point.data else {
                unreachable!("kind validated at construction");
            };
            let linear_index = CharacterFraction::new(
                LaurentPolynomial::one(self.rank),
                &complex_determinant_exponents(&point.tangent_weights),
            )?;
            out.push((point.name.clone(), bundle.clone(), linear_index));
        }
        Ok(out)
    }

    /// Index pairing with a K-theory class given by its fibre characters at
    /// the fixed points: each point's numerator is multiplied by its entry
    /// before summation.
    pub fn pair_with_classes(
        &self,
        fibre_characters: &BTreeMap<String, LaurentPolynomial>,
    ) -> Result<CharacterFraction> {
        for point in &self.points {
            if !fibre_characters.contains_key(point.name.as_str()) {
                return Err(Error::MissingPointEntry { point: point.name.clone() });
            }
        }
        self.sum_contributions(|point, contribution| {
            let f = &fibre_characters[point.name.as_str()];
            contribution.mul(&CharacterFraction::from_polynomial(f.clone()))
        })
    }

    /// Product scenario: cartesian point pairs with concatenated tangent
    /// weights. Dolbeault bundles tensor; generic numerators follow the
    /// ℤ₂-graded tensor rule `plus = p⁺q⁺ + p⁻q⁻`, `minus = p⁺q⁻ + p⁻q⁺`.
    pub fn product(&self, other: &FixedPointScenario) -> Result<FixedPointScenario> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        if self.kind != other.kind {
            return Err(Error::KindMismatch {
                left: self.kind.name(),
                right: other.kind.name(),
            });
        }
        let mut points = Vec::with_capacity(self.points.len() * other.points.len());
        for a in &self.points {
            for b in &other.points {
                let mut tangent = a.tangent_weights.clone();
                tangent.extend(b.tangent_weights.iter().cloned());
                let name = format!("{}x{}", a.name, b.name);
                let data = match (&a.data, &b.data) {
                    (
                        PointData::Generic { plus: pa, minus: ma },
                        PointData::Generic { plus: pb, minus: mb },
                    ) => PointData::Generic {
                        plus: pa.mul(pb)?.add(&ma.mul(mb)?)?,
                        minus: pa.mul(mb)?.add(&ma.mul(pb)?)?,
                    },
                    (
                        PointData::Dolbeault { bundle: ba },
                        PointData::Dolbeault { bundle: bb },
                    ) => PointData::Dolbeault { bundle: ba.mul(bb)? },
                    (PointData::DeRham, PointData::DeRham) => PointData::DeRham,
                    _ => unreachable!("kinds checked equal above"),
                };
                points.push(FixedPointDatum { name, tangent_weights: tangent, data });
            }
        }
        FixedPointScenario::new(self.rank, self.kind, points)
    }

    /// Relative index `index(self) - index(other)`. Labels in `shared` must
    /// name identical points in both scenarios; their contributions cancel,
    /// so the result equals the index difference of the scenarios with the
    /// shared points removed.
    pub fn relative_index(
        &self,
        other: &FixedPointScenario,
        shared: &[String],
    ) -> Result<CharacterFraction> {
        for label in shared {
            let (a, b) = match (self.point(label), other.point(label)) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(Error::SharedPointMismatch { point: label.clone() }),
            };
            if a != b {
                return Err(Error::SharedPointMismatch { point: label.clone() });
            }
        }
        self.index()?.sub(&other.index()?)
    }

    /// The scenario with the named points removed.
    pub fn removing_points(&self, labels: &[String]) -> FixedPointScenario {
        FixedPointScenario {
            rank: self.rank,
            kind: self.kind,
            points: self
                .points
                .iter()
                .filter(|p| !labels.contains(&p.name))
                .cloned()
                .collect(),
        }
    }

    /// Disjoint union of two scenarios of the same rank and kind.
    pub fn disjoint_union(&self, other: &FixedPointScenario) -> Result<FixedPointScenario> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        if self.kind != other.kind {
            return Err(Error::KindMismatch {
                left: self.kind.name(),
                right: other.kind.name(),
            });
        }
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        Ok(FixedPointScenario { rank: self.rank, kind: self.kind, points })
    }

    /// Replace `g` by `g^{-1}`: negate all tangent weights and invert the
    /// bundle and numerator characters. The index of the result is the
    /// original index with `t ↦ t^{-1}`.
    pub fn inverted(&self) -> FixedPointScenario {
        let points = self
            .points
            .iter()
            .map(|p| FixedPointDatum {
                name: p.name.clone(),
                tangent_weights: p.tangent_weights.iter().map(Weight::negated).collect(),
                data: match &p.data {
                    PointData::Generic { plus, minus } => PointData::Generic {
                        plus: plus.inverted_variables(),
                        minus: minus.inverted_variables(),
                    },
                    PointData::Dolbeault { bundle } => {
                        PointData::Dolbeault { bundle: bundle.inverted_variables() }
                    }
                    PointData::DeRham => PointData::DeRham,
                },
            })
            .collect();
        FixedPointScenario { rank: self.rank, kind: self.kind, points }
    }

    /// The two-point rotation scenario on the sphere with a degree-`n`
    /// twisting line bundle; its index is `Σ_{j=-n}^{n} t^j`.
    pub fn sphere(n: i64) -> FixedPointScenario {
        let bundle_north = LaurentPolynomial::monomial(1, Weight::new(alloc::vec![n]), BigInt::from(1));
        let bundle_south =
            LaurentPolynomial::monomial(1, Weight::new(alloc::vec![-n]), BigInt::from(1));
        FixedPointScenario::new(
            1,
            OperatorKind::Dolbeault,
            alloc::vec![
                FixedPointDatum::dolbeault("north", alloc::vec![Weight::new(alloc::vec![1])], bundle_north),
                FixedPointDatum::dolbeault("south", alloc::vec![Weight::new(alloc::vec![-1])], bundle_south),
            ],
        )
        .expect("valid by construction")
    }

    /// The rotation scenario on the complex plane (one fixed point, trivial
    /// bundle); its index is `1/(1 - t^{-1})`.
    pub fn plane() -> FixedPointScenario {
        FixedPointScenario::new(
            1,
            OperatorKind::Dolbeault,
            alloc::vec![FixedPointDatum::dolbeault(
                "origin",
                alloc::vec![Weight::new(alloc::vec![1])],
                LaurentPolynomial::one(1),
            )],
        )
        .expect("valid by construction")
    }

    /// The multiplicative unit: a single point with no tangent directions,
    /// `Tr⁺ = 1`, `Tr⁻ = 0`. Its index is 1 and products with it are
    /// unchanged.
    pub fn unit(rank: usize) -> FixedPointScenario {
        FixedPointScenario::new(
            rank,
            OperatorKind::Generic,
            alloc::vec![FixedPointDatum::generic(
                "unit",
                Vec::new(),
                LaurentPolynomial::one(rank),
                LaurentPolynomial::zero(rank),
            )],
        )
        .expect("valid by construction")
    }

    /// The Bott scenario on `ℂ^rank × ℂ^rank`: one fixed point at the origin
    /// whose tangent space carries the weights `{e_j, -e_j}` (the two copies
    /// acquire opposite complex structures), twisted by the ℤ₂-graded
    /// exterior algebra of that tangent space. The supertrace of the bundle
    /// equals the Dolbeault determinant, so the index is identically 1 —
    /// matching the one-dimensional invariant kernel of the associated
    /// harmonic oscillator.
    pub fn bott(rank: usize) -> FixedPointScenario {
        let mut tangent = Vec::with_capacity(2 * rank);
        for j in 0..rank {
            let mut e = alloc::vec![0i64; rank];
            e[j] = 1;
            tangent.push(Weight::new(e.clone()));
            e[j] = -1;
            tangent.push(Weight::new(e));
        }
        let bundle = exterior_supertrace(rank, &tangent);
        FixedPointScenario::new(
            rank,
            OperatorKind::Dolbeault,
            alloc::vec![FixedPointDatum::dolbeault("origin", tangent, bundle)],
        )
        .expect("valid by construction")
    }
}

/// Exponents of `det_ℝ(1 - g^{-1}|T_mM) = ∏ (1 - t^{-α})(1 - t^{α})`.
fn real_determinant_exponents(tangent: &[Weight]) -> Vec<Weight> {
    let mut out = Vec::with_capacity(2 * tangent.len());
    for w in tangent {
        out.push(w.negated());
        out.push(w.clone());
    }
    out
}

/// Exponents of `det_ℂ(1 - g^{-1}|T_mM) = ∏ (1 - t^{-α})`.
fn complex_determinant_exponents(tangent: &[Weight]) -> Vec<Weight> {
    tangent.iter().map(Weight::negated).collect()
}

/// Supertrace of the exterior algebra of `⊕ (ℂ_α ⊕ ℂ_{-α})`:
/// `∏ (1 - t^{α})(1 - t^{-α})` expanded as a Laurent polynomial.
fn exterior_supertrace(rank: usize, tangent: &[Weight]) -> LaurentPolynomial {
    let mut out = LaurentPolynomial::one(rank);
    for w in tangent {
        for exp in [w.clone(), w.negated()] {
            let factor = LaurentPolynomial::from_terms(
                rank,
                1,
                [
                    (Weight::zero(rank), BigInt::from(1)),
                    (exp, BigInt::from(-1)),
                ],
            );
            out = out.mul(&factor).expect("equal ranks");
        }
    }
    out
}

/// Truncated geometric-series expansion of a rank-1 fraction in the region
/// `|t| > 1`: every `1/(1 - t)` factor expands as `-Σ_{k≥1} t^{-k}`, so a
/// fraction entered as `1/(1 - t^{-1})` expands as `Σ_{k≥0} t^{-k}`. The
/// result is clipped to the exponent window `[-depth, depth]`.
pub fn geometric_expansion(x: &CharacterFraction, depth: u32) -> Result<LaurentPolynomial> {
    if x.rank() != 1 {
        return Err(Error::InvalidData {
            detail: "geometric expansion is defined on rank-1 fractions".to_string(),
        });
    }
    let lattice = x.lattice_denominator();
    let step = Weight::new(alloc::vec![lattice]);
    for factor in x.denominator_factors() {
        if factor.weight() != &step {
            return Err(Error::UnsupportedDenominator);
        }
    }
    let poles = x.denominator_factors().len();
    let window = depth as i64 * lattice;

    // Coefficients keyed by stored exponent, truncated below at -window.
    let mut series: BTreeMap<i64, BigInt> = x
        .numerator()
        .terms()
        .filter(|(w, _)| w.entries()[0] >= -window)
        .map(|(w, c)| (w.entries()[0], c.clone()))
        .collect();

    for _ in 0..poles {
        // Multiply by -Σ_{k≥1} t^{-k}: group by residue class mod the
        // lattice step and take negated running suffix sums.
        let mut next: BTreeMap<i64, BigInt> = BTreeMap::new();
        let mut classes: BTreeMap<i64, Vec<(i64, BigInt)>> = BTreeMap::new();
        for (e, c) in series {
            classes.entry(e.rem_euclid(lattice)).or_default().push((e, c));
        }
        for line in classes.into_values() {
            let top = line.last().expect("nonempty class").0;
            let by_exp: BTreeMap<i64, BigInt> = line.into_iter().collect();
            let mut running = BigInt::zero();
            let mut e = top;
            while e - lattice >= -window {
                running += by_exp.get(&e).cloned().unwrap_or_else(BigInt::zero);
                if !running.is_zero() {
                    next.insert(e - lattice, -running.clone());
                }
                e -= lattice;
            }
        }
        series = next;
    }

    Ok(LaurentPolynomial::from_terms(
        1,
        lattice,
        series
            .into_iter()
            .filter(|&(e, _)| e >= -window && e <= window)
            .map(|(e, c)| (Weight::new(alloc::vec![e]), c)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::test_support::poly1;
    use alloc::vec;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(entries: &[i64]) -> Weight {
        Weight::new(entries.to_vec())
    }

    fn constant(rank: usize, value: i64) -> CharacterFraction {
        CharacterFraction::from_polynomial(LaurentPolynomial::constant(rank, BigInt::from(value)))
    }

    #[test]
    fn generic_derham_shaped_point_contributes_one() {
        // plus = 2, minus = t + t^-1 over det_ℝ of weight 1.
        let scenario = FixedPointScenario::new(
            1,
            OperatorKind::Generic,
            vec![FixedPointDatum::generic(
                "p",
                vec![w(&[1])],
                poly1(&[(0, 2)]),
                poly1(&[(1, 1), (-1, 1)]),
            )],
        )
        .unwrap();
        assert!(scenario.generic_index().unwrap().value_eq(&constant(1, 1)).unwrap());

        // Two copies double it, matching the sum of the contributions.
        let doubled = scenario.disjoint_union(&{
            let mut other = scenario.clone();
            other.points[0].name = "q".to_string();
            other
        })
        .unwrap();
        let direct = doubled.generic_index().unwrap();
        assert!(direct.value_eq(&constant(1, 2)).unwrap());
        let via_add = scenario
            .generic_index()
            .unwrap()
            .add(&scenario.generic_index().unwrap())
            .unwrap();
        assert!(direct.value_eq(&via_add).unwrap());
    }

    #[test]
    fn empty_scenario_has_zero_index() {
        let empty = FixedPointScenario::new(2, OperatorKind::Generic, vec![]).unwrap();
        assert!(empty.index().unwrap().is_zero());
    }

    #[test]
    fn plane_index_is_single_pole() {
        let plane = FixedPointScenario::plane();
        let expected = CharacterFraction::new(LaurentPolynomial::one(1), &[w(&[-1])]).unwrap();
        assert!(plane.dolbeault_index().unwrap().value_eq(&expected).unwrap());
    }

    #[test]
    fn sphere_collapses_to_finite_character() {
        for n in 0..=5 {
            let index = FixedPointScenario::sphere(n).index().unwrap();
            let expected: Vec<(i64, i64)> = (-n..=n).map(|j| (j, 1)).collect();
            assert_eq!(index.as_polynomial().unwrap(), &poly1(&expected));
            // dimension at t = 1
            assert_eq!(
                index.as_polynomial().unwrap().coefficient_sum(),
                BigInt::from(2 * n + 1)
            );
        }
    }

    #[test]
    fn rank_two_point_is_product_of_planes() {
        let scenario = FixedPointScenario::new(
            2,
            OperatorKind::Dolbeault,
            vec![FixedPointDatum::dolbeault(
                "origin",
                vec![w(&[1, 0]), w(&[0, 1])],
                LaurentPolynomial::one(2),
            )],
        )
        .unwrap();
        let expected =
            CharacterFraction::new(LaurentPolynomial::one(2), &[w(&[-1, 0]), w(&[0, -1])])
                .unwrap();
        assert!(scenario.index().unwrap().value_eq(&expected).unwrap());
    }

    #[test]
    fn derham_counts_points() {
        let one = FixedPointScenario::new(
            2,
            OperatorKind::DeRham,
            vec![FixedPointDatum::derham("p", vec![w(&[1, 2]), w(&[-3, 1])])],
        )
        .unwrap();
        assert!(one.derham_index().unwrap().value_eq(&constant(2, 1)).unwrap());

        let zero = FixedPointScenario::new(2, OperatorKind::DeRham, vec![]).unwrap();
        assert!(zero.index().unwrap().is_zero());

        // Five random points must reach the constant 5 symbolically.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let points: Vec<FixedPointDatum> = (0..5)
            .map(|i| {
                let weights: Vec<Weight> = (0..rng.gen_range(1..=3))
                    .map(|_| {
                        let mut entries = vec![0i64; 2];
                        while entries.iter().all(|&e| e == 0) {
                            for e in entries.iter_mut() {
                                *e = rng.gen_range(-5..=5);
                            }
                        }
                        Weight::new(entries)
                    })
                    .collect();
                FixedPointDatum::derham(format!("p{i}"), weights)
            })
            .collect();
        let five = FixedPointScenario::new(2, OperatorKind::DeRham, points).unwrap();
        let index = five.derham_index().unwrap();
        assert_eq!(
            index.as_polynomial().unwrap(),
            &LaurentPolynomial::constant(2, BigInt::from(5))
        );
    }

    #[test]
    fn linearize_decomposes_sphere() {
        let sphere = FixedPointScenario::sphere(1);
        let parts = sphere.linearize().unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, "north");
        assert_eq!(parts[0].1, poly1(&[(1, 1)]));
        let north_linear = CharacterFraction::new(LaurentPolynomial::one(1), &[w(&[-1])]).unwrap();
        assert!(parts[0].2.value_eq(&north_linear).unwrap());
        assert_eq!(parts[1].0, "south");
        assert_eq!(parts[1].1, poly1(&[(-1, 1)]));

        // Recombination: Σ Tr(g|F)·linear index = scenario index.
        let mut total = CharacterFraction::zero(1);
        for (_, bundle, linear) in &parts {
            total = total
                .add(&linear.mul(&CharacterFraction::from_polynomial(bundle.clone())).unwrap())
                .unwrap();
        }
        assert!(total.value_eq(&sphere.index().unwrap()).unwrap());
    }

    #[test]
    fn linearize_recombines_for_random_scenarios() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let scenario = random_dolbeault(&mut rng, 2, 3);
            let mut total = CharacterFraction::zero(scenario.rank());
            for (_, bundle, linear) in scenario.linearize().unwrap() {
                total = total
                    .add(&linear.mul(&CharacterFraction::from_polynomial(bundle)).unwrap())
                    .unwrap();
            }
            assert!(total.value_eq(&scenario.index().unwrap()).unwrap());
        }
    }

    #[test]
    fn pairing_twists_numerators() {
        let sphere0 = FixedPointScenario::sphere(0);
        let mut classes = BTreeMap::new();
        classes.insert("north".to_string(), poly1(&[(1, 1)]));
        classes.insert("south".to_string(), poly1(&[(-1, 1)]));
        let paired = sphere0.pair_with_classes(&classes).unwrap();
        assert_eq!(
            paired.as_polynomial().unwrap(),
            &poly1(&[(1, 1), (0, 1), (-1, 1)])
        );

        // Unit class leaves the index unchanged; zero class kills it.
        let mut unit = BTreeMap::new();
        unit.insert("north".to_string(), LaurentPolynomial::one(1));
        unit.insert("south".to_string(), LaurentPolynomial::one(1));
        assert!(sphere0
            .pair_with_classes(&unit)
            .unwrap()
            .value_eq(&sphere0.index().unwrap())
            .unwrap());

        let mut zero = BTreeMap::new();
        zero.insert("north".to_string(), LaurentPolynomial::zero(1));
        zero.insert("south".to_string(), LaurentPolynomial::zero(1));
        assert!(sphere0.pair_with_classes(&zero).unwrap().is_zero());

        // Missing label is an error.
        let mut partial = BTreeMap::new();
        partial.insert("north".to_string(), LaurentPolynomial::one(1));
        assert!(matches!(
            sphere0.pair_with_classes(&partial),
            Err(Error::MissingPointEntry { .. })
        ));
    }

    #[test]
    fn product_of_planes_squares_the_pole() {
        let plane = FixedPointScenario::plane();
        let product = plane.product(&plane).unwrap();
        let expected =
            CharacterFraction::new(LaurentPolynomial::one(1), &[w(&[-1]), w(&[-1])]).unwrap();
        assert!(product.index().unwrap().value_eq(&expected).unwrap());
    }

    #[test]
    fn unit_scenario_is_multiplicative_identity() {
        let unit = FixedPointScenario::unit(1);
        assert!(unit.index().unwrap().value_eq(&constant(1, 1)).unwrap());

        let generic = FixedPointScenario::new(
            1,
            OperatorKind::Generic,
            vec![FixedPointDatum::generic(
                "p",
                vec![w(&[2])],
                poly1(&[(1, 1)]),
                poly1(&[(0, 1)]),
            )],
        )
        .unwrap();
        let product = generic.product(&unit).unwrap();
        assert!(product
            .index()
            .unwrap()
            .value_eq(&generic.index().unwrap())
            .unwrap());
    }

    #[test]
    fn sphere_products_multiply_characters() {
        for (n, m) in [(1i64, 2i64), (0, 3), (2, 2)] {
            let a = FixedPointScenario::sphere(n);
            let b = FixedPointScenario::sphere(m);
            let product_index = a.product(&b).unwrap().index().unwrap();
            let expected = a
                .index()
                .unwrap()
                .as_polynomial()
                .unwrap()
                .mul(b.index().unwrap().as_polynomial().unwrap())
                .unwrap();
            assert_eq!(product_index.as_polynomial().unwrap(), &expected);
        }
    }

    #[test]
    fn kind_and_rank_mismatches_are_rejected() {
        let sphere = FixedPointScenario::sphere(1);
        let unit = FixedPointScenario::unit(1);
        assert!(matches!(sphere.product(&unit), Err(Error::KindMismatch { .. })));
        let plane2 = FixedPointScenario::new(
            2,
            OperatorKind::Dolbeault,
            vec![FixedPointDatum::dolbeault(
                "o",
                vec![w(&[1, 0])],
                LaurentPolynomial::one(2),
            )],
        )
        .unwrap();
        assert!(matches!(sphere.product(&plane2), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn relative_index_examples() {
        let sphere1 = FixedPointScenario::sphere(1);
        assert!(sphere1.relative_index(&sphere1, &[]).unwrap().is_zero());

        let sphere0 = FixedPointScenario::sphere(0);
        let diff = sphere1.relative_index(&sphere0, &[]).unwrap();
        assert_eq!(diff.as_polynomial().unwrap(), &poly1(&[(1, 1), (-1, 1)]));
    }

    #[test]
    fn relative_index_cancels_shared_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let shared_core = random_dolbeault(&mut rng, 2, 2);
            let a_extra = relabeled(random_dolbeault(&mut rng, 2, 2), "a");
            let b_extra = relabeled(random_dolbeault(&mut rng, 2, 2), "b");
            let a = shared_core.disjoint_union(&a_extra).unwrap();
            let b = shared_core.disjoint_union(&b_extra).unwrap();
            let shared: Vec<String> =
                shared_core.points().iter().map(|p| p.name.clone()).collect();
            let relative = a.relative_index(&b, &shared).unwrap();
            let pruned = a
                .removing_points(&shared)
                .index()
                .unwrap()
                .sub(&b.removing_points(&shared).index().unwrap())
                .unwrap();
            assert!(relative.value_eq(&pruned).unwrap());
        }
    }

    #[test]
    fn relative_index_rejects_mismatched_shared_data() {
        let a = FixedPointScenario::sphere(1);
        let b = FixedPointScenario::sphere(2);
        let err = a.relative_index(&b, &["north".to_string()]).unwrap_err();
        assert!(matches!(err, Error::SharedPointMismatch { .. }));
    }

    #[test]
    fn index_dispatch_matches_kinds() {
        let derham3 = FixedPointScenario::new(
            1,
            OperatorKind::DeRham,
            (0..3)
                .map(|i| FixedPointDatum::derham(format!("p{i}"), vec![w(&[i + 1])]))
                .collect(),
        )
        .unwrap();
        assert!(derham3.index().unwrap().value_eq(&constant(1, 3)).unwrap());
        assert!(matches!(
            derham3.dolbeault_index(),
            Err(Error::WrongOperatorKind { .. })
        ));
    }

    #[test]
    fn multiplicativity_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for round in 0..15 {
            let (a, b) = if round % 2 == 0 {
                (random_dolbeault(&mut rng, 2, 2), random_dolbeault(&mut rng, 2, 2))
            } else {
                (random_generic(&mut rng, 2, 2), random_generic(&mut rng, 2, 2))
            };
            let lhs = a.product(&b).unwrap().index().unwrap();
            let rhs = a.index().unwrap().mul(&b.index().unwrap()).unwrap();
            assert!(lhs.value_eq(&rhs).unwrap());
        }
    }

    #[test]
    fn additivity_over_disjoint_unions() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..10 {
            let a = relabeled(random_dolbeault(&mut rng, 2, 3), "a");
            let b = relabeled(random_dolbeault(&mut rng, 2, 3), "b");
            let union_index = a.disjoint_union(&b).unwrap().index().unwrap();
            let sum = a.index().unwrap().add(&b.index().unwrap()).unwrap();
            assert!(union_index.value_eq(&sum).unwrap());
        }
    }

    #[test]
    fn inversion_substitutes_reciprocal_variable() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..10 {
            let s = random_dolbeault(&mut rng, 2, 3);
            let inverted_index = s.inverted().index().unwrap();
            let substituted = s.index().unwrap().inverted_variables();
            assert!(inverted_index.value_eq(&substituted).unwrap());
        }
    }

    #[test]
    fn singular_evaluation_is_guarded() {
        let sphere = FixedPointScenario::plane();
        let index = sphere.index().unwrap();
        let singular = crate::TorusElement::rational(vec![(0, 1)]).unwrap();
        assert!(matches!(
            index.eval(&singular),
            Err(Error::SingularElement { .. })
        ));
    }

    #[test]
    fn expansion_examples() {
        // 1/(1 - t^-1) expands to Σ t^{-k}.
        let theta = CharacterFraction::new(LaurentPolynomial::one(1), &[w(&[-1])]).unwrap();
        let expanded = geometric_expansion(&theta, 3).unwrap();
        assert_eq!(expanded, poly1(&[(0, 1), (-1, 1), (-2, 1), (-3, 1)]));

        // Polynomials are window-clipped.
        let p = CharacterFraction::from_polynomial(poly1(&[(5, 2), (1, 1), (-4, 3)]));
        assert_eq!(geometric_expansion(&p, 2).unwrap(), poly1(&[(1, 1)]));

        // The sphere index is already polynomial.
        let sphere = FixedPointScenario::sphere(1).index().unwrap();
        assert_eq!(
            geometric_expansion(&sphere, 4).unwrap(),
            poly1(&[(1, 1), (0, 1), (-1, 1)])
        );

        // Quadratic pole: 1/(1-t^-1)^2 = Σ_{k≥0} (k+1) t^{-k}.
        let sq = theta.mul(&theta).unwrap();
        assert_eq!(
            geometric_expansion(&sq, 3).unwrap(),
            poly1(&[(0, 1), (-1, 2), (-2, 3), (-3, 4)])
        );

        // Unsupported denominators are rejected.
        let wide = CharacterFraction::new(LaurentPolynomial::one(1), &[w(&[2])]).unwrap();
        assert!(matches!(
            geometric_expansion(&wide, 3),
            Err(Error::UnsupportedDenominator)
        ));
    }

    #[test]
    fn expansion_sums_to_the_fraction_inside_its_region() {
        // The expansion is the Laurent series of the fraction in |t| > 1, so
        // the damped sum Σ c_k r^{-k} e^{ikθ} (t = e^{iθ}/r, r < 1) must
        // approach 1/(1 - r e^{-iθ}).
        use num_traits::ToPrimitive;
        let theta = CharacterFraction::new(LaurentPolynomial::one(1), &[w(&[-1])]).unwrap();
        let expansion = geometric_expansion(&theta, 40).unwrap();
        let r: f64 = 0.9;
        let angle: f64 = 1.3;
        let mut damped = Complex64::new(0.0, 0.0);
        for (weight, coeff) in expansion.terms() {
            let k = -weight.entries()[0];
            assert!(k >= 0);
            damped += Complex64::from_polar(r.powi(k as i32), -(k as f64) * angle)
                * coeff.to_f64().unwrap();
        }
        let reference = Complex64::new(1.0, 0.0)
            / (Complex64::new(1.0, 0.0) - Complex64::from_polar(r, -angle));
        assert!((damped - reference).norm() < r.powi(41) / (1.0 - r) + 1e-9);
    }

    fn relabeled(s: FixedPointScenario, prefix: &str) -> FixedPointScenario {
        let points = s
            .points
            .iter()
            .map(|p| {
                let mut q = p.clone();
                q.name = format!("{prefix}-{}", p.name);
                q
            })
            .collect();
        FixedPointScenario { rank: s.rank, kind: s.kind, points }
    }

    fn random_weight(rng: &mut ChaCha8Rng, rank: usize) -> Weight {
        loop {
            let entries: Vec<i64> = (0..rank).map(|_| rng.gen_range(-3..=3)).collect();
            if entries.iter().any(|&e| e != 0) {
                return Weight::new(entries);
            }
        }
    }

    fn random_poly(rng: &mut ChaCha8Rng, rank: usize) -> LaurentPolynomial {
        let terms: Vec<(Weight, BigInt)> = (0..rng.gen_range(1..=2))
            .map(|_| {
                let entries: Vec<i64> = (0..rank).map(|_| rng.gen_range(-2..=2)).collect();
                (Weight::new(entries), BigInt::from(rng.gen_range(-3..=3i64)))
            })
            .collect();
        LaurentPolynomial::from_terms(rank, 1, terms)
    }

    fn random_dolbeault(
        rng: &mut ChaCha8Rng,
        rank: usize,
        max_points: usize,
    ) -> FixedPointScenario {
        let points = (0..rng.gen_range(1..=max_points))
            .map(|i| {
                let weights: Vec<Weight> = (0..rng.gen_range(1..=2))
                    .map(|_| random_weight(rng, rank))
                    .collect();
                FixedPointDatum::dolbeault(format!("p{i}"), weights, random_poly(rng, rank))
            })
            .collect();
        FixedPointScenario::new(rank, OperatorKind::Dolbeault, points).unwrap()
    }

    fn random_generic(
        rng: &mut ChaCha8Rng,
        rank: usize,
        max_points: usize,
    ) -> FixedPointScenario {
        let points = (0..rng.gen_range(1..=max_points))
            .map(|i| {
                let weights: Vec<Weight> = (0..rng.gen_range(1..=2))
                    .map(|_| random_weight(rng, rank))
                    .collect();
                FixedPointDatum::generic(
                    format!("p{i}"),
                    weights,
                    random_poly(rng, rank),
                    random_poly(rng, rank),
                )
            })
            .collect();
        FixedPointScenario::new(rank, OperatorKind::Generic, points).unwrap()
    }
}
