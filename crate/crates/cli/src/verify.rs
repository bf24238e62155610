//! The cross-module identity suite behind `gindex verify`.
//!
//! Each check exercises one identity the engine must satisfy, on fixed or
//! seeded-random inputs, and reports either a short summary or a
//! counterexample with the offending input serialized. The acceptance test
//! suite drives the same functions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use gindex_core::distribution::{
    pairing_report, remainder_decay, TestFunction, DEFAULT_GRID,
};
use gindex_core::{
    CharacterFraction, Error as CoreError, FixedPointDatum, FixedPointScenario,
    HighestWeightParam, LaurentPolynomial, OperatorKind, RootSystemData, TorusElement, Weight,
};

use crate::json as fmt;

/// A failed identity: which check, what went wrong, and the input that
/// witnessed it.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub detail: String,
    pub payload: serde_json::Value,
}

impl Counterexample {
    fn plain(detail: impl Into<String>) -> Self {
        Counterexample { detail: detail.into(), payload: serde_json::Value::Null }
    }

    fn with_scenario(detail: impl Into<String>, scenario: &FixedPointScenario) -> Self {
        Counterexample {
            detail: detail.into(),
            payload: serde_json::to_value(fmt::scenario_to_json(scenario))
                .unwrap_or(serde_json::Value::Null),
        }
    }
}

pub type CheckResult = Result<String, Counterexample>;

/// Names of all checks, in run order. The final entry only runs with
/// `--extended`.
pub const CHECK_NAMES: &[&str] = &[
    "sphere-borel-weil",
    "derham-euler",
    "multiplicativity",
    "linearisation",
    "weyl-consistency",
    "discrete-series-a1",
    "su2-numeric",
    "distribution-pairing",
    "index-pairing",
    "relative-cancellation",
    "regularity-guard",
    "bott-element",
];

pub fn run_check(name: &str, seed: u64) -> Option<CheckResult> {
    match name {
        "sphere-borel-weil" => Some(check_sphere_borel_weil()),
        "derham-euler" => Some(check_derham_euler(seed, 100)),
        "multiplicativity" => Some(check_multiplicativity(seed, 50)),
        "linearisation" => Some(check_linearisation(seed, 20)),
        "weyl-consistency" => Some(check_weyl_consistency(seed, 10)),
        "discrete-series-a1" => Some(check_discrete_series_a1(seed, 200)),
        "su2-numeric" => Some(check_su2_numeric(seed, 100)),
        "distribution-pairing" => Some(check_distribution_pairing()),
        "index-pairing" => Some(check_index_pairing()),
        "relative-cancellation" => Some(check_relative_cancellation(seed, 20)),
        "regularity-guard" => Some(check_regularity_guard(seed, 100)),
        "bott-element" => Some(check_bott_element()),
        _ => None,
    }
}

/// Criterion: the two-point sphere scenario collapses to `Σ_{j=-n}^{n} t^j`
/// with value `2n+1` at the identity, for n = 0..10.
pub fn check_sphere_borel_weil() -> CheckResult {
    for n in 0..=10i64 {
        let scenario = FixedPointScenario::sphere(n);
        let index = scenario.index().map_err(|e| Counterexample::plain(e.to_string()))?;
        let expected = LaurentPolynomial::from_terms(
            1,
            1,
            (-n..=n).map(|j| (Weight::new(vec![j]), BigInt::from(1))),
        );
        match index.as_polynomial() {
            Some(poly) if poly == &expected => {}
            _ => {
                return Err(Counterexample::with_scenario(
                    format!("sphere({n}) index is {index}, not the finite character"),
                    &scenario,
                ));
            }
        }
        let dimension = index.as_polynomial().expect("checked").coefficient_sum();
        if dimension != BigInt::from(2 * n + 1) {
            return Err(Counterexample::with_scenario(
                format!("sphere({n}) dimension {dimension} != {}", 2 * n + 1),
                &scenario,
            ));
        }
    }
    Ok("n = 0..10 collapse to Σ t^j with dimension 2n+1".to_string())
}

/// Criterion: random de Rham scenarios simplify exactly to their point
/// count.
pub fn check_derham_euler(seed: u64, rounds: usize) -> CheckResult {
    check_derham_euler_with(seed, rounds, &|s| s.index())
}

/// Same identity with a pluggable indexer, so tests can inject broken
/// formulas and watch the check catch them.
pub fn check_derham_euler_with(
    seed: u64,
    rounds: usize,
    indexer: &dyn Fn(&FixedPointScenario) -> Result<CharacterFraction, CoreError>,
) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xde54a);
    for _ in 0..rounds {
        let rank = rng.gen_range(1..=3);
        let points = (0..rng.gen_range(0..=6))
            .map(|i| {
                let weights = (0..rng.gen_range(1..=3))
                    .map(|_| random_weight(&mut rng, rank, 5))
                    .collect();
                FixedPointDatum::derham(format!("p{i}"), weights)
            })
            .collect::<Vec<_>>();
        let count = points.len();
        let scenario = FixedPointScenario::new(rank, OperatorKind::DeRham, points)
            .expect("generated scenarios are valid");
        let index = indexer(&scenario).map_err(|e| Counterexample::plain(e.to_string()))?;
        let expected = LaurentPolynomial::constant(rank, BigInt::from(count as i64));
        if index.as_polynomial() != Some(&expected) {
            return Err(Counterexample::with_scenario(
                format!("de Rham index {index} != point count {count}"),
                &scenario,
            ));
        }
    }
    Ok(format!("{rounds} random scenarios equal their point count"))
}

/// Criterion: `index(a × b) = index(a) · index(b)` exactly.
pub fn check_multiplicativity(seed: u64, rounds: usize) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3a17);
    for round in 0..rounds {
        let rank = rng.gen_range(1..=2);
        let (a, b) = if round % 2 == 0 {
            (
                random_dolbeault(&mut rng, rank, 2, 2, 3),
                random_dolbeault(&mut rng, rank, 2, 2, 3),
            )
        } else {
            (
                random_generic(&mut rng, rank, 2, 2, 3),
                random_generic(&mut rng, rank, 2, 2, 3),
            )
        };
        let err = |e: CoreError| Counterexample::plain(e.to_string());
        let product_index = a.product(&b).map_err(err)?.index().map_err(err)?;
        let index_product = a
            .index()
            .map_err(err)?
            .mul(&b.index().map_err(err)?)
            .map_err(err)?;
        if !product_index.value_eq(&index_product).map_err(err)? {
            let pair = a.disjoint_union(&relabel(&b, "rhs-")).expect("same kind");
            return Err(Counterexample::with_scenario(
                format!("index(a×b) = {product_index} but index(a)·index(b) = {index_product}"),
                &pair,
            ));
        }
    }
    Ok(format!("{rounds} random pairs multiply"))
}

/// Criterion: `Σ_m Tr(g|F_m)·∏ 1/(1-t^{-α})` recombines to the index.
pub fn check_linearisation(seed: u64, rounds: usize) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x71e4);
    for _ in 0..rounds {
        let rank = rng.gen_range(1..=2);
        let scenario = random_dolbeault(&mut rng, rank, 3, 2, 4);
        let err = |e: CoreError| Counterexample::plain(e.to_string());
        let index = scenario.index().map_err(err)?;
        let mut recombined = CharacterFraction::zero(rank);
        for (_, bundle, linear) in scenario.linearize().map_err(err)? {
            recombined = recombined
                .add(&linear.mul(&CharacterFraction::from_polynomial(bundle)).map_err(err)?)
                .map_err(err)?;
        }
        if !recombined.value_eq(&index).map_err(err)? {
            return Err(Counterexample::with_scenario(
                format!("linearisation recombines to {recombined}, index is {index}"),
                &scenario,
            ));
        }
    }
    Ok(format!("{rounds} random Dolbeault scenarios recombine"))
}

/// Criterion: for the presets, full Weyl sums are Weyl-invariant nonnegative
/// polynomials, and the flag scenario reproduces the compact sum.
pub fn check_weyl_consistency(seed: u64, lambdas_per_preset: usize) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xe71);
    for name in ["A1", "A1xA1", "A2", "B2"] {
        let rs = RootSystemData::preset(name).expect("built-in preset");
        let group = rs.weyl_group(false).map_err(|e| Counterexample::plain(e.to_string()))?;
        for _ in 0..lambdas_per_preset {
            let lambda = random_dominant_lambda(&mut rng, &rs);
            let err = |e: CoreError| Counterexample::plain(format!("{name}: {e}"));
            let full = rs.character_weyl_sum(&lambda, false).map_err(err)?;
            let Some(poly) = full.as_polynomial() else {
                return Err(Counterexample::plain(format!(
                    "{name}: full Weyl sum {full} did not simplify to a polynomial (λ = {:?})",
                    lambda.lambda()
                )));
            };
            if poly.terms().any(|(_, c)| c <= &BigInt::from(0)) {
                return Err(Counterexample::plain(format!(
                    "{name}: character has nonpositive coefficients: {poly}"
                )));
            }
            for w in &group {
                if &poly.map_exponents(|u| w.apply(u)) != poly {
                    return Err(Counterexample::plain(format!(
                        "{name}: character not Weyl invariant: {poly}"
                    )));
                }
            }
            let flag = rs.flag_scenario(&lambda).map_err(err)?;
            let via_flag = flag.index().map_err(err)?;
            let via_sum = rs.character_weyl_sum(&lambda, true).map_err(err)?;
            if !via_flag.value_eq(&via_sum).map_err(err)? {
                return Err(Counterexample::with_scenario(
                    format!("{name}: flag index {via_flag} != compact Weyl sum {via_sum}"),
                    &flag,
                ));
            }
        }
    }
    Ok(format!(
        "A1, A1xA1, A2, B2 with {lambdas_per_preset} random dominant λ each"
    ))
}

/// Criterion: the trivial-compact-part A1 character matches the closed form
/// `-e^{inθ}/(e^{iθ} - e^{-iθ})` (discrete-series normalization, dim G/K = 2)
/// at random rational regular elements, within 1e-10 relative.
pub fn check_discrete_series_a1(seed: u64, samples: usize) -> CheckResult {
    let sl2 = RootSystemData::a1().with_trivial_compact_part();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xd5);
    let mut checked = 0;
    while checked < samples {
        let n: i64 = rng.gen_range(1..=10);
        let q: i64 = rng.gen_range(3..=60);
        let p: i64 = rng.gen_range(1..q);
        if (2 * p) % q == 0 {
            continue; // singular for the root: sin θ = 0
        }
        let lambda = HighestWeightParam::new(&sl2, Weight::new(vec![n]))
            .expect("nonzero λ is regular for A1");
        let g = TorusElement::rational(vec![(p, q)]).expect("q > 0");
        let value = sl2
            .discrete_series_value(&lambda, 2, &g)
            .map_err(|e| Counterexample::plain(format!("n={n}, θ=2π·{p}/{q}: {e}")))?;
        let theta = 2.0 * std::f64::consts::PI * p as f64 / q as f64;
        // -e^{inθ} / (e^{iθ} - e^{-iθ}) = -e^{inθ} / (2i sin θ)
        let closed = -Complex64::new((n as f64 * theta).cos(), (n as f64 * theta).sin())
            / Complex64::new(0.0, 2.0 * theta.sin());
        if (value - closed).norm() > 1e-10 * (1.0 + closed.norm()) {
            return Err(Counterexample::plain(format!(
                "n={n}, θ=2π·{p}/{q}: engine {value}, closed form {closed}"
            )));
        }
        checked += 1;
    }
    Ok(format!("{samples} random rational regular elements match"))
}

/// Criterion: full A1 characters match `sin((n+1)θ)/sin θ` numerically.
pub fn check_su2_numeric(seed: u64, samples: usize) -> CheckResult {
    let a1 = RootSystemData::a1();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x50);
    for _ in 0..samples {
        let n: i64 = rng.gen_range(0..=20);
        let theta: f64 = rng.gen_range(0.02..3.12);
        let lambda = HighestWeightParam::new(&a1, Weight::new(vec![n + 1]))
            .expect("positive λ is regular");
        let value = a1
            .numeric_character(&lambda, false, &TorusElement::numeric(vec![theta]))
            .map_err(|e| Counterexample::plain(e.to_string()))?;
        let expected = ((n + 1) as f64 * theta).sin() / theta.sin();
        if (value - Complex64::new(expected, 0.0)).norm() > 1e-10 * (1.0 + expected.abs()) {
            return Err(Counterexample::plain(format!(
                "n={n}, θ={theta}: engine {value}, sin ratio {expected}"
            )));
        }
    }
    Ok(format!("{samples} random angles, n ≤ 20"))
}

/// Criterion: partial sums and Abel extrapolation agree within 1e-6 for the
/// four reference test functions; trig remainders vanish past the band.
pub fn check_distribution_pairing() -> CheckResult {
    let mut functions: Vec<(String, TestFunction, Option<i64>)> = vec![
        ("1".to_string(), TestFunction::one(), Some(0)),
        ("e^{i3θ}".to_string(), TestFunction::exponential(3), Some(3)),
        ("e^{-i2θ}".to_string(), TestFunction::exponential(-2), Some(0)),
    ];
    let sampled = TestFunction::from_fn(DEFAULT_GRID, |theta| theta.cos().exp())
        .expect("4096 is a valid grid");
    functions.push(("exp(cos θ)".to_string(), sampled, None));

    for (label, phi, degree) in &functions {
        let report = pairing_report(phi, 64, DEFAULT_GRID)
            .map_err(|e| Counterexample::plain(format!("{label}: {e}")))?;
        if report.discrepancy >= 1e-6 {
            return Err(Counterexample::plain(format!(
                "{label}: partial {} vs abel {} (discrepancy {:.3e})",
                report.partial_sum_value, report.abel_value, report.discrepancy
            )));
        }
        if let Some(d) = degree {
            let ns: Vec<i64> = (*d..*d + 5).collect();
            let remainders = remainder_decay(phi, &ns)
                .map_err(|e| Counterexample::plain(format!("{label}: {e}")))?;
            if remainders.iter().any(|&r| r != 0.0) {
                return Err(Counterexample::plain(format!(
                    "{label}: remainders past the band limit are {remainders:?}, not exactly 0"
                )));
            }
        }
    }
    Ok("1, e^{i3θ}, e^{-i2θ}, exp(cos θ) all agree within 1e-6".to_string())
}

/// Criterion: pairing the n = 0 sphere with `{t^n, t^{-n}}` reproduces the
/// degree-n character.
pub fn check_index_pairing() -> CheckResult {
    let sphere0 = FixedPointScenario::sphere(0);
    for n in 0..=10i64 {
        let mut classes = BTreeMap::new();
        classes.insert(
            "north".to_string(),
            LaurentPolynomial::monomial(1, Weight::new(vec![n]), BigInt::from(1)),
        );
        classes.insert(
            "south".to_string(),
            LaurentPolynomial::monomial(1, Weight::new(vec![-n]), BigInt::from(1)),
        );
        let paired = sphere0
            .pair_with_classes(&classes)
            .map_err(|e| Counterexample::plain(e.to_string()))?;
        let expected = FixedPointScenario::sphere(n)
            .index()
            .map_err(|e| Counterexample::plain(e.to_string()))?;
        let equal = paired
            .value_eq(&expected)
            .map_err(|e| Counterexample::plain(e.to_string()))?;
        if !(equal && paired.as_polynomial().is_some()) {
            return Err(Counterexample::plain(format!(
                "pairing with t^±{n} gave {paired}, expected {expected}"
            )));
        }
    }
    Ok("n = 0..10 reproduce the sphere characters".to_string())
}

/// Criterion: relative indices cancel shared points.
pub fn check_relative_cancellation(seed: u64, rounds: usize) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4e1);
    for _ in 0..rounds {
        let rank = rng.gen_range(1..=2);
        let shared_core = random_dolbeault(&mut rng, rank, 2, 2, 3);
        let a = shared_core
            .disjoint_union(&relabel(&random_dolbeault(&mut rng, rank, 2, 2, 3), "a-"))
            .expect("same kind and rank");
        let b = shared_core
            .disjoint_union(&relabel(&random_dolbeault(&mut rng, rank, 2, 2, 3), "b-"))
            .expect("same kind and rank");
        let shared: Vec<String> = shared_core
            .points()
            .iter()
            .map(|p| p.name().to_string())
            .collect();
        let err = |e: CoreError| Counterexample::plain(e.to_string());
        let relative = a.relative_index(&b, &shared).map_err(err)?;
        let pruned = a
            .removing_points(&shared)
            .index()
            .map_err(err)?
            .sub(&b.removing_points(&shared).index().map_err(err)?)
            .map_err(err)?;
        if !relative.value_eq(&pruned).map_err(err)? {
            return Err(Counterexample::with_scenario(
                format!("relative index {relative} != pruned difference {pruned}"),
                &a,
            ));
        }
    }
    Ok(format!("{rounds} random pairs with shared sublists cancel"))
}

/// Criterion: rational elements annihilating a tangent weight always raise
/// a singular-element error.
pub fn check_regularity_guard(seed: u64, cases: usize) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6a4d);
    for _ in 0..cases {
        let rank = rng.gen_range(1..=3);
        let weights: Vec<Weight> = (0..rng.gen_range(1..=3))
            .map(|_| random_weight(&mut rng, rank, 5))
            .collect();
        let bundle_exp = random_weight(&mut rng, rank, 3);
        let scenario = FixedPointScenario::new(
            rank,
            OperatorKind::Dolbeault,
            vec![FixedPointDatum::dolbeault(
                "p",
                weights.clone(),
                LaurentPolynomial::monomial(rank, bundle_exp, BigInt::from(1)),
            )],
        )
        .expect("valid scenario");
        // Pick a tangent weight and an element with Σ w_i θ_i / 2π ∈ ℤ.
        let target = &weights[rng.gen_range(0..weights.len())];
        let axis = target
            .entries()
            .iter()
            .position(|&e| e != 0)
            .expect("weights are nonzero");
        let mut angles = vec![(0i64, 1i64); rank];
        angles[axis] = (1, target.entries()[axis].abs());
        let g = TorusElement::rational(angles).expect("valid fractions");
        let index = scenario.index().map_err(|e| Counterexample::plain(e.to_string()))?;
        match index.eval(&g) {
            Err(CoreError::SingularElement { .. }) => {}
            other => {
                return Err(Counterexample::with_scenario(
                    format!("expected SingularElement, got {other:?}"),
                    &scenario,
                ));
            }
        }
    }
    Ok(format!("{cases}/{cases} singular evaluations rejected"))
}

/// Extended criterion: the Bott scenario evaluates to the constant 1.
pub fn check_bott_element() -> CheckResult {
    for rank in 1..=3 {
        let scenario = FixedPointScenario::bott(rank);
        let index = scenario.index().map_err(|e| Counterexample::plain(e.to_string()))?;
        if index.as_polynomial() != Some(&LaurentPolynomial::one(rank)) {
            return Err(Counterexample::with_scenario(
                format!("Bott scenario of rank {rank} has index {index}, expected 1"),
                &scenario,
            ));
        }
    }
    Ok("ranks 1..3 evaluate to the constant 1".to_string())
}

/// Run the suite; returns `(name, result)` pairs in order.
pub fn run_suite(
    seed: u64,
    only: Option<&str>,
    extended: bool,
) -> Vec<(&'static str, CheckResult)> {
    CHECK_NAMES
        .iter()
        .filter(|&&name| only.map_or(name != "bott-element" || extended, |o| o == name))
        .map(|&name| (name, run_check(name, seed).expect("known name")))
        .collect()
}

/// Serialize a counterexample for the exit-3 report.
pub fn counterexample_json(name: &str, ce: &Counterexample) -> serde_json::Value {
    json!({
        "check": name,
        "detail": ce.detail,
        "input": ce.payload,
    })
}

fn relabel(s: &FixedPointScenario, prefix: &str) -> FixedPointScenario {
    let points = s
        .points()
        .iter()
        .map(|p| {
            let name = format!("{prefix}{}", p.name());
            match p.data() {
                gindex_core::PointData::Dolbeault { bundle } => {
                    FixedPointDatum::dolbeault(name, p.tangent_weights().to_vec(), bundle.clone())
                }
                gindex_core::PointData::Generic { plus, minus } => FixedPointDatum::generic(
                    name,
                    p.tangent_weights().to_vec(),
                    plus.clone(),
                    minus.clone(),
                ),
                gindex_core::PointData::DeRham => {
                    FixedPointDatum::derham(name, p.tangent_weights().to_vec())
                }
            }
        })
        .collect();
    FixedPointScenario::new(s.rank(), s.operator_kind(), points).expect("relabeling stays valid")
}

pub fn random_weight(rng: &mut ChaCha8Rng, rank: usize, max: i64) -> Weight {
    loop {
        let entries: Vec<i64> = (0..rank).map(|_| rng.gen_range(-max..=max)).collect();
        if entries.iter().any(|&e| e != 0) {
            return Weight::new(entries);
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, rank: usize, terms: usize, span: i64) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(
        rank,
        1,
        (0..rng.gen_range(1..=terms)).map(|_| {
            let entries: Vec<i64> = (0..rank).map(|_| rng.gen_range(-span..=span)).collect();
            (Weight::new(entries), BigInt::from(rng.gen_range(-3..=3i64)))
        }),
    )
}

pub fn random_dolbeault(
    rng: &mut ChaCha8Rng,
    rank: usize,
    max_points: usize,
    max_weights: usize,
    weight_max: i64,
) -> FixedPointScenario {
    let points = (0..rng.gen_range(1..=max_points))
        .map(|i| {
            let weights = (0..rng.gen_range(1..=max_weights))
                .map(|_| random_weight(rng, rank, weight_max))
                .collect();
            FixedPointDatum::dolbeault(format!("p{i}"), weights, random_poly(rng, rank, 2, 2))
        })
        .collect();
    FixedPointScenario::new(rank, OperatorKind::Dolbeault, points).expect("valid scenario")
}

pub fn random_generic(
    rng: &mut ChaCha8Rng,
    rank: usize,
    max_points: usize,
    max_weights: usize,
    weight_max: i64,
) -> FixedPointScenario {
    let points = (0..rng.gen_range(1..=max_points))
        .map(|i| {
            let weights = (0..rng.gen_range(1..=max_weights))
                .map(|_| random_weight(rng, rank, weight_max))
                .collect();
            FixedPointDatum::generic(
                format!("p{i}"),
                weights,
                random_poly(rng, rank, 2, 2),
                random_poly(rng, rank, 2, 2),
            )
        })
        .collect();
    FixedPointScenario::new(rank, OperatorKind::Generic, points).expect("valid scenario")
}

/// Random dominant regular λ with λ - ρ integral, at the system's lattice
/// denominator.
pub fn random_dominant_lambda(rng: &mut ChaCha8Rng, rs: &RootSystemData) -> HighestWeightParam {
    let d = rs.lattice_denominator();
    let rho = rs.half_sum_rho();
    let positives = rs.positive_roots();
    loop {
        let shift: Vec<i64> = (0..rs.rank()).map(|_| rng.gen_range(0..=3) * d).collect();
        let lambda = rho.plus(&Weight::new(shift));
        if positives.iter().all(|alpha| lambda.dot(alpha.entries()) > 0) {
            if let Ok(param) = HighestWeightParam::new(rs, lambda) {
                return param;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_suite_passes_with_default_seed() {
        for (name, result) in run_suite(0, None, true) {
            assert!(result.is_ok(), "{name} failed: {:?}", result.err().map(|c| c.detail));
        }
    }

    #[test]
    fn suite_is_filterable_and_gates_the_extended_check() {
        let only = run_suite(7, Some("multiplicativity"), false);
        assert_eq!(only.len(), 1);
        assert_eq!(only[0].0, "multiplicativity");

        let standard = run_suite(0, None, false);
        assert!(standard.iter().all(|(name, _)| *name != "bott-element"));
        let extended = run_suite(0, None, true);
        assert!(extended.iter().any(|(name, _)| *name == "bott-element"));
    }

    #[test]
    fn injected_sign_error_in_real_determinant_fails_derham_check() {
        // Broken indexer: uses only the complex half of det_ℝ, the kind of
        // sign/structure error the identity suite must catch.
        let broken = |s: &FixedPointScenario| -> Result<CharacterFraction, CoreError> {
            let mut total = CharacterFraction::zero(s.rank());
            for point in s.points() {
                let mut numerator = LaurentPolynomial::one(s.rank());
                for w in point.tangent_weights() {
                    for exp in [w.clone(), w.negated()] {
                        let factor = LaurentPolynomial::from_terms(
                            s.rank(),
                            1,
                            [
                                (Weight::zero(s.rank()), BigInt::from(1)),
                                (exp, BigInt::from(-1)),
                            ],
                        );
                        numerator = numerator.mul(&factor)?;
                    }
                }
                // det_ℂ where det_ℝ belongs: half the factors are missing.
                let factors: Vec<Weight> =
                    point.tangent_weights().iter().map(|w| w.negated()).collect();
                total = total.add(&CharacterFraction::new(numerator, &factors)?)?;
            }
            Ok(total.simplified())
        };
        let result = check_derham_euler_with(3, 20, &broken);
        assert!(result.is_err(), "sabotaged determinant must fail the check");
    }

    #[test]
    fn counterexamples_serialize_the_offending_scenario() {
        let ce = Counterexample::with_scenario("detail", &FixedPointScenario::sphere(1));
        let value = counterexample_json("sphere-borel-weil", &ce);
        assert_eq!(value["check"], "sphere-borel-weil");
        assert_eq!(value["input"]["operator"], "dolbeault");
    }
}
