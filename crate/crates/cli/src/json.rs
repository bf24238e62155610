//! JSON formats for scenarios, fractions, root systems and test functions.
//!
//! Schemas:
//!
//! - polynomial: `[{"coeff":"<decimal string>","exp":[...]}, ...]`
//! - fraction: `{"rank":n,"lattice_denominator":D,"numerator":[...terms],
//!   "denominator":[{"exp":[...]},...]}`
//! - scenario: `{"rank":n,"operator":"dolbeault"|"deRham"|"generic",
//!   "points":[{"name":"...","tangent_weights":[[...]],"bundle":[...terms],
//!   "plus":[...],"minus":[...]}]}`
//! - root system: `{"rank":n,"roots":[[...]],"compact_roots":[[...]],
//!   "regular_vector":[...]}`
//! - test function: `{"trig":{"3":[re,im]}}` or `{"samples":[...]}`
//!
//! Unknown fields are rejected everywhere; coefficients travel as decimal
//! strings to avoid integer-width truncation.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use gindex_core::{
    distribution::TestFunction, BinomialFactor, CharacterFraction, FixedPointDatum,
    FixedPointScenario, LaurentPolynomial, OperatorKind, PointData, RootSystemData, Weight,
};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub coeff: String,
    pub exp: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorJson {
    pub exp: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FractionJson {
    pub rank: usize,
    pub lattice_denominator: i64,
    pub numerator: Vec<TermJson>,
    #[serde(default)]
    pub denominator: Vec<FactorJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    pub name: String,
    pub tangent_weights: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bundle: Option<Vec<TermJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plus: Option<Vec<TermJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minus: Option<Vec<TermJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioJson {
    pub rank: usize,
    pub operator: String,
    pub points: Vec<PointJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootSystemJson {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    #[serde(default)]
    pub compact_roots: Vec<Vec<i64>>,
    pub regular_vector: Vec<i64>,
}

/// Either a finite Fourier expansion or a sampled grid.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub enum TestFunctionJson {
    #[serde(rename = "trig")]
    Trig(BTreeMap<String, [f64; 2]>),
    #[serde(rename = "samples")]
    Samples(Vec<f64>),
}

fn parse_coefficient(text: &str) -> Result<BigInt, CliError> {
    BigInt::from_str(text)
        .map_err(|_| CliError::parse(format!("invalid integer coefficient '{text}'")))
}

pub fn polynomial_from_terms(
    rank: usize,
    lattice_denominator: i64,
    terms: &[TermJson],
    context: &str,
) -> Result<LaurentPolynomial, CliError> {
    let mut parsed = Vec::with_capacity(terms.len());
    for term in terms {
        if term.exp.len() != rank {
            return Err(CliError::parse(format!(
                "{context}: exponent vector {:?} does not match rank {rank}",
                term.exp
            )));
        }
        parsed.push((Weight::new(term.exp.clone()), parse_coefficient(&term.coeff)?));
    }
    Ok(LaurentPolynomial::from_terms(rank, lattice_denominator, parsed))
}

pub fn polynomial_to_terms(p: &LaurentPolynomial) -> Vec<TermJson> {
    p.terms()
        .map(|(w, c)| TermJson { coeff: c.to_string(), exp: w.entries().to_vec() })
        .collect()
}

pub fn fraction_to_json(x: &CharacterFraction) -> FractionJson {
    FractionJson {
        rank: x.rank(),
        lattice_denominator: x.lattice_denominator(),
        numerator: polynomial_to_terms(x.numerator()),
        denominator: x
            .denominator_factors()
            .iter()
            .map(|f: &BinomialFactor| FactorJson { exp: f.weight().entries().to_vec() })
            .collect(),
    }
}

pub fn fraction_from_json(json: &FractionJson) -> Result<CharacterFraction, CliError> {
    if json.lattice_denominator < 1 {
        return Err(CliError::parse("lattice_denominator must be >= 1".to_string()));
    }
    let numerator = polynomial_from_terms(
        json.rank,
        json.lattice_denominator,
        &json.numerator,
        "numerator",
    )?;
    let mut factors = Vec::with_capacity(json.denominator.len());
    for f in &json.denominator {
        if f.exp.len() != json.rank {
            return Err(CliError::parse(format!(
                "denominator: exponent vector {:?} does not match rank {}",
                f.exp, json.rank
            )));
        }
        factors.push(Weight::new(f.exp.clone()));
    }
    CharacterFraction::new(numerator, &factors).map_err(CliError::from)
}

pub fn scenario_from_json(json: &ScenarioJson) -> Result<FixedPointScenario, CliError> {
    let kind = match json.operator.as_str() {
        "dolbeault" => OperatorKind::Dolbeault,
        "deRham" => OperatorKind::DeRham,
        "generic" => OperatorKind::Generic,
        other => {
            return Err(CliError::parse(format!(
                "operator must be dolbeault|deRham|generic, got '{other}'"
            )))
        }
    };
    let mut points = Vec::with_capacity(json.points.len());
    for point in &json.points {
        let context = format!("point '{}'", point.name);
        let mut weights = Vec::with_capacity(point.tangent_weights.len());
        for w in &point.tangent_weights {
            if w.len() != json.rank {
                return Err(CliError::parse(format!(
                    "{context}: tangent weight {w:?} does not match rank {}",
                    json.rank
                )));
            }
            if w.iter().all(|&e| e == 0) {
                return Err(CliError::parse(format!("{context}: zero tangent weight")));
            }
            weights.push(Weight::new(w.clone()));
        }
        let forbid = |field: &Option<Vec<TermJson>>, label: &str| {
            if field.is_some() {
                Err(CliError::parse(format!(
                    "{context}: field '{label}' is not allowed for operator '{}'",
                    json.operator
                )))
            } else {
                Ok(())
            }
        };
        let datum = match kind {
            OperatorKind::Dolbeault => {
                forbid(&point.plus, "plus")?;
                forbid(&point.minus, "minus")?;
                let bundle = point.bundle.as_ref().ok_or_else(|| {
                    CliError::parse(format!("{context}: missing 'bundle'"))
                })?;
                FixedPointDatum::dolbeault(
                    point.name.clone(),
                    weights,
                    polynomial_from_terms(json.rank, 1, bundle, &context)?,
                )
            }
            OperatorKind::Generic => {
                forbid(&point.bundle, "bundle")?;
                let plus = point.plus.as_ref().ok_or_else(|| {
                    CliError::parse(format!("{context}: missing 'plus'"))
                })?;
                let minus = point.minus.as_ref().ok_or_else(|| {
                    CliError::parse(format!("{context}: missing 'minus'"))
                })?;
                FixedPointDatum::generic(
                    point.name.clone(),
                    weights,
                    polynomial_from_terms(json.rank, 1, plus, &context)?,
                    polynomial_from_terms(json.rank, 1, minus, &context)?,
                )
            }
            OperatorKind::DeRham => {
                forbid(&point.bundle, "bundle")?;
                forbid(&point.plus, "plus")?;
                forbid(&point.minus, "minus")?;
                FixedPointDatum::derham(point.name.clone(), weights)
            }
        };
        points.push(datum);
    }
    FixedPointScenario::new(json.rank, kind, points).map_err(CliError::from)
}

pub fn scenario_to_json(s: &FixedPointScenario) -> ScenarioJson {
    let points = s
        .points()
        .iter()
        .map(|p| {
            let (bundle, plus, minus) = match p.data() {
                PointData::Dolbeault { bundle } => (Some(polynomial_to_terms(bundle)), None, None),
                PointData::Generic { plus, minus } => (
                    None,
                    Some(polynomial_to_terms(plus)),
                    Some(polynomial_to_terms(minus)),
                ),
                PointData::DeRham => (None, None, None),
            };
            PointJson {
                name: p.name().to_string(),
                tangent_weights: p
                    .tangent_weights()
                    .iter()
                    .map(|w| w.entries().to_vec())
                    .collect(),
                bundle,
                plus,
                minus,
            }
        })
        .collect();
    ScenarioJson {
        rank: s.rank(),
        operator: s.operator_kind().name().to_string(),
        points,
    }
}

pub fn root_system_from_json(json: &RootSystemJson) -> Result<RootSystemData, CliError> {
    RootSystemData::new(
        json.rank,
        json.roots.iter().cloned().map(Weight::new).collect(),
        json.compact_roots.iter().cloned().map(Weight::new).collect(),
        json.regular_vector.clone(),
    )
    .map_err(CliError::from)
}

pub fn test_function_from_json(json: &TestFunctionJson) -> Result<TestFunction, CliError> {
    match json {
        TestFunctionJson::Trig(map) => {
            let mut coefficients = Vec::with_capacity(map.len());
            for (key, [re, im]) in map {
                let frequency: i64 = key.parse().map_err(|_| {
                    CliError::parse(format!("invalid frequency '{key}'"))
                })?;
                coefficients.push((frequency, Complex64::new(*re, *im)));
            }
            Ok(TestFunction::trig(coefficients))
        }
        TestFunctionJson::Samples(values) => {
            TestFunction::sampled(values.clone()).map_err(CliError::from)
        }
    }
}

/// Map of point labels to fibre characters, for the index pairing.
pub type ClassesJson = BTreeMap<String, Vec<TermJson>>;

pub fn classes_from_json(
    rank: usize,
    json: &ClassesJson,
) -> Result<BTreeMap<String, LaurentPolynomial>, CliError> {
    json.iter()
        .map(|(name, terms)| {
            Ok((
                name.clone(),
                polynomial_from_terms(rank, 1, terms, &format!("class '{name}'"))?,
            ))
        })
        .collect()
}
