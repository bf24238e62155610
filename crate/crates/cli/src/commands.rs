//! Implementations of the CLI subcommands, independent of argument parsing.
//!
//! Every command produces a [`CommandOutput`] holding both a text rendering
//! and a JSON value; the binary picks one according to `--format`. File
//! loading lives here too so integration tests can drive commands directly.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde_json::json;

use gindex_core::distribution::{pairing_report, TestFunction};
use gindex_core::scenario::geometric_expansion;
use gindex_core::weyl::discrete_series_sign;
use gindex_core::{
    CharacterFraction, FixedPointScenario, HighestWeightParam, RootSystemData, TorusElement,
    Weight,
};

use crate::json as fmt;
use crate::CliError;

/// Rendered command result: text lines plus a JSON document, and the exit
/// code to finish with (nonzero only for failed verification runs).
#[derive(Clone, Debug)]
pub struct CommandOutput {
    pub text: String,
    pub json: serde_json::Value,
    pub exit_code: i32,
}

impl CommandOutput {
    fn new(text: String, json: serde_json::Value) -> Self {
        CommandOutput { text, json, exit_code: 0 }
    }
}

/// Evaluation points collected from `--eval` and `--numeric`.
#[derive(Clone, Debug, Default)]
pub struct EvalPoints {
    pub rational: Vec<Vec<(i64, i64)>>,
    pub numeric: Vec<Vec<f64>>,
}

impl EvalPoints {
    pub fn parse(eval: &[String], numeric: &[String]) -> Result<Self, CliError> {
        Ok(EvalPoints {
            rational: eval
                .iter()
                .map(|s| parse_rational_vector(s))
                .collect::<Result<_, _>>()?,
            numeric: numeric
                .iter()
                .map(|s| parse_numeric_vector(s))
                .collect::<Result<_, _>>()?,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.rational.is_empty() && self.numeric.is_empty()
    }
}

/// Parse `"p/q,p/q,..."`; a bare integer `p` means `p/1`.
pub fn parse_rational_vector(text: &str) -> Result<Vec<(i64, i64)>, CliError> {
    text.split(',')
        .map(|part| {
            let part = part.trim();
            let (p, q) = match part.split_once('/') {
                Some((p, q)) => (p, q),
                None => (part, "1"),
            };
            let p: i64 = p
                .parse()
                .map_err(|_| CliError::parse(format!("invalid rational angle '{part}'")))?;
            let q: i64 = q
                .parse()
                .map_err(|_| CliError::parse(format!("invalid rational angle '{part}'")))?;
            if q == 0 {
                return Err(CliError::parse(format!("zero denominator in '{part}'")));
            }
            Ok((p, q))
        })
        .collect()
}

pub fn parse_numeric_vector(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| CliError::parse(format!("invalid radian value '{part}'")))
        })
        .collect()
}

pub fn format_complex(z: Complex64) -> String {
    format!("{:.12}{:+.12}i", z.re, z.im)
}

fn rational_label(point: &[(i64, i64)]) -> String {
    point
        .iter()
        .map(|(p, q)| format!("{p}/{q}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn numeric_label(point: &[f64]) -> String {
    point
        .iter()
        .map(|x| format!("{x}"))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn load_scenario(path: &Path) -> Result<FixedPointScenario, CliError> {
    let text = std::fs::read_to_string(path)?;
    let parsed: fmt::ScenarioJson = serde_json::from_str(&text)?;
    fmt::scenario_from_json(&parsed)
}

pub fn load_fraction(path: &Path) -> Result<CharacterFraction, CliError> {
    let text = std::fs::read_to_string(path)?;
    let parsed: fmt::FractionJson = serde_json::from_str(&text)?;
    fmt::fraction_from_json(&parsed)
}

pub fn load_root_system(path: &Path) -> Result<RootSystemData, CliError> {
    let text = std::fs::read_to_string(path)?;
    let parsed: fmt::RootSystemJson = serde_json::from_str(&text)?;
    fmt::root_system_from_json(&parsed)
}

pub fn load_test_function(path: &Path) -> Result<TestFunction, CliError> {
    let text = std::fs::read_to_string(path)?;
    let parsed: fmt::TestFunctionJson = serde_json::from_str(&text)?;
    fmt::test_function_from_json(&parsed)
}

pub fn load_classes(
    rank: usize,
    path: &Path,
) -> Result<BTreeMap<String, gindex_core::LaurentPolynomial>, CliError> {
    let text = std::fs::read_to_string(path)?;
    let parsed: fmt::ClassesJson = serde_json::from_str(&text)?;
    fmt::classes_from_json(rank, &parsed)
}

/// Evaluate a fraction at every requested point; rational points get exact
/// regularity checks, numeric ones use the singular tolerance.
fn evaluate_at_points(
    fraction: &CharacterFraction,
    points: &EvalPoints,
    singular_tolerance: f64,
) -> Result<(Vec<String>, Vec<serde_json::Value>), CliError> {
    let mut lines = Vec::new();
    let mut values = Vec::new();
    for point in &points.rational {
        let g = TorusElement::rational(point.clone())?;
        let value = fraction.eval(&g)?;
        lines.push(format!(
            "value at {}: {}",
            rational_label(point),
            format_complex(value)
        ));
        values.push(json!({
            "at": rational_label(point),
            "kind": "rational",
            "value": [value.re, value.im],
        }));
    }
    for point in &points.numeric {
        let g = TorusElement::numeric(point.clone());
        let value = fraction.eval_with_tolerance(&g, singular_tolerance)?;
        lines.push(format!(
            "value at {} rad: {}",
            numeric_label(point),
            format_complex(value)
        ));
        values.push(json!({
            "at": numeric_label(point),
            "kind": "numeric",
            "value": [value.re, value.im],
        }));
    }
    Ok((lines, values))
}

fn index_output(
    index: CharacterFraction,
    points: &EvalPoints,
    singular_tolerance: f64,
) -> Result<CommandOutput, CliError> {
    let (lines, values) = evaluate_at_points(&index, points, singular_tolerance)?;
    let mut text = index.to_string();
    for line in &lines {
        text.push('\n');
        text.push_str(line);
    }
    let json = json!({
        "index": fmt::fraction_to_json(&index),
        "evaluations": values,
    });
    Ok(CommandOutput::new(text, json))
}

pub fn cmd_index(
    scenario: &FixedPointScenario,
    points: &EvalPoints,
    singular_tolerance: f64,
) -> Result<CommandOutput, CliError> {
    index_output(scenario.index()?, points, singular_tolerance)
}

pub fn cmd_product(
    a: &FixedPointScenario,
    b: &FixedPointScenario,
    points: &EvalPoints,
    singular_tolerance: f64,
) -> Result<CommandOutput, CliError> {
    index_output(a.product(b)?.index()?, points, singular_tolerance)
}

pub fn cmd_relative(
    a: &FixedPointScenario,
    b: &FixedPointScenario,
    shared: &[String],
    points: &EvalPoints,
    singular_tolerance: f64,
) -> Result<CommandOutput, CliError> {
    index_output(a.relative_index(b, shared)?, points, singular_tolerance)
}

pub fn cmd_pair_ktheory(
    scenario: &FixedPointScenario,
    classes: &BTreeMap<String, gindex_core::LaurentPolynomial>,
    points: &EvalPoints,
    singular_tolerance: f64,
) -> Result<CommandOutput, CliError> {
    index_output(scenario.pair_with_classes(classes)?, points, singular_tolerance)
}

pub fn cmd_linearize(scenario: &FixedPointScenario) -> Result<CommandOutput, CliError> {
    let parts = scenario.linearize()?;
    let index = scenario.index()?;
    let mut recombined = CharacterFraction::zero(scenario.rank());
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    for (name, bundle, linear) in &parts {
        recombined = recombined
            .add(&linear.mul(&CharacterFraction::from_polynomial(bundle.clone()))?)?;
        lines.push(format!("{name}: trace = {bundle}, linear index = {linear}"));
        entries.push(json!({
            "name": name,
            "trace": fmt::polynomial_to_terms(bundle),
            "linear_index": fmt::fraction_to_json(linear),
        }));
    }
    let recombines = recombined.value_eq(&index)?;
    lines.push(format!(
        "recombined index: {index} ({})",
        if recombines { "matches" } else { "MISMATCH" }
    ));
    let json = json!({
        "points": entries,
        "index": fmt::fraction_to_json(&index),
        "recombines": recombines,
    });
    Ok(CommandOutput::new(lines.join("\n"), json))
}

/// Everything `weyl` needs beyond the root system itself.
#[derive(Clone, Debug)]
pub struct WeylRequest {
    /// λ in the ρ-refined lattice, as rationals per coordinate.
    pub lambda: Vec<(i64, i64)>,
    /// Use the full Weyl group in the character sum (otherwise compact).
    pub full: bool,
    /// Rational evaluation points.
    pub at: Vec<Vec<(i64, i64)>>,
    /// dim G/K override; inferred from the noncompact root count when absent.
    pub dim_g_over_k: Option<u32>,
    /// Weyl enumeration cap.
    pub cap: usize,
}

pub fn cmd_weyl(rs: &RootSystemData, request: &WeylRequest) -> Result<CommandOutput, CliError> {
    let d = rs.lattice_denominator();
    let lambda_entries: Vec<i64> = request
        .lambda
        .iter()
        .map(|&(p, q)| {
            if (p * d) % q != 0 {
                return Err(CliError::parse(format!(
                    "lambda coordinate {p}/{q} is not in the 1/{d} lattice"
                )));
            }
            Ok(p * d / q)
        })
        .collect::<Result<_, _>>()?;
    let lambda = HighestWeightParam::new(rs, Weight::new(lambda_entries))?;

    let full_order = rs.weyl_group_with_cap(false, request.cap)?.len();
    let compact_order = rs.weyl_group_with_cap(true, request.cap)?.len();
    let character = rs.character_weyl_sum(&lambda, !request.full)?;

    // Two-path consistency: the flag scenario must reproduce the compact sum.
    let compact_sum = rs.character_weyl_sum(&lambda, true)?;
    let flag_index = rs.flag_scenario(&lambda)?.index()?;
    let flag_check = flag_index.value_eq(&compact_sum)?;

    let dim_g_over_k = request
        .dim_g_over_k
        .unwrap_or((rs.roots().len() - rs.compact_roots().len()) as u32);
    let sign = discrete_series_sign(dim_g_over_k)?;

    let mut lines = vec![
        format!("weyl group order: {full_order} (compact: {compact_order})"),
        format!(
            "character ({} Weyl sum): {character}",
            if request.full { "full" } else { "compact" }
        ),
    ];
    if let Some(poly) = character.as_polynomial() {
        lines.push(format!("dimension at t = 1: {}", poly.coefficient_sum()));
    }
    lines.push(format!(
        "flag-scenario cross-check: {}",
        if flag_check { "PASS" } else { "FAIL" }
    ));
    lines.push(format!(
        "discrete-series sign (-1)^(dim G/K / 2) with dim G/K = {dim_g_over_k}: {sign:+}"
    ));

    let mut evaluations = Vec::new();
    for point in &request.at {
        let g = TorusElement::rational(point.clone())?;
        let value = character.eval(&g)?;
        lines.push(format!(
            "value at {}: {}",
            rational_label(point),
            format_complex(value)
        ));
        let signed = value * sign as f64;
        if !request.full {
            lines.push(format!(
                "discrete-series value at {}: {}",
                rational_label(point),
                format_complex(signed)
            ));
        }
        evaluations.push(json!({
            "at": rational_label(point),
            "value": [value.re, value.im],
            "discrete_series_value": [signed.re, signed.im],
        }));
    }

    let json = json!({
        "weyl_order": full_order,
        "compact_weyl_order": compact_order,
        "character": fmt::fraction_to_json(&character),
        "dimension": character.as_polynomial().map(|p| p.coefficient_sum().to_string()),
        "flag_cross_check": flag_check,
        "dim_g_over_k": dim_g_over_k,
        "normalization_sign": sign,
        "evaluations": evaluations,
    });
    Ok(CommandOutput::new(lines.join("\n"), json))
}

pub fn cmd_pair(
    phi: &TestFunction,
    truncation: i64,
    grid: usize,
) -> Result<CommandOutput, CliError> {
    let report = pairing_report(phi, truncation, grid)?;
    let text = [
        format!("partial sum (N = {}): {}", report.truncation, format_complex(report.partial_sum_value)),
        format!(
            "abel extrapolated (j = {}..{}, grid {}): {}",
            report.j_range.0,
            report.j_range.1,
            report.grid,
            format_complex(report.abel_value)
        ),
        format!("discrepancy: {:.3e}", report.discrepancy),
    ]
    .join("\n");
    let json = json!({
        "partial_sum_value": [report.partial_sum_value.re, report.partial_sum_value.im],
        "abel_value": [report.abel_value.re, report.abel_value.im],
        "discrepancy": report.discrepancy,
        "truncation": report.truncation,
        "j_range": [report.j_range.0, report.j_range.1],
        "grid": report.grid,
    });
    Ok(CommandOutput::new(text, json))
}

pub fn cmd_expand(fraction: &CharacterFraction, depth: u32) -> Result<CommandOutput, CliError> {
    let expansion = geometric_expansion(fraction, depth)?;
    let json = json!({
        "depth": depth,
        "expansion": fmt::polynomial_to_terms(&expansion),
    });
    Ok(CommandOutput::new(expansion.to_string(), json))
}
