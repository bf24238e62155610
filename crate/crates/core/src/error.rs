//! Error type shared by the symbolic and numeric layers.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong in the engine.
///
/// Variants mirror the failure modes of the individual operations; most are
/// precondition violations that calling code can avoid, with the exception of
/// [`Error::NotDivisible`] and [`Error::SingularElement`], which carry real
/// arithmetic information.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Two operands live over tori of different ranks.
    RankMismatch { left: usize, right: usize },
    /// The binomial does not divide the polynomial in the Laurent ring.
    NotDivisible,
    /// A denominator factor vanishes at the evaluation point. The payload
    /// names the factor weight (and the fixed point, when known).
    SingularElement { detail: String },
    /// A symbolic (generic) torus element cannot be evaluated numerically.
    GenericNotEvaluable,
    /// A weight that must be nonzero (tangent weight, binomial exponent) is zero.
    ZeroTangentWeight { point: String },
    /// An index formula was applied to a scenario of the wrong operator kind.
    WrongOperatorKind { expected: &'static str, found: &'static str },
    /// A point label required by an index-pairing map is missing.
    MissingPointEntry { point: String },
    /// Product of scenarios with incompatible operator kinds.
    KindMismatch { left: &'static str, right: &'static str },
    /// Shared points passed to a relative index disagree between scenarios.
    SharedPointMismatch { point: String },
    /// The regular vector of a root system is orthogonal to a root.
    SingularRegularVector,
    /// Reflection closure exceeded the configured cap.
    GroupTooLarge { cap: usize },
    /// λ is orthogonal to some root.
    SingularLambda,
    /// λ − ρ does not lie in the integral lattice.
    NonIntegralLambda,
    /// A reflection matrix has non-integer entries; the root data is not
    /// crystallographic in the given coordinates.
    NonIntegralReflection,
    /// Root list is not closed under negation, contains zero, or the compact
    /// subset is not a negation-closed subset.
    InvalidRootSystem { detail: String },
    /// Geometric expansion requested for a denominator it cannot expand.
    UnsupportedDenominator,
    /// Negative truncation order for a partial character sum.
    NegativeTruncation,
    /// Abel radius outside (0, 1).
    RadiusOutOfRange,
    /// Malformed scenario or evaluation data (wrong vector length, empty
    /// sample grid, and similar).
    InvalidData { detail: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RankMismatch { left, right } => {
                write!(f, "rank mismatch: {left} vs {right}")
            }
            Error::NotDivisible => write!(f, "binomial does not divide the polynomial"),
            Error::SingularElement { detail } => {
                write!(f, "singular element: {detail}")
            }
            Error::GenericNotEvaluable => {
                write!(f, "generic torus element cannot be evaluated numerically")
            }
            Error::ZeroTangentWeight { point } => {
                write!(f, "zero tangent weight at point '{point}'")
            }
            Error::WrongOperatorKind { expected, found } => {
                write!(f, "wrong operator kind: expected {expected}, found {found}")
            }
            Error::MissingPointEntry { point } => {
                write!(f, "missing entry for point '{point}'")
            }
            Error::KindMismatch { left, right } => {
                write!(f, "incompatible operator kinds: {left} x {right}")
            }
            Error::SharedPointMismatch { point } => {
                write!(f, "shared point '{point}' differs between scenarios")
            }
            Error::SingularRegularVector => {
                write!(f, "regular vector is orthogonal to a root")
            }
            Error::GroupTooLarge { cap } => {
                write!(f, "reflection closure exceeds cap of {cap} elements")
            }
            Error::SingularLambda => write!(f, "lambda is orthogonal to a root"),
            Error::NonIntegralLambda => {
                write!(f, "lambda - rho is not an integral weight")
            }
            Error::NonIntegralReflection => {
                write!(f, "root reflection is not integral on the stored lattice")
            }
            Error::InvalidRootSystem { detail } => {
                write!(f, "invalid root system: {detail}")
            }
            Error::UnsupportedDenominator => {
                write!(f, "denominator is not a power of (1 - t) after normalization")
            }
            Error::NegativeTruncation => write!(f, "truncation order must be nonnegative"),
            Error::RadiusOutOfRange => write!(f, "Abel radius must lie in (0, 1)"),
            Error::InvalidData { detail } => write!(f, "invalid data: {detail}"),
        }
    }
}

impl core::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
