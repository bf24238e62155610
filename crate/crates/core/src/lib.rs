//! Exact symbolic engine for equivariant indices of elliptic operators with
//! isolated fixed points.
//!
//! The crate is organised around a small exact-arithmetic kernel and three
//! layers built on top of it:
//!
//! - [`weight`], [`poly`], [`fraction`], [`eval`]: Laurent polynomials over
//!   arbitrary-precision integers in torus variables, fractions with binomial
//!   denominators `(1 - t^α)`, exact division and cancellation, and complex
//!   evaluation at torus elements with exact regularity checks.
//! - [`scenario`]: torus actions with isolated fixed points and the
//!   Lefschetz-type index sums they produce (Dolbeault, de Rham and generic
//!   operators, linearisation, index pairing, products, relative indices).
//! - [`weyl`]: root systems, enumerated Weyl groups, the Weyl denominator and
//!   character sums, including discrete-series values on the compact torus.
//! - [`distribution`]: numeric verification of distributional character
//!   statements on the circle (partial sums against an Abel-summation oracle).
//!
//! Everything symbolic is exact: coefficients are big integers, exponents live
//! in a rational refinement `(1/D)ℤ^n` of the weight lattice, and equality of
//! fractions is decided by cross multiplication. Floating point enters only
//! through explicit evaluation of characters at torus elements.
//!
//! The crate is `no_std` (with `alloc`); IO, serialization and the command
//! line front end live in the companion `gindex-cli` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod distribution;
pub mod error;
pub mod eval;
pub mod fraction;
pub mod poly;
pub mod scenario;
pub mod weight;
pub mod weyl;

pub use error::Error;
pub use eval::TorusElement;
pub use fraction::{BinomialFactor, CharacterFraction};
pub use poly::LaurentPolynomial;
pub use scenario::{FixedPointDatum, FixedPointScenario, OperatorKind, PointData};
pub use weight::Weight;
pub use weyl::{HighestWeightParam, RootSystemData, WeylElement};

/// Default tolerance below which a numeric denominator factor counts as
/// singular.
pub const DEFAULT_SINGULAR_TOLERANCE: f64 = 1e-12;
