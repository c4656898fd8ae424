//! Exact arithmetic for the groups that preserve Fermat-type forms.
//!
//! The crate covers:
//!
//! * the rational rotation group of the unit circle, parametrized by the
//!   half-angle `Δ ∈ Q ∪ {∞}` ([`circle`]),
//! * its hyperbolic counterpart acting on `x² − y² = 1` ([`hyperbolic`]),
//! * the finite monomial groups `{ω^l δ_{i,σ(j)}}` preserving
//!   `x₁^k + … + x_n^k` for `k ≥ 3`, with exact arithmetic in `Q(ω)`
//!   ([`kfermat`]),
//! * bounded-height searches for rational points on `Σ x_i^k = 1`
//!   ([`search`]),
//! * exact iteration of a fixed rotation ([`stroboscope`]).
//!
//! The core types are generic over a [`Scalar`]; the aliases below fix the
//! exact rational instantiation used everywhere in the CLI and the searches.

pub mod circle;
pub mod cli;
pub mod error;
pub mod exact_arith;
pub mod hyperbolic;
pub mod kfermat;
pub mod point;
pub mod scalar;
pub mod search;
pub mod stroboscope;

pub use error::{Error, Result};
pub use exact_arith::{
    cyclotomic::{Cyclotomic, CyclotomicField},
    matrix::Matrix2,
    poly::IntPolynomial,
    projective::Projective,
};
pub use point::Point2;
pub use scalar::Scalar;

/// Exact reduced fraction with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;
/// `Q ∪ {∞}`, the parameter space of the circle and hyperbola groups.
pub type ProjectiveRational = Projective<Rational>;
pub type RationalMatrix2 = Matrix2<Rational>;
/// Element of `Q(ω_k)` in the canonical power basis.
pub type CyclotomicNumber = Cyclotomic<Rational>;
/// Rational point on the unit circle (or any plane curve, by context).
pub type SolutionPoint = Point2<Rational>;
/// Rational point on `x² − y² = 1`.
pub type HyperbolicPoint = Point2<Rational>;
pub type CircleElementQ = circle::CircleElement<Rational>;
pub type HyperbolicElementQ = hyperbolic::HyperbolicElement<Rational>;
pub type CyclotomicVectorQ = kfermat::CyclotomicVector<Rational>;

pub type Matrix2F64 = Matrix2<f64>;
pub type Point2F64 = Point2<f64>;
pub type ProjectiveF64 = Projective<f64>;
