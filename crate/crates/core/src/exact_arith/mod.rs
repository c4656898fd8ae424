//! Exact arithmetic underpinning every other module: reduced rationals,
//! the projective line `Q ∪ {∞}`, 2×2 matrices, integer polynomials and
//! the cyclotomic fields `Q(ω_k)`.
//!
//! All values are immutable once built and every operation is a pure
//! function, so everything here is `Send + Sync`.

pub mod cyclotomic;
pub mod matrix;
pub mod poly;
pub mod projective;
pub mod rational;
pub mod text;

pub use cyclotomic::{cyc_is_rational, cyc_mul, Cyclotomic, CyclotomicField};
pub use poly::{cyclotomic_polynomial, IntPolynomial};
pub use rational::{height, rational_kth_root, rational_make, reduced_fractions, tuple_height};
