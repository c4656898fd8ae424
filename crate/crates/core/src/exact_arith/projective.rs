use std::fmt;

use crate::scalar::Scalar;

/// A point of the projective line: a finite scalar or the single, signless `∞`.
///
/// `∞` is a tagged variant rather than a sentinel fraction; arithmetic on it
/// is only defined by the group laws that give it meaning.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Projective<T> {
    Finite(T),
    Infinity,
}

impl<T: Scalar> Projective<T> {
    pub fn zero() -> Self {
        Projective::Finite(T::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Projective::Infinity)
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            Projective::Finite(v) => Some(v),
            Projective::Infinity => None,
        }
    }

    /// `num/den` with `x/0 = ∞` for `x ≠ 0`; `0/0` has no value.
    pub fn from_ratio(num: T, den: T) -> Option<Self> {
        match (num.is_zero(), den.is_zero()) {
            (true, true) => None,
            (false, true) => Some(Projective::Infinity),
            _ => Some(Projective::Finite(num / den)),
        }
    }

    /// Negation; `−∞ = ∞`.
    pub fn neg(&self) -> Self {
        match self {
            Projective::Finite(v) => Projective::Finite(-v.clone()),
            Projective::Infinity => Projective::Infinity,
        }
    }

    /// `1/Δ` with `1/0 = ∞` and `1/∞ = 0`.
    pub fn recip(&self) -> Self {
        match self {
            Projective::Finite(v) if v.is_zero() => Projective::Infinity,
            Projective::Finite(v) => Projective::Finite(T::one() / v.clone()),
            Projective::Infinity => Projective::zero(),
        }
    }

    /// Whether the value is `1` or `−1`.
    pub fn is_unit_magnitude(&self) -> bool {
        match self {
            Projective::Finite(v) => v.is_one() || (-v.clone()).is_one(),
            Projective::Infinity => false,
        }
    }
}

impl<T: Scalar> From<T> for Projective<T> {
    fn from(v: T) -> Self {
        Projective::Finite(v)
    }
}

impl fmt::Display for Projective<crate::Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_projective(self))
    }
}
