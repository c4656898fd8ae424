use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::exact_arith::rational::height;
use crate::scalar::Scalar;
use crate::Rational;

/// A point in the plane, used for solutions of `x² ± y² = 1` and of the
/// two-variable k-ubic equations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point2<T> {
    pub fn new(x: T, y: T) -> Self {
        Point2 { x, y }
    }

    /// The base point `(1, 0)`.
    pub fn unit() -> Self {
        Point2::new(T::one(), T::zero())
    }

    pub fn circle_form(&self) -> T {
        self.x.clone() * self.x.clone() + self.y.clone() * self.y.clone()
    }

    pub fn hyperbola_form(&self) -> T {
        self.x.clone() * self.x.clone() - self.y.clone() * self.y.clone()
    }

    pub fn on_circle(&self) -> bool {
        self.circle_form().same(&T::one())
    }

    pub fn on_hyperbola(&self) -> bool {
        self.hyperbola_form().same(&T::one())
    }

    pub fn neg(&self) -> Self {
        Point2::new(-self.x.clone(), -self.y.clone())
    }
}

impl Point2<Rational> {
    pub fn height(&self) -> BigUint {
        height(&self.x).max(height(&self.y)).max(BigUint::one())
    }
}

impl fmt::Display for Point2<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::exact_arith::text::format_rational;
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}
