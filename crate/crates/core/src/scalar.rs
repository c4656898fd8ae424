//! The scalar abstraction shared by the matrix, projective-line and
//! cyclotomic types.
//!
//! Everything that only needs field operations is generic over [`Scalar`].
//! The exact instantiation ([`crate::Rational`]) is the one the library is
//! built around; the float instantiations exist for quick numeric
//! cross-checks and make no exactness promises.

use std::fmt::Debug;
use std::ops::Neg;

use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num};

pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + FromPrimitive {
    /// Equality used by on-curve checks. Structural for exact fields,
    /// relative tolerance for floats.
    fn same(&self, other: &Self) -> bool;
}

impl Scalar for BigRational {
    fn same(&self, other: &Self) -> bool {
        self == other
    }
}

impl Scalar for Ratio<i64> {
    fn same(&self, other: &Self) -> bool {
        self == other
    }
}

macro_rules! float_scalar {
    ($($t:ty => $eps:expr),*) => {$(
        impl Scalar for $t {
            fn same(&self, other: &Self) -> bool {
                let scale = self.abs().max(other.abs()).max(1.0);
                (self - other).abs() <= $eps * scale
            }
        }
    )*};
}

float_scalar!(f32 => 1e-5, f64 => 1e-12);
