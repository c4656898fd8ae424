use std::ops::Mul;

use crate::point::Point2;
use crate::scalar::Scalar;

/// Row-major 2×2 matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix2<T> {
    pub a11: T,
    pub a12: T,
    pub a21: T,
    pub a22: T,
}

impl<T: Scalar> Matrix2<T> {
    pub fn new(a11: T, a12: T, a21: T, a22: T) -> Self {
        Matrix2 { a11, a12, a21, a22 }
    }

    pub fn identity() -> Self {
        Self::diag(T::one(), T::one())
    }

    pub fn diag(d1: T, d2: T) -> Self {
        Matrix2::new(d1, T::zero(), T::zero(), d2)
    }

    /// `diag(1, −1)`, the reflection across the x-axis.
    pub fn reflection() -> Self {
        Self::diag(T::one(), -T::one())
    }

    pub fn scale(&self, s: &T) -> Self {
        Matrix2::new(
            self.a11.clone() * s.clone(),
            self.a12.clone() * s.clone(),
            self.a21.clone() * s.clone(),
            self.a22.clone() * s.clone(),
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    pub fn det(&self) -> T {
        self.a11.clone() * self.a22.clone() - self.a12.clone() * self.a21.clone()
    }

    pub fn apply(&self, p: &Point2<T>) -> Point2<T> {
        Point2::new(
            self.a11.clone() * p.x.clone() + self.a12.clone() * p.y.clone(),
            self.a21.clone() * p.x.clone() + self.a22.clone() * p.y.clone(),
        )
    }

    /// `self^m` by repeated squaring; `m = 0` gives the identity.
    pub fn pow(&self, mut m: u64) -> Self {
        let mut acc = Self::identity();
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            m >>= 1;
        }
        acc
    }
}

impl<T: Scalar> Mul for &Matrix2<T> {
    type Output = Matrix2<T>;

    fn mul(self, rhs: &Matrix2<T>) -> Matrix2<T> {
        let dot = |a: &T, b: &T, c: &T, d: &T| a.clone() * b.clone() + c.clone() * d.clone();
        Matrix2::new(
            dot(&self.a11, &rhs.a11, &self.a12, &rhs.a21),
            dot(&self.a11, &rhs.a12, &self.a12, &rhs.a22),
            dot(&self.a21, &rhs.a11, &self.a22, &rhs.a21),
            dot(&self.a21, &rhs.a12, &self.a22, &rhs.a22),
        )
    }
}

impl<T: Scalar> Mul for Matrix2<T> {
    type Output = Matrix2<T>;

    fn mul(self, rhs: Matrix2<T>) -> Matrix2<T> {
        &self * &rhs
    }
}
