//! The rational orthogonal group of the unit circle.
//!
//! A rotation is stored by its half-angle parameter `Δ ∈ Q ∪ {∞}`:
//!
//! ```text
//! L(Δ) = 1/(1+Δ²) · [[1−Δ², −2Δ], [2Δ, 1−Δ²]],   L(∞) = −1
//! ```
//!
//! and the group law on parameters is `Δ = (Δ₁+Δ₂)/(1−Δ₁Δ₂)` with the
//! pole and `∞` cases resolved algebraically. Elements of the other coset
//! carry a reflection bit: `R·L(Δ)` with `R = diag(1, −1)`. Matrices are a
//! derived view; the parameter law is the source of truth.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::matrix::Matrix2;
use crate::exact_arith::projective::Projective;
use crate::point::Point2;
use crate::scalar::Scalar;
use crate::Rational;

/// `L(Δ)` or `R·L(Δ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound(
    serialize = "Projective<T>: Serialize",
    deserialize = "Projective<T>: Deserialize<'de>"
))]
pub struct CircleElement<T> {
    pub delta: Projective<T>,
    pub reflected: bool,
}

impl<T: Scalar> CircleElement<T> {
    pub fn rotation(delta: Projective<T>) -> Self {
        CircleElement {
            delta,
            reflected: false,
        }
    }

    pub fn reflection(delta: Projective<T>) -> Self {
        CircleElement {
            delta,
            reflected: true,
        }
    }

    pub fn identity() -> Self {
        Self::rotation(Projective::zero())
    }

    /// Group product `self · other`, using `R·L(Δ)·R = L(−Δ)` to move the
    /// reflection to the left.
    pub fn compose(&self, other: &Self) -> Self {
        let left = if other.reflected {
            self.delta.neg()
        } else {
            self.delta.clone()
        };
        CircleElement {
            delta: circle_compose(&left, &other.delta),
            reflected: self.reflected ^ other.reflected,
        }
    }

    /// Rotations invert by negating `Δ`; reflections are involutions.
    pub fn inverse(&self) -> Self {
        if self.reflected {
            self.clone()
        } else {
            Self::rotation(self.delta.neg())
        }
    }

    pub fn to_matrix(&self) -> Matrix2<T> {
        circle_to_matrix(self)
    }

    pub fn act(&self, p: &Point2<T>) -> Result<Point2<T>> {
        circle_act(self, p)
    }
}

/// Parameter of `L(Δ₁)·L(Δ₂)`. Total on `(Q ∪ {∞})²`.
pub fn circle_compose<T: Scalar>(d1: &Projective<T>, d2: &Projective<T>) -> Projective<T> {
    match (d1, d2) {
        (Projective::Finite(a), Projective::Finite(b)) => {
            let den = T::one() - a.clone() * b.clone();
            if den.is_zero() {
                Projective::Infinity
            } else {
                Projective::Finite((a.clone() + b.clone()) / den)
            }
        }
        // L(∞) = −1, and −L(Δ) = L(−1/Δ)
        (Projective::Infinity, Projective::Finite(v)) | (Projective::Finite(v), Projective::Infinity) => {
            Projective::Finite(v.clone()).recip().neg()
        }
        (Projective::Infinity, Projective::Infinity) => Projective::zero(),
    }
}

pub fn circle_to_matrix<T: Scalar>(e: &CircleElement<T>) -> Matrix2<T> {
    let rot = match &e.delta {
        Projective::Infinity => Matrix2::identity().neg(),
        Projective::Finite(d) => {
            let d2 = d.clone() * d.clone();
            let two_d = d.clone() + d.clone();
            let c = T::one() - d2.clone();
            Matrix2::new(c.clone(), -two_d.clone(), two_d, c).scale(&(T::one() / (T::one() + d2)))
        }
    };
    if e.reflected {
        &Matrix2::reflection() * &rot
    } else {
        rot
    }
}

/// Exact action on a point of `x² + y² = 1`.
pub fn circle_act<T: Scalar>(e: &CircleElement<T>, p: &Point2<T>) -> Result<Point2<T>> {
    if !p.on_circle() {
        return Err(Error::invalid(format!("{p:?} is not on x² + y² = 1")));
    }
    Ok(circle_to_matrix(e).apply(p))
}

/// Stereographic chart `y/(x+1)`, the parameter `Δ` with `L(Δ)·(1,0) = p`.
/// On the circle `x = −1` forces `y = 0`, which maps to `∞`.
pub fn chart<T: Scalar>(p: &Point2<T>) -> Projective<T> {
    let den = p.x.clone() + T::one();
    if den.is_zero() {
        Projective::Infinity
    } else {
        Projective::Finite(p.y.clone() / den)
    }
}

/// The half-angle chart `(1−x)/y`, defined off the x-axis. Agrees with
/// [`chart`] wherever both are defined on the circle.
pub fn alternate_chart<T: Scalar>(p: &Point2<T>) -> Option<Projective<T>> {
    if p.y.is_zero() {
        None
    } else {
        Some(Projective::Finite((T::one() - p.x.clone()) / p.y.clone()))
    }
}

/// A rotation taking `p0` to `p`, found as `L(chart(p))·L(−chart(p0))` and
/// checked by exact action before it is returned.
pub fn circle_solve_delta<T: Scalar>(p0: &Point2<T>, p: &Point2<T>) -> Result<CircleElement<T>> {
    for q in [p0, p] {
        if !q.on_circle() {
            return Err(Error::invalid(format!("{q:?} is not on x² + y² = 1")));
        }
    }
    let e = CircleElement::rotation(circle_compose(&chart(p), &chart(p0).neg()));
    let image = circle_act(&e, p0)?;
    if !(image.x.same(&p.x) && image.y.same(&p.y)) {
        return Err(Error::Verification(format!(
            "Δ = {:?} maps {p0:?} to {image:?}, not {p:?}",
            e.delta
        )));
    }
    Ok(e)
}

/// One side of an audited identity: a value on `Q ∪ {∞}` or `0/0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Value(Projective<Rational>),
    Undefined,
}

impl Side {
    pub fn ratio(num: Rational, den: Rational) -> Self {
        Projective::from_ratio(num, den).map_or(Side::Undefined, Side::Value)
    }

    pub fn value(&self) -> Option<&Projective<Rational>> {
        match self {
            Side::Value(v) => Some(v),
            Side::Undefined => None,
        }
    }
}

/// Outcome of comparing the two sides of an identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equal,
    Mismatch,
    /// At least one side is `0/0`; the pair lies in an excluded case.
    Excluded,
}

impl Verdict {
    pub fn compare(left: &Side, right: &Side) -> Self {
        match (left, right) {
            (Side::Value(a), Side::Value(b)) if a == b => Verdict::Equal,
            (Side::Value(_), Side::Value(_)) => Verdict::Mismatch,
            _ => Verdict::Excluded,
        }
    }
}

/// Both sides of
/// `(x₀y−xy₀)/(x₀(x₀+x)+y₀(y₀+y)) ≡ (x₀y−xy₀+y−y₀)/(x₀(x₀+x)+y₀(y₀+y)+x+x₀)`
/// evaluated exactly, with the solver's parameter for reference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExyAudit {
    pub from: Point2<Rational>,
    pub to: Point2<Rational>,
    pub left: Side,
    pub right: Side,
    pub verdict: Verdict,
    pub solver_delta: Projective<Rational>,
    pub left_matches_solver: bool,
    pub right_matches_solver: bool,
}

pub fn exy_audit(p0: &Point2<Rational>, p: &Point2<Rational>) -> Result<ExyAudit> {
    let solver = circle_solve_delta(p0, p)?;
    let (x0, y0, x, y) = (&p0.x, &p0.y, &p.x, &p.y);
    let cross = x0 * y - x * y0;
    let base = x0 * (x0 + x) + y0 * (y0 + y);
    let left = Side::ratio(cross.clone(), base.clone());
    let right = Side::ratio(cross + y - y0, base + x + x0);
    let matches = |s: &Side| s.value() == Some(&solver.delta);
    Ok(ExyAudit {
        from: p0.clone(),
        to: p.clone(),
        verdict: Verdict::compare(&left, &right),
        left_matches_solver: matches(&left),
        right_matches_solver: matches(&right),
        left,
        right,
        solver_delta: solver.delta,
    })
}

/// A primitive Pythagorean triple `(a, b, c)` with `a < b`.
pub type Triple = [u64; 3];

/// Primitive triples from every reduced `Δ = p/q`, `0 < p < q ≤ h`, i.e. the
/// images `L(p/q)·(1,0)` cleared of denominators. Sorted by hypotenuse, then
/// by the shorter leg.
pub fn triples_enumerate(h: u64) -> Result<Vec<Triple>> {
    if h > 1 << 31 {
        return Err(Error::invalid(format!("height {h} too large for u64 triples")));
    }
    let mut out = std::collections::BTreeSet::new();
    for q in 2..=h {
        for p in 1..q {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let (a, b, c) = (q * q - p * p, 2 * p * q, q * q + p * p);
            let g = num_integer::gcd(num_integer::gcd(a, b), c);
            let (a, b, c) = (a / g, b / g, c / g);
            out.insert((c, a.min(b), a.max(b)));
        }
    }
    Ok(out.into_iter().map(|(c, a, b)| [a, b, c]).collect())
}
