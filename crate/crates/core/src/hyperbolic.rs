//! The `(1,1)`-signature counterpart of [`crate::circle`], acting on
//! `x² − y² = 1`:
//!
//! ```text
//! L̃(Δ) = 1/(1−Δ²) · [[1+Δ², 2Δ], [2Δ, 1+Δ²]],   L̃(∞) = −1,   |Δ| ≠ 1
//! ```
//!
//! with parameter law `Δ = (Δ₁+Δ₂)/(1+Δ₁Δ₂)`. Elements with `|Δ| > 1`
//! swap the two branches of the hyperbola.

use serde::{Deserialize, Serialize};

use crate::circle::{Side, Verdict};
use crate::error::{Error, Result};
use crate::exact_arith::matrix::Matrix2;
use crate::exact_arith::projective::Projective;
use crate::exact_arith::rational::{rational_kth_root, reduced_fractions};
use crate::point::Point2;
use crate::scalar::Scalar;
use crate::Rational;

/// `L̃(Δ)` or `diag(1, −1)·L̃(Δ)`, with `Δ ∉ {1, −1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound(
    serialize = "Projective<T>: Serialize",
    deserialize = "Projective<T>: Deserialize<'de>"
))]
pub struct HyperbolicElement<T> {
    delta: Projective<T>,
    reflected: bool,
}

fn check_param<T: Scalar>(d: &Projective<T>) -> Result<()> {
    if d.is_unit_magnitude() {
        Err(Error::invalid(format!("hyperbolic parameter {d:?} has |Δ| = 1")))
    } else {
        Ok(())
    }
}

impl<T: Scalar> HyperbolicElement<T> {
    pub fn new(delta: Projective<T>, reflected: bool) -> Result<Self> {
        check_param(&delta)?;
        Ok(HyperbolicElement { delta, reflected })
    }

    pub fn rotation(delta: Projective<T>) -> Result<Self> {
        Self::new(delta, false)
    }

    pub fn identity() -> Self {
        HyperbolicElement {
            delta: Projective::zero(),
            reflected: false,
        }
    }

    pub fn delta(&self) -> &Projective<T> {
        &self.delta
    }

    pub fn reflected(&self) -> bool {
        self.reflected
    }

    /// Group product; conjugation by the reflection negates `Δ` as in the
    /// circle case.
    pub fn compose(&self, other: &Self) -> Self {
        let left = if other.reflected {
            self.delta.neg()
        } else {
            self.delta.clone()
        };
        let delta = hyper_compose(&left, &other.delta).expect("valid parameters are closed");
        HyperbolicElement {
            delta,
            reflected: self.reflected ^ other.reflected,
        }
    }

    pub fn inverse(&self) -> Self {
        if self.reflected {
            self.clone()
        } else {
            HyperbolicElement {
                delta: self.delta.neg(),
                reflected: false,
            }
        }
    }

    pub fn to_matrix(&self) -> Matrix2<T> {
        hyper_to_matrix(self)
    }

    pub fn act(&self, p: &Point2<T>) -> Result<Point2<T>> {
        hyper_act(self, p)
    }
}

/// Parameter of `L̃(Δ₁)·L̃(Δ₂)`.
pub fn hyper_compose<T: Scalar>(d1: &Projective<T>, d2: &Projective<T>) -> Result<Projective<T>> {
    check_param(d1)?;
    check_param(d2)?;
    Ok(match (d1, d2) {
        (Projective::Finite(a), Projective::Finite(b)) => {
            let den = T::one() + a.clone() * b.clone();
            if den.is_zero() {
                Projective::Infinity
            } else {
                Projective::Finite((a.clone() + b.clone()) / den)
            }
        }
        // −L̃(Δ) = L̃(1/Δ)
        (Projective::Infinity, Projective::Finite(v)) | (Projective::Finite(v), Projective::Infinity) => {
            Projective::Finite(v.clone()).recip()
        }
        (Projective::Infinity, Projective::Infinity) => Projective::zero(),
    })
}

pub fn hyper_to_matrix<T: Scalar>(e: &HyperbolicElement<T>) -> Matrix2<T> {
    let boost = match &e.delta {
        Projective::Infinity => Matrix2::identity().neg(),
        Projective::Finite(d) => {
            let d2 = d.clone() * d.clone();
            let two_d = d.clone() + d.clone();
            let c = T::one() + d2.clone();
            Matrix2::new(c.clone(), two_d.clone(), two_d, c).scale(&(T::one() / (T::one() - d2)))
        }
    };
    if e.reflected {
        &Matrix2::reflection() * &boost
    } else {
        boost
    }
}

pub fn hyper_act<T: Scalar>(e: &HyperbolicElement<T>, p: &Point2<T>) -> Result<Point2<T>> {
    if !p.on_hyperbola() {
        return Err(Error::invalid(format!("{p:?} is not on x² − y² = 1")));
    }
    Ok(hyper_to_matrix(e).apply(p))
}

/// `y/(x+1)`, the parameter with `L̃(Δ)·(1,0) = p`. On the hyperbola
/// `x = −1` forces `y = 0`; that point is `L̃(∞)·(1,0)`.
pub fn hyper_chart<T: Scalar>(p: &Point2<T>) -> Projective<T> {
    let den = p.x.clone() + T::one();
    if den.is_zero() {
        Projective::Infinity
    } else {
        Projective::Finite(p.y.clone() / den)
    }
}

/// `(x−1)/y`, the alternate chart, defined off the x-axis.
pub fn hyper_alternate_chart<T: Scalar>(p: &Point2<T>) -> Option<Projective<T>> {
    if p.y.is_zero() {
        None
    } else {
        Some(Projective::Finite((p.x.clone() - T::one()) / p.y.clone()))
    }
}

/// An element taking `p0` to `p`: `chart(p) ⊞ (−chart(p0))`, checked by
/// exact action.
pub fn hyper_solve_delta<T: Scalar>(p0: &Point2<T>, p: &Point2<T>) -> Result<HyperbolicElement<T>> {
    for q in [p0, p] {
        if !q.on_hyperbola() {
            return Err(Error::invalid(format!("{q:?} is not on x² − y² = 1")));
        }
    }
    let delta = hyper_compose(&hyper_chart(p), &hyper_chart(p0).neg())?;
    let e = HyperbolicElement::rotation(delta)?;
    let image = hyper_act(&e, p0)?;
    if !(image.x.same(&p.x) && image.y.same(&p.y)) {
        return Err(Error::Verification(format!(
            "Δ = {:?} maps {p0:?} to {image:?}, not {p:?}",
            e.delta
        )));
    }
    Ok(e)
}

/// The two printed sides of the hyperbolic transitivity identity:
///
/// * left  `(xy₀ − yx₀)/(x(x₀+x) + y(y₀+y))`
/// * right `(x₀y − xy₀ + y − y₀)/(x₀(x₀+x) − y₀(y₀+y) + x + x₀)`
///
/// Only the right side agrees with the solver in general; the left side
/// is kept verbatim so the discrepancy stays reproducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HDeltaAudit {
    pub from: Point2<Rational>,
    pub to: Point2<Rational>,
    pub left: Side,
    pub right: Side,
    pub verdict: Verdict,
    pub solver_delta: Projective<Rational>,
    pub left_matches_solver: bool,
    pub right_matches_solver: bool,
}

pub fn hdeltaxy_audit(p0: &Point2<Rational>, p: &Point2<Rational>) -> Result<HDeltaAudit> {
    let solver = hyper_solve_delta(p0, p)?;
    let (x0, y0, x, y) = (&p0.x, &p0.y, &p.x, &p.y);
    let left = Side::ratio(x * y0 - y * x0, x * (x0 + x) + y * (y0 + y));
    let right = Side::ratio(
        x0 * y - x * y0 + y - y0,
        x0 * (x0 + x) - y0 * (y0 + y) + x + x0,
    );
    let matches = |s: &Side| s.value() == Some(&solver.delta);
    Ok(HDeltaAudit {
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

/// All rational points of `x² − y² = 1` with both coordinates of height
/// at most `h`, sorted.
pub fn hyperbola_points(h: u64) -> Vec<Point2<Rational>> {
    let bound = num_bigint::BigUint::from(h);
    let mut out = Vec::new();
    for x in reduced_fractions(h) {
        let rhs = &x * &x - Rational::from_integer(1.into());
        if let Some(y) = rational_kth_root(&rhs, 2) {
            if crate::exact_arith::rational::height(&y) > bound {
                continue;
            }
            if !num_traits::Zero::is_zero(&y) {
                out.push(Point2::new(x.clone(), -y.clone()));
            }
            out.push(Point2::new(x, y));
        }
    }
    out.sort();
    out
}
