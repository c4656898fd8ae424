//! Exact iteration `p ↦ L(Δ)·p` of a fixed rational rotation.
//!
//! Points are produced by stepwise exact matrix action, so every point of a
//! trajectory is bit-exact. Powers of the parameter itself are folded in
//! homogeneous coordinates `(num : den)`, where the composition law
//! `(a:b) ⊞ (c:d) = (ad + bc : bd − ac)` is polynomial and needs no
//! gcd per step; that keeps long period scans cheap.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::ser::Serializer;
use serde::Serialize;

use crate::circle::{circle_to_matrix, CircleElement};
use crate::error::{Error, Result};
use crate::exact_arith::projective::Projective;
use crate::exact_arith::text;
use crate::point::Point2;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trajectory {
    pub delta: Projective<Rational>,
    pub start: Point2<Rational>,
    /// `points[i] = L(Δ)^{i+1} · start`.
    pub points: Vec<Point2<Rational>>,
    #[serde(serialize_with = "decimal_seq")]
    pub heights: Vec<BigUint>,
    /// Smallest `m ≥ 1` with `L(Δ)^m · start = start`, if seen.
    pub period: Option<usize>,
}

fn decimal_seq<S: Serializer>(xs: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
}

pub fn iterate(delta: &Projective<Rational>, start: &Point2<Rational>, steps: usize) -> Result<Trajectory> {
    if !start.on_circle() {
        return Err(Error::invalid(format!("start {start} is not on x² + y² = 1")));
    }
    let m = circle_to_matrix(&CircleElement::rotation(delta.clone()));
    let mut points = Vec::with_capacity(steps);
    let mut heights = Vec::with_capacity(steps);
    let mut period = None;
    let mut cur = start.clone();
    for i in 1..=steps {
        cur = m.apply(&cur);
        if period.is_none() && &cur == start {
            period = Some(i);
        }
        heights.push(cur.height());
        points.push(cur.clone());
    }
    Ok(Trajectory {
        delta: delta.clone(),
        start: start.clone(),
        points,
        heights,
        period,
    })
}

/// `Δ` in homogeneous coordinates; `den = 0` is `∞`.
#[derive(Clone, Debug)]
struct HalfAngle {
    num: BigInt,
    den: BigInt,
}

impl HalfAngle {
    fn new(d: &Projective<Rational>) -> Self {
        match d {
            Projective::Finite(q) => HalfAngle {
                num: q.numer().clone(),
                den: q.denom().clone(),
            },
            Projective::Infinity => HalfAngle {
                num: BigInt::from(1),
                den: BigInt::zero(),
            },
        }
    }

    fn compose(&self, other: &Self) -> Self {
        HalfAngle {
            num: &self.num * &other.den + &other.num * &self.den,
            den: &self.den * &other.den - &self.num * &other.num,
        }
    }

    fn is_identity(&self) -> bool {
        self.num.is_zero()
    }

    fn to_projective(&self) -> Projective<Rational> {
        if self.den.is_zero() {
            Projective::Infinity
        } else {
            Projective::Finite(Rational::new(self.num.clone(), self.den.clone()))
        }
    }
}

/// `Δ_m` with `L(Δ)^m = L(Δ_m)`; `m = 0` gives `0`.
pub fn power_parameter(delta: &Projective<Rational>, m: u64) -> Projective<Rational> {
    if m == 0 {
        return Projective::zero();
    }
    let step = HalfAngle::new(delta);
    let mut acc = step.clone();
    for _ in 1..m {
        acc = acc.compose(&step);
    }
    acc.to_projective()
}

/// Least `m ≤ n` with `L(Δ)^m = 1`.
pub fn period_check(delta: &Projective<Rational>, n: u64) -> Option<u64> {
    let step = HalfAngle::new(delta);
    let mut acc = step.clone();
    for m in 1..=n {
        if acc.is_identity() {
            return Some(m);
        }
        acc = acc.compose(&step);
    }
    None
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    #[serde(serialize_with = "decimal_seq")]
    pub heights: Vec<BigUint>,
    /// `heights[i+1] / heights[i]`.
    #[serde(with = "text::rational_seq")]
    pub ratios: Vec<Rational>,
    pub periodic: bool,
    /// Least-squares slope of `ln(height)` against the step index over the
    /// aperiodic part; zero for finite orbits.
    #[serde(serialize_with = "fixed_decimal")]
    pub log_height_slope: f64,
    pub strictly_increasing: bool,
}

fn fixed_decimal<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{x:.9}"))
}

fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn height_profile(t: &Trajectory) -> Result<GrowthReport> {
    if t.heights.is_empty() {
        return Err(Error::invalid("empty trajectory"));
    }
    let ratios = t
        .heights
        .windows(2)
        .map(|w| Rational::new(BigInt::from(w[1].clone()), BigInt::from(w[0].clone())))
        .collect();
    let periodic = t.period.is_some();
    let log_height_slope = if periodic {
        0.0
    } else {
        least_squares_slope(&t.heights.iter().map(ln_biguint).collect::<Vec<_>>())
    };
    Ok(GrowthReport {
        heights: t.heights.clone(),
        ratios,
        periodic,
        log_height_slope,
        strictly_increasing: t.heights.windows(2).all(|w| w[0] < w[1]),
    })
}

fn least_squares_slope(ys: &[f64]) -> f64 {
    let n = ys.len() as f64;
    if ys.len() < 2 {
        return 0.0;
    }
    let mean_x = (n - 1.0) / 2.0;
    let mean_y = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (i, y) in ys.iter().enumerate() {
        let dx = i as f64 - mean_x;
        sxy += dx * (y - mean_y);
        sxx += dx * dx;
    }
    sxy / sxx
}
