//! Bounded-height searches for rational points on `x₁^k + … + x_n^k = 1`.
//!
//! Every search is exhaustive within its height bound: all reduced
//! fractions `a/b` with `max(|a|, b) ≤ H` are scanned for the free
//! coordinates, and the last coordinate is closed off by exact rational
//! k-th root extraction. Results are sorted lexicographically so reports
//! are reproducible regardless of scan parallelism.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circle::{circle_act, circle_solve_delta};
use crate::error::{Error, Result};
use crate::exact_arith::projective::Projective;
pub use crate::exact_arith::rational::rational_kth_root;
use crate::exact_arith::rational::{height, is_trivial_component, reduced_fractions};
use crate::exact_arith::text;
use crate::point::Point2;
use crate::Rational;

/// Default cap on the number of leaf evaluations in [`search_n`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub k: u32,
    pub n: usize,
    pub height: u64,
    #[serde(with = "text::rational_rows")]
    pub solutions: Vec<Vec<Rational>>,
    pub trivial_count: usize,
    pub nontrivial_count: usize,
    /// Wall-clock time; kept out of serialized payloads.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchReport {
    fn new(k: u32, n: usize, h: u64, mut solutions: Vec<Vec<Rational>>, started: Instant) -> Self {
        solutions.sort();
        solutions.dedup();
        let trivial_count = solutions.iter().filter(|s| is_trivial(s)).count();
        SearchReport {
            k,
            n,
            height: h,
            nontrivial_count: solutions.len() - trivial_count,
            trivial_count,
            solutions,
            elapsed: started.elapsed(),
        }
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &Vec<Rational>> {
        self.solutions.iter().filter(|s| !is_trivial(s))
    }
}

/// Every component in `{0, 1, −1}`.
pub fn is_trivial(tuple: &[Rational]) -> bool {
    tuple.iter().all(is_trivial_component)
}

/// `Σ x_i^k`.
pub fn power_sum(tuple: &[Rational], k: u32) -> Rational {
    tuple
        .iter()
        .map(|x| num_traits::pow(x.clone(), k as usize))
        .fold(Rational::zero(), |a, b| a + b)
}

/// Roots `y` of `y^k = rhs` with `height(y) ≤ bound`.
fn last_coordinates(rhs: &Rational, k: u32, bound: &BigUint) -> Vec<Rational> {
    let Some(r) = rational_kth_root(rhs, k) else {
        return Vec::new();
    };
    if &height(&r) > bound {
        return Vec::new();
    }
    if k.is_multiple_of(2) && !r.is_zero() {
        vec![-r.clone(), r]
    } else {
        vec![r]
    }
}

fn check_args(k: u32, h: u64) -> Result<()> {
    if k < 2 {
        return Err(Error::invalid(format!("exponent k must be at least 2, got {k}")));
    }
    if h < 1 {
        return Err(Error::invalid("height bound must be at least 1"));
    }
    Ok(())
}

/// All `(x, y) ∈ Q²` with `x^k + y^k = 1` and both heights at most `h`.
pub fn search_solutions(k: u32, h: u64) -> Result<SearchReport> {
    check_args(k, h)?;
    let started = Instant::now();
    let bound = BigUint::from(h);
    let one = Rational::one();
    let solutions: Vec<Vec<Rational>> = reduced_fractions(h)
        .into_par_iter()
        .flat_map_iter(|x| {
            let rhs = &one - num_traits::pow(x.clone(), k as usize);
            last_coordinates(&rhs, k, &bound)
                .into_iter()
                .map(move |y| vec![x.clone(), y])
        })
        .collect();
    let report = SearchReport::new(k, 2, h, solutions, started);
    verify(&report)?;
    Ok(report)
}

/// All rational `n`-tuples of height at most `h` with `Σ x_i^k = 1`.
///
/// The first `n − 1` coordinates range over all fractions of height `≤ h`;
/// `budget` caps the number of such prefixes.
pub fn search_n(k: u32, n: usize, h: u64, budget: u64) -> Result<SearchReport> {
    check_args(k, h)?;
    if n < 2 {
        return Err(Error::invalid(format!("tuple length n must be at least 2, got {n}")));
    }
    let started = Instant::now();
    let fractions = reduced_fractions(h);
    let leaves = (fractions.len() as u128).checked_pow((n - 1) as u32);
    match leaves {
        Some(l) if l <= u128::from(budget) => {}
        Some(l) => return Err(Error::limit(format!("search of {n}-tuples at height {h}"), l, budget)),
        None => {
            return Err(Error::limit(
                format!("search of {n}-tuples at height {h}"),
                "more than 2^128",
                budget,
            ))
        }
    }
    let powers: Vec<Rational> = fractions
        .iter()
        .map(|x| num_traits::pow(x.clone(), k as usize))
        .collect();
    let bound = BigUint::from(h);
    let solutions: Vec<Vec<Rational>> = (0..fractions.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut found = Vec::new();
            let mut prefix = vec![i];
            let sum = powers[i].clone();
            extend(&fractions, &powers, k, n, &bound, &mut prefix, sum, &mut found);
            found
        })
        .collect();
    let report = SearchReport::new(k, n, h, solutions, started);
    verify(&report)?;
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    fractions: &[Rational],
    powers: &[Rational],
    k: u32,
    n: usize,
    bound: &BigUint,
    prefix: &mut Vec<usize>,
    sum: Rational,
    found: &mut Vec<Vec<Rational>>,
) {
    if prefix.len() == n - 1 {
        let rhs = Rational::one() - sum;
        for last in last_coordinates(&rhs, k, bound) {
            let mut tuple: Vec<Rational> = prefix.iter().map(|&i| fractions[i].clone()).collect();
            tuple.push(last);
            found.push(tuple);
        }
        return;
    }
    for (i, p) in powers.iter().enumerate() {
        prefix.push(i);
        extend(fractions, powers, k, n, bound, prefix, &sum + p, found);
        prefix.pop();
    }
}

fn verify(report: &SearchReport) -> Result<()> {
    let one = Rational::one();
    match report.solutions.iter().find(|s| power_sum(s, report.k) != one) {
        Some(bad) => Err(Error::Verification(format!("{bad:?} does not satisfy the equation"))),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageEntry {
    pub point: Point2<Rational>,
    /// `Δ` with `L(Δ)·(1,0) = point`.
    pub delta: Projective<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub height: u64,
    pub total: usize,
    pub covered: usize,
    #[serde(with = "text::rational")]
    pub fraction: Rational,
    pub entries: Vec<CoverageEntry>,
    /// Solutions the orbit of `(1, 0)` failed to reach.
    pub witnesses: Vec<Point2<Rational>>,
}

/// Checks that every rational point of `x² + y² = 1` up to height `h` lies
/// on the orbit of `(1, 0)`.
pub fn verify_orbit_coverage(h: u64) -> Result<CoverageReport> {
    let search = search_solutions(2, h)?;
    let base = Point2::unit();
    let mut entries = Vec::new();
    let mut witnesses = Vec::new();
    for s in &search.solutions {
        let p = Point2::new(s[0].clone(), s[1].clone());
        let reached = circle_solve_delta(&base, &p)
            .ok()
            .filter(|e| circle_act(e, &base).is_ok_and(|img| img == p));
        match reached {
            Some(e) => entries.push(CoverageEntry { point: p, delta: e.delta }),
            None => witnesses.push(p),
        }
    }
    let total = search.solutions.len();
    Ok(CoverageReport {
        height: h,
        total,
        covered: entries.len(),
        fraction: Rational::new(entries.len().into(), total.max(1).into()),
        entries,
        witnesses,
    })
}

/// An explicit rational solution of `x₁^k + x₂^k + x₃^k = 1` built from
/// `x₁` by cancellation, for odd `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub k: u32,
    #[serde(with = "text::rational_seq")]
    pub tuple: Vec<Rational>,
    #[serde(with = "text::rational")]
    pub power_sum: Rational,
    pub verified: bool,
    pub nontrivial: bool,
    /// Whether every entry is a natural number. The cancellation witness
    /// always has a negative entry, so it refutes the statement over the
    /// rationals but not a natural-number reading.
    pub all_natural: bool,
    pub reading: String,
}

pub fn n_counterexample(k: u32, x1: &Rational) -> Result<Counterexample> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "the cancellation witness needs odd k ≥ 3, got {k}"
        )));
    }
    let tuple = vec![x1.clone(), -x1.clone(), Rational::one()];
    let sum = power_sum(&tuple, k);
    if !sum.is_one() {
        return Err(Error::Verification(format!("power sum is {sum}, not 1")));
    }
    let all_natural = tuple.iter().all(|x| x.is_integer() && !x.is_negative());
    Ok(Counterexample {
        k,
        nontrivial: !is_trivial(&tuple),
        all_natural,
        reading: if all_natural {
            "natural-number solution".to_string()
        } else {
            "rational solution with a negative entry; does not address a natural-number reading"
                .to_string()
        },
        power_sum: sum,
        verified: true,
        tuple,
    })
}
