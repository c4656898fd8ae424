//! The finite groups `O_k(n) = {ω^l δ_{i,σ(j)} : l ∈ Z_k^n, σ ∈ S_n}`
//! (`k ≥ 3`) of linear maps preserving `x₁^k + … + x_n^k`, their orbits on
//! cyclotomic vectors, and their rational elements.
//!
//! `|O_k(n)| = k^n · n!`. Enumeration is capped (default
//! [`DEFAULT_ENUMERATION_LIMIT`]) and fails loudly past the cap instead of
//! truncating.

mod monomial;
mod perm;

use std::collections::BTreeSet;

use serde::Serialize;

pub use monomial::{
    form_value, mono_act, mono_inverse, mono_mul, CyclotomicVector, MonomialMatrix, MonomialRecord,
};
pub use perm::Permutation;

use crate::error::{Error, Result};
use crate::exact_arith::cyclotomic::{cyc_is_rational, Cyclotomic, CyclotomicField};
use crate::point::Point2;
use crate::scalar::Scalar;
use crate::Rational;

pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1_000_000;

fn check_k(k: u32) -> Result<()> {
    if k < 3 {
        Err(Error::invalid(format!(
            "k-Fermat groups are defined for k ≥ 3 (k = 2 is the circle group), got {k}"
        )))
    } else {
        Ok(())
    }
}

/// `k^n · n!`, or `None` on overflow.
pub fn group_order(k: u32, n: usize) -> Result<Option<u128>> {
    check_k(k)?;
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let mut order: u128 = 1;
    for i in 1..=n {
        order = match order
            .checked_mul(u128::from(k))
            .and_then(|o| o.checked_mul(i as u128))
        {
            Some(o) => o,
            None => return Ok(None),
        };
    }
    Ok(Some(order))
}

fn checked_order(k: u32, n: usize, limit: u64) -> Result<u64> {
    match group_order(k, n)? {
        Some(order) if order <= u128::from(limit) => Ok(order as u64),
        Some(order) => Err(Error::limit(format!("O_{k}({n}) enumeration"), order, limit)),
        None => Err(Error::limit(format!("O_{k}({n}) enumeration"), "more than 2^128", limit)),
    }
}

/// Every element of `O_k(n)`: permutations in lexicographic order, and for
/// each, exponent vectors in lexicographic order.
pub fn group_enumerate(k: u32, n: usize, limit: u64) -> Result<Vec<MonomialMatrix>> {
    let order = checked_order(k, n, limit)?;
    let mut out = Vec::with_capacity(order as usize);
    for perm in Permutation::all(n) {
        let mut exps = vec![0i64; n];
        loop {
            out.push(MonomialMatrix::new(k, perm.clone(), exps.clone())?);
            // odometer increment, last digit fastest
            let Some(pos) = (0..n).rev().find(|&i| exps[i] + 1 < i64::from(k)) else {
                break;
            };
            exps[pos] += 1;
            exps[pos + 1..].iter_mut().for_each(|e| *e = 0);
        }
    }
    debug_assert_eq!(out.len() as u64, order);
    Ok(out)
}

/// Orbit of a vector under the whole group, with the stabilizer order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "CyclotomicVector<T>: Serialize"))]
pub struct OrbitReport<T> {
    pub k: u32,
    pub n: usize,
    pub group_order: u64,
    pub stabilizer_order: u64,
    pub orbit_size: u64,
    /// Canonical forms, sorted and deduplicated.
    pub points: Vec<CyclotomicVector<T>>,
}

pub fn orbit<T: Scalar + Ord>(v: &CyclotomicVector<T>, k: u32, limit: u64) -> Result<OrbitReport<T>> {
    check_k(k)?;
    if v.order() != k {
        return Err(Error::invalid(format!(
            "vector lives in Q(ω_{}), group acts over Q(ω_{k})",
            v.order()
        )));
    }
    let n = v.len();
    let elements = group_enumerate(k, n, limit)?;
    let mut points = BTreeSet::new();
    let mut stabilizer = 0u64;
    for m in &elements {
        let image = m.act(v)?;
        if &image == v {
            stabilizer += 1;
        }
        points.insert(image);
    }
    let points: Vec<_> = points.into_iter().collect();
    let report = OrbitReport {
        k,
        n,
        group_order: elements.len() as u64,
        stabilizer_order: stabilizer,
        orbit_size: points.len() as u64,
        points,
    };
    if report.orbit_size * report.stabilizer_order != report.group_order {
        return Err(Error::Verification(format!(
            "|orbit| {} · |stab| {} ≠ |G| {}",
            report.orbit_size, report.stabilizer_order, report.group_order
        )));
    }
    Ok(report)
}

/// The elements of `O_k(n)` whose entries are all rational, with a check
/// that they form a subgroup.
///
/// "Rationally parametrized subgroup" is read here as "subgroup of all
/// elements with rational entries", the only computable reading available.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalSubgroupReport {
    pub k: u32,
    pub n: usize,
    pub reading: &'static str,
    /// Exponents `l` for which `ω^l` is rational.
    pub rational_exponents: Vec<u32>,
    pub order: u64,
    /// `n!`, the order of the permutation-matrix subgroup.
    pub permutation_subgroup_order: u64,
    pub closed_under_product: bool,
    pub closed_under_inverse: bool,
    pub equals_permutation_subgroup: bool,
    pub elements: Vec<MonomialMatrix>,
}

pub fn rational_elements(k: u32, n: usize, limit: u64) -> Result<RationalSubgroupReport> {
    let field = CyclotomicField::new(k)?;
    let elements = group_enumerate(k, n, limit)?;
    let rational_exponents: Vec<u32> = (0..k)
        .filter(|&l| cyc_is_rational(&Cyclotomic::<Rational>::omega_pow(&field, i64::from(l))).is_some())
        .collect();
    let rational: Vec<MonomialMatrix> = elements
        .into_iter()
        .filter(|m| m.exponents().iter().all(|l| rational_exponents.contains(l)))
        .collect();
    let set: BTreeSet<&MonomialMatrix> = rational.iter().collect();
    let closed_under_product = rational
        .iter()
        .all(|a| rational.iter().all(|b| a.mul(b).is_ok_and(|p| set.contains(&p))));
    let closed_under_inverse = rational.iter().all(|a| set.contains(&a.inverse()));
    let permutation_subgroup_order = (1..=n as u64).product();
    let equals_permutation_subgroup = rational.len() as u64 == permutation_subgroup_order
        && rational.iter().all(|m| m.exponents().iter().all(|&l| l == 0));
    Ok(RationalSubgroupReport {
        k,
        n,
        reading: "elements all of whose matrix entries are rational",
        rational_exponents,
        order: rational.len() as u64,
        permutation_subgroup_order,
        closed_under_product,
        closed_under_inverse,
        equals_permutation_subgroup,
        elements: rational,
    })
}

/// Points of the orbit of `(1, 0)` under `O_k(2)` with both coordinates
/// rational.
pub fn orbit_rational_points(k: u32, limit: u64) -> Result<Vec<Point2<Rational>>> {
    let field = CyclotomicField::new(k)?;
    let base = CyclotomicVector::from_scalars(&field, vec![Rational::from_integer(1.into()), Rational::from_integer(0.into())]);
    let report = orbit(&base, k, limit)?;
    let mut out: Vec<Point2<Rational>> = report
        .points
        .iter()
        .filter_map(CyclotomicVector::as_scalars)
        .map(|xs| Point2::new(xs[0].clone(), xs[1].clone()))
        .collect();
    out.sort();
    Ok(out)
}
