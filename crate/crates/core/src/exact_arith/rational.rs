use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Builds the canonical reduced fraction `num/den` with `den > 0`.
pub fn rational_make(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    let den = den.into();
    if den.is_zero() {
        return Err(Error::invalid("zero denominator"));
    }
    Ok(Rational::new(num.into(), den))
}

/// `max(|numerator|, denominator)` of the reduced fraction.
pub fn height(q: &Rational) -> BigUint {
    let num = q.numer().magnitude();
    let den = q.denom().magnitude();
    if num > den {
        num.clone()
    } else {
        den.clone()
    }
}

/// Componentwise maximum height; the empty tuple has height 1.
pub fn tuple_height(qs: &[Rational]) -> BigUint {
    qs.iter().map(height).max().unwrap_or_else(BigUint::one)
}

/// The rational `r` with `r^k = q`, if any.
///
/// For even `k` the nonnegative root is returned and negative `q` has none.
/// `k = 0` has no meaningful root and yields `None`.
pub fn rational_kth_root(q: &Rational, k: u32) -> Option<Rational> {
    if k == 0 {
        return None;
    }
    if k.is_multiple_of(2) && q.is_negative() {
        return None;
    }
    let num = exact_root(q.numer(), k)?;
    let den = exact_root(q.denom(), k)?;
    Some(Rational::new(num, den))
}

fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    // BigInt::nth_root keeps the sign for odd k.
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Every reduced fraction `a/b` with `max(|a|, b) ≤ h`, ordered by height
/// and, within one height, by value.
pub fn reduced_fractions(h: u64) -> Vec<Rational> {
    let mut out = Vec::new();
    for t in 1..=h {
        let mut level = Vec::new();
        // denominator exactly t, |a| ≤ t
        for a in 0..=t {
            if num_integer::gcd(a, t) == 1 {
                level.push((a as i128, t));
                if a != 0 {
                    level.push((-(a as i128), t));
                }
            }
        }
        // |numerator| exactly t, denominator below t
        for b in 1..t {
            if num_integer::gcd(t, b) == 1 {
                level.push((t as i128, b));
                level.push((-(t as i128), b));
            }
        }
        let mut level: Vec<Rational> = level
            .into_iter()
            .map(|(a, b)| Rational::new(BigInt::from(a), BigInt::from(b)))
            .collect();
        level.sort();
        out.extend(level);
    }
    out
}

/// Whether `q ∈ {0, 1, −1}`.
pub fn is_trivial_component(q: &Rational) -> bool {
    q.is_zero() || q.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        rational_make(n, d).unwrap()
    }

    #[test]
    fn make_reduces_and_normalizes_sign() {
        let r = q(6, -4);
        assert_eq!((r.numer().clone(), r.denom().clone()), (BigInt::from(-3), BigInt::from(2)));
        let z = q(0, 7);
        assert_eq!((z.numer().clone(), z.denom().clone()), (BigInt::from(0), BigInt::from(1)));
        assert_eq!(q(25, 5), Rational::from_integer(5.into()));
    }

    #[test]
    fn make_rejects_zero_denominator() {
        assert!(matches!(rational_make(1, 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn heights() {
        assert_eq!(height(&q(3, 5)), BigUint::from(5u32));
        assert_eq!(tuple_height(&[q(-7, 25), q(24, 25)]), BigUint::from(25u32));
        assert_eq!(height(&Rational::zero()), BigUint::one());
        assert_eq!(height(&q(-9, 4)), BigUint::from(9u32));
    }

    #[test]
    fn kth_roots() {
        assert_eq!(rational_kth_root(&q(8, 27), 3), Some(q(2, 3)));
        assert_eq!(rational_kth_root(&q(2, 1), 2), None);
        assert_eq!(rational_kth_root(&q(-8, 27), 3), Some(q(-2, 3)));
        assert_eq!(rational_kth_root(&q(-4, 9), 2), None);
        assert_eq!(rational_kth_root(&q(16, 81), 4), Some(q(2, 3)));
        assert_eq!(rational_kth_root(&q(0, 1), 5), Some(q(0, 1)));
        assert_eq!(rational_kth_root(&q(9, 8), 2), None);
    }

    #[test]
    fn fractions_of_small_height() {
        let f1 = reduced_fractions(1);
        assert_eq!(f1, vec![q(-1, 1), q(0, 1), q(1, 1)]);
        let f2 = reduced_fractions(2);
        // height 2 adds ±1/2 and ±2
        assert_eq!(f2.len(), 7);
        for r in &f2 {
            assert!(height(r) <= BigUint::from(2u32));
        }
    }

    #[test]
    fn fractions_match_brute_force_count() {
        for h in 1..=12i64 {
            let mut brute = std::collections::BTreeSet::new();
            for a in -h..=h {
                for b in 1..=h {
                    brute.insert(q(a, b));
                }
            }
            let got = reduced_fractions(h as u64);
            assert_eq!(got.len(), brute.len(), "h = {h}");
            let set: std::collections::BTreeSet<_> = got.into_iter().collect();
            assert_eq!(set, brute);
        }
    }
}
