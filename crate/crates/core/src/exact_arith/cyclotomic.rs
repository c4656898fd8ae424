//! Exact arithmetic in `Q(ω_k)`, `ω_k = exp(2πi/k)`.
//!
//! Values are residues modulo `Φ_k` in the power basis
//! `{1, ω, …, ω^{φ(k)−1}}`. Products are first folded modulo `x^k − 1`
//! (which is exact, since `ω^k = 1`) and then mapped through a table of the
//! canonical residues of `ω^0 … ω^{k−1}`. Only Φ_k-reduced vectors ever leave
//! this module: `Z[x]/(x^k − 1)` is not a faithful model of the field, so
//! equality would be wrong on unreduced vectors.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::poly::{cyclotomic_polynomial, IntPolynomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

/// Precomputed data for one cyclotomic field.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: u32,
    modulus: IntPolynomial,
    /// `powers[j]` holds the canonical coefficients of `ω^j`, `0 ≤ j < k`.
    powers: Vec<Vec<i64>>,
}

impl CyclotomicField {
    pub fn new(order: u32) -> Result<Arc<Self>> {
        let modulus = cyclotomic_polynomial(order)?;
        let deg = modulus.degree().expect("Φ_k is nonzero");
        let phi: Vec<i64> = modulus
            .coeffs()
            .iter()
            .map(|c| c.to_i64())
            .collect::<Option<_>>()
            .ok_or_else(|| Error::invalid(format!("Φ_{order} has coefficients beyond i64")))?;

        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; deg];
        if deg > 0 {
            cur[0] = 1;
        }
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic modulus
            let carry = cur.last().copied().unwrap_or(0);
            let mut next = vec![0i64; deg];
            for i in (1..deg).rev() {
                next[i] = cur[i - 1];
            }
            for (i, slot) in next.iter_mut().enumerate() {
                *slot = slot
                    .checked_sub(carry.checked_mul(phi[i]).ok_or_else(overflow)?)
                    .ok_or_else(overflow)?;
            }
            cur = next;
        }
        Ok(Arc::new(CyclotomicField {
            order,
            modulus,
            powers,
        }))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `φ(k)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.powers.first().map_or(0, Vec::len)
    }

    pub fn modulus(&self) -> &IntPolynomial {
        &self.modulus
    }

    /// Canonical residue of `Σ_j c_j ω^j` for arbitrary `j`.
    fn reduce<T: Scalar>(&self, terms: impl IntoIterator<Item = (usize, T)>) -> Vec<T> {
        let k = self.order as usize;
        let mut folded: Vec<T> = vec![T::zero(); k];
        for (j, c) in terms {
            if !c.is_zero() {
                let slot = &mut folded[j % k];
                *slot = slot.clone() + c;
            }
        }
        let mut out = vec![T::zero(); self.degree()];
        for (j, c) in folded.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &w) in out.iter_mut().zip(&self.powers[j]) {
                match w {
                    0 => {}
                    1 => *slot = slot.clone() + c.clone(),
                    -1 => *slot = slot.clone() - c.clone(),
                    w => *slot = slot.clone() + c.clone() * T::from_i64(w).expect("small integer"),
                }
            }
        }
        out
    }
}

fn overflow() -> Error {
    Error::invalid("cyclotomic power table overflows i64")
}

/// An element of `Q(ω_k)` (or of `T(ω_k)` for another scalar field).
#[derive(Clone, Debug)]
pub struct Cyclotomic<T> {
    field: Arc<CyclotomicField>,
    coeffs: Vec<T>,
}

impl<T: Scalar> Cyclotomic<T> {
    /// Reduces an arbitrary-length coefficient vector in powers of `ω`.
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: Vec<T>) -> Self {
        let coeffs = field.reduce(coeffs.into_iter().enumerate());
        Cyclotomic {
            field: Arc::clone(field),
            coeffs,
        }
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Cyclotomic {
            field: Arc::clone(field),
            coeffs: vec![T::zero(); field.degree()],
        }
    }

    pub fn from_scalar(field: &Arc<CyclotomicField>, value: T) -> Self {
        Self::from_coeffs(field, vec![value])
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_scalar(field, T::one())
    }

    /// `ω^l`; negative exponents are taken mod k.
    pub fn omega_pow(field: &Arc<CyclotomicField>, l: i64) -> Self {
        let e = l.rem_euclid(field.order as i64) as usize;
        Cyclotomic {
            field: Arc::clone(field),
            coeffs: field.reduce([(e, T::one())]),
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "cyclotomic order mismatch: {} vs {}",
                self.order(),
                other.order()
            )))
        }
    }

    fn with_coeffs(&self, coeffs: Vec<T>) -> Self {
        Cyclotomic {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(self.with_coeffs(coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut terms = Vec::with_capacity(self.coeffs.len() * other.coeffs.len());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    terms.push((i + j, a.clone() * b.clone()));
                }
            }
        }
        Ok(self.with_coeffs(self.field.reduce(terms)))
    }

    pub fn scale(&self, s: &T) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Multiplication by `ω^l`, done as an exponent shift.
    pub fn mul_omega_pow(&self, l: i64) -> Self {
        let shift = l.rem_euclid(self.field.order as i64) as usize;
        if shift == 0 {
            return self.clone();
        }
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (i + shift, c.clone()));
        self.with_coeffs(self.field.reduce(terms))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base).expect("same field");
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base).expect("same field");
            }
        }
        acc
    }

    /// The value as a scalar, when every `ω^i` (`i ≥ 1`) coefficient vanishes.
    pub fn as_scalar(&self) -> Option<T> {
        let (c0, rest) = self.coeffs.split_first()?;
        rest.iter().all(Zero::is_zero).then(|| c0.clone())
    }
}

/// Field product; orders must agree.
pub fn cyc_mul<T: Scalar>(a: &Cyclotomic<T>, b: &Cyclotomic<T>) -> Result<Cyclotomic<T>> {
    a.checked_mul(b)
}

/// The rational value of `a`, or `None` if `a ∉ Q`.
pub fn cyc_is_rational<T: Scalar>(a: &Cyclotomic<T>) -> Option<T> {
    a.as_scalar()
}

impl<T: PartialEq> PartialEq for Cyclotomic<T> {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl<T: Eq> Eq for Cyclotomic<T> {}

impl<T: Hash> Hash for Cyclotomic<T> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl<T: Ord> PartialOrd for Cyclotomic<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Ord> Ord for Cyclotomic<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .order
            .cmp(&other.field.order)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for Cyclotomic<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use super::text::format_rational;
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format_rational(c),
                1 => format!("{}*w", format_rational(c)),
                _ => format!("{}*w^{i}", format_rational(c)),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0/1")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicText {
    k: u32,
    #[serde(with = "super::text::rational_seq")]
    coeffs: Vec<Rational>,
}

impl Serialize for Cyclotomic<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicText {
            k: self.order(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CyclotomicText::deserialize(d)?;
        let field = CyclotomicField::new(raw.k).map_err(de::Error::custom)?;
        Ok(Cyclotomic::from_coeffs(&field, raw.coeffs))
    }
}
