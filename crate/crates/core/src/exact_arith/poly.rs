use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer polynomial, lowest degree first, with no trailing zero
/// coefficients (the zero polynomial is the empty vector).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x^k − 1`.
    pub fn x_pow_minus_one(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[k] += 1;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder by a monic divisor (exact over Z).
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self)> {
        if !divisor.is_monic() {
            return Err(Error::invalid("polynomial division needs a monic divisor"));
        }
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let lead = rem[shift + dd].clone();
            if lead.is_zero() {
                continue;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &lead * c;
            }
            quot[shift] = lead;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; a nonzero remainder is an error.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem_monic(divisor)?;
        if !r.is_zero() {
            return Err(Error::Verification(format!("{self} is not divisible by {divisor}")));
        }
        Ok(q)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        Ok(())
    }
}

/// The k-th cyclotomic polynomial `Φ_k`, obtained by dividing `x^k − 1` by
/// `Φ_d` for every proper divisor `d` of `k`.
pub fn cyclotomic_polynomial(k: u32) -> Result<IntPolynomial> {
    if k == 0 {
        return Err(Error::invalid("cyclotomic order must be at least 1"));
    }
    let divisors: Vec<u32> = (1..=k).filter(|&d| k.is_multiple_of(d)).collect();
    let mut table: BTreeMap<u32, IntPolynomial> = BTreeMap::new();
    for &d in &divisors {
        let mut phi = IntPolynomial::x_pow_minus_one(d as usize);
        // table holds Φ_e for every divisor e < d so far
        for (_, pe) in table.iter().filter(|(&e, _)| d % e == 0) {
            phi = phi.div_exact(pe)?;
        }
        table.insert(d, phi);
    }
    Ok(table.remove(&k).expect("k divides itself"))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: expand Π (x − ζ) over primitive k-th roots ζ in
    /// complex floating point and round.
    fn cyclotomic_by_roots(k: u32) -> Vec<i64> {
        let mut re = vec![1.0f64];
        let mut im = vec![0.0f64];
        for j in 1..=k {
            if num_integer::gcd(j, k) != 1 {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * j as f64 / k as f64;
            let (zr, zi) = (theta.cos(), theta.sin());
            let mut nre = vec![0.0; re.len() + 1];
            let mut nim = vec![0.0; im.len() + 1];
            for i in 0..re.len() {
                nre[i + 1] += re[i];
                nim[i + 1] += im[i];
                nre[i] -= re[i] * zr - im[i] * zi;
                nim[i] -= re[i] * zi + im[i] * zr;
            }
            re = nre;
            im = nim;
        }
        for v in &im {
            assert!(v.abs() < 1e-6);
        }
        re.iter().map(|v| v.round() as i64).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4).unwrap(), IntPolynomial::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6).unwrap(), IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(6).unwrap().to_string(), "x^2 - x + 1");
        assert!(cyclotomic_polynomial(0).is_err());
    }

    #[test]
    fn matches_root_product_oracle() {
        for k in 1..=30 {
            let expected = IntPolynomial::from_i64(&cyclotomic_by_roots(k));
            assert_eq!(cyclotomic_polynomial(k).unwrap(), expected, "k = {k}");
        }
    }

    #[test]
    fn divisor_product_is_x_pow_k_minus_one() {
        for k in 1..=12u32 {
            let prod = (1..=k)
                .filter(|d| k % d == 0)
                .map(|d| cyclotomic_polynomial(d).unwrap())
                .fold(IntPolynomial::one(), |acc, p| acc.mul(&p));
            assert_eq!(prod, IntPolynomial::x_pow_minus_one(k as usize), "k = {k}");
        }
    }

    #[test]
    fn division_with_remainder() {
        let a = IntPolynomial::from_i64(&[1, 2, 3, 4]);
        let d = IntPolynomial::from_i64(&[1, 0, 1]);
        let (q, r) = a.div_rem_monic(&d).unwrap();
        assert_eq!(q.mul(&d).coeffs().len(), 4);
        let back = {
            let mut c = q.mul(&d).coeffs().to_vec();
            for (i, v) in r.coeffs().iter().enumerate() {
                c[i] += v;
            }
            IntPolynomial::new(c)
        };
        assert_eq!(back, a);
        assert!(a.div_exact(&d).is_err());
        assert!(a.div_rem_monic(&IntPolynomial::from_i64(&[1, 2])).is_err());
    }
}
