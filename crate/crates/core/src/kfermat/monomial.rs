use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::exact_arith::cyclotomic::{Cyclotomic, CyclotomicField};
use crate::scalar::Scalar;
use crate::Rational;

/// An element `ω^{l_i} δ_{σ(i), j}` of the k-Fermat group: row `i` has its
/// single nonzero entry `ω^{l_i}` in column `σ(i)`.
///
/// The group law is integer arithmetic on `(σ, l)`; no dense matrix is
/// ever formed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialMatrix {
    k: u32,
    perm: Permutation,
    exponents: Vec<u32>,
}

impl MonomialMatrix {
    pub fn new(k: u32, perm: Permutation, exponents: Vec<i64>) -> Result<Self> {
        if k < 3 {
            return Err(Error::invalid(format!("k-Fermat groups need k ≥ 3, got {k}")));
        }
        if perm.len() != exponents.len() {
            return Err(Error::invalid(format!(
                "permutation of {} indices with {} exponents",
                perm.len(),
                exponents.len()
            )));
        }
        let exponents = exponents
            .into_iter()
            .map(|l| l.rem_euclid(i64::from(k)) as u32)
            .collect();
        Ok(MonomialMatrix { k, perm, exponents })
    }

    pub fn identity(k: u32, n: usize) -> Result<Self> {
        Self::new(k, Permutation::identity(n), vec![0; n])
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Exponent of the `(i, j)` entry, or `None` where the entry is zero.
    pub fn entry_exponent(&self, i: usize, j: usize) -> Option<u32> {
        (self.perm.apply(i) == j).then(|| self.exponents[i])
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.exponents.iter().all(|&l| l == 0)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.k != other.k || self.n() != other.n() {
            return Err(Error::invalid(format!(
                "monomial matrices of (k, n) = ({}, {}) and ({}, {})",
                self.k,
                self.n(),
                other.k,
                other.n()
            )));
        }
        Ok(())
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let exponents = (0..self.n())
            .map(|i| (self.exponents[i] + other.exponents[self.perm.apply(i)]) % self.k)
            .collect();
        Ok(MonomialMatrix {
            k: self.k,
            perm: self.perm.then(&other.perm),
            exponents,
        })
    }

    pub fn inverse(&self) -> Self {
        let inv = self.perm.inverse();
        let exponents = (0..self.n())
            .map(|j| (self.k - self.exponents[inv.apply(j)]) % self.k)
            .collect();
        MonomialMatrix {
            k: self.k,
            perm: inv,
            exponents,
        }
    }

    /// `(M v)_i = ω^{l_i} v_{σ(i)}`.
    pub fn act<T: Scalar>(&self, v: &CyclotomicVector<T>) -> Result<CyclotomicVector<T>> {
        if v.order() != self.k || v.len() != self.n() {
            return Err(Error::invalid(format!(
                "cannot apply a (k, n) = ({}, {}) element to a vector of order {} and length {}",
                self.k,
                self.n(),
                v.order(),
                v.len()
            )));
        }
        let components = (0..self.n())
            .map(|i| v.components[self.perm.apply(i)].mul_omega_pow(i64::from(self.exponents[i])))
            .collect();
        Ok(CyclotomicVector {
            field: Arc::clone(&v.field),
            components,
        })
    }

    pub fn record(&self) -> MonomialRecord {
        MonomialRecord {
            perm: self.perm.images().to_vec(),
            exp: self.exponents.clone(),
        }
    }
}

pub fn mono_mul(a: &MonomialMatrix, b: &MonomialMatrix) -> Result<MonomialMatrix> {
    a.mul(b)
}

pub fn mono_inverse(a: &MonomialMatrix) -> MonomialMatrix {
    a.inverse()
}

pub fn mono_act<T: Scalar>(a: &MonomialMatrix, v: &CyclotomicVector<T>) -> Result<CyclotomicVector<T>> {
    a.act(v)
}

/// JSON form `{"perm": [...], "exp": [...]}`; `k` travels with the
/// surrounding payload.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialRecord {
    pub perm: Vec<usize>,
    pub exp: Vec<u32>,
}

impl MonomialRecord {
    pub fn into_matrix(self, k: u32) -> Result<MonomialMatrix> {
        let exp = self.exp.into_iter().map(i64::from).collect();
        MonomialMatrix::new(k, Permutation::new(self.perm)?, exp)
    }
}

impl Serialize for MonomialMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.record().serialize(s)
    }
}

/// A vector in `Q(ω_k)^n`; all components share one field.
#[derive(Clone, Debug)]
pub struct CyclotomicVector<T> {
    field: Arc<CyclotomicField>,
    components: Vec<Cyclotomic<T>>,
}

impl<T: Scalar> CyclotomicVector<T> {
    pub fn new(field: &Arc<CyclotomicField>, components: Vec<Cyclotomic<T>>) -> Result<Self> {
        if let Some(c) = components.iter().find(|c| c.order() != field.order()) {
            return Err(Error::invalid(format!(
                "component of order {} in a vector of order {}",
                c.order(),
                field.order()
            )));
        }
        Ok(CyclotomicVector {
            field: Arc::clone(field),
            components,
        })
    }

    pub fn from_scalars(field: &Arc<CyclotomicField>, values: Vec<T>) -> Self {
        CyclotomicVector {
            field: Arc::clone(field),
            components: values
                .into_iter()
                .map(|v| Cyclotomic::from_scalar(field, v))
                .collect(),
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[Cyclotomic<T>] {
        &self.components
    }

    /// Every component as a scalar, if all are rational.
    pub fn as_scalars(&self) -> Option<Vec<T>> {
        self.components.iter().map(Cyclotomic::as_scalar).collect()
    }
}

/// `Σ v_i^degree`, exact.
pub fn form_value<T: Scalar>(v: &CyclotomicVector<T>, degree: u32) -> Cyclotomic<T> {
    v.components.iter().fold(Cyclotomic::zero(&v.field), |acc, c| {
        acc.checked_add(&c.pow(degree)).expect("components share the field")
    })
}

impl<T: PartialEq> PartialEq for CyclotomicVector<T> {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components
    }
}

impl<T: Eq> Eq for CyclotomicVector<T> {}

impl<T: Ord> PartialOrd for CyclotomicVector<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Ord> Ord for CyclotomicVector<T> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.components.cmp(&other.components)
    }
}

impl std::hash::Hash for CyclotomicVector<Rational> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.components.hash(state);
    }
}

impl Serialize for CyclotomicVector<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.components.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicVector<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let components = Vec::<Cyclotomic<Rational>>::deserialize(d)?;
        let first = components
            .first()
            .ok_or_else(|| D::Error::custom("empty cyclotomic vector"))?;
        let field = Arc::clone(first.field());
        CyclotomicVector::new(&field, components).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn mm(k: u32, perm: &[usize], exp: &[i64]) -> MonomialMatrix {
        MonomialMatrix::new(k, Permutation::new(perm.to_vec()).unwrap(), exp.to_vec()).unwrap()
    }

    #[test]
    fn product_examples() {
        let a = mm(3, &[0, 1], &[1, 0]);
        let b = mm(3, &[1, 0], &[0, 2]);
        assert_eq!(mono_mul(&a, &b).unwrap(), mm(3, &[1, 0], &[1, 2]));
        let id = MonomialMatrix::identity(3, 2).unwrap();
        assert_eq!(mono_mul(&id, &a).unwrap(), a);
        assert!(mono_mul(&a, &a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn inverse_examples() {
        assert!(MonomialMatrix::identity(5, 3).unwrap().inverse().is_identity());
        assert_eq!(mono_inverse(&mm(3, &[0, 1], &[1, 2])), mm(3, &[0, 1], &[2, 1]));
        let s = mm(4, &[1, 0], &[1, 3]);
        assert_eq!(mono_inverse(&s), s);
    }

    #[test]
    fn construction_errors() {
        assert!(MonomialMatrix::identity(2, 2).is_err());
        assert!(MonomialMatrix::new(3, Permutation::identity(2), vec![0]).is_err());
        let a = MonomialMatrix::identity(3, 2).unwrap();
        let b = MonomialMatrix::identity(4, 2).unwrap();
        assert!(matches!(mono_mul(&a, &b), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn action_examples() {
        let f = CyclotomicField::new(3).unwrap();
        let w = |l| Cyclotomic::<Rational>::omega_pow(&f, l);
        let e10 = CyclotomicVector::from_scalars(&f, vec![q(1), q(0)]);
        let img = mono_act(&mm(3, &[1, 0], &[1, 0]), &e10).unwrap();
        assert_eq!(img, CyclotomicVector::from_scalars(&f, vec![q(0), q(1)]));

        let v = CyclotomicVector::from_scalars(&f, vec![q(2), q(3)]);
        let img = mono_act(&mm(3, &[0, 1], &[1, 2]), &v).unwrap();
        let expected = CyclotomicVector::new(&f, vec![w(1).scale(&q(2)), w(2).scale(&q(3))]).unwrap();
        assert_eq!(img, expected);
        assert_eq!(mono_act(&MonomialMatrix::identity(3, 2).unwrap(), &v).unwrap(), v);

        let wrong = CyclotomicVector::from_scalars(&CyclotomicField::new(4).unwrap(), vec![q(1), q(0)]);
        assert!(mono_act(&mm(3, &[0, 1], &[0, 0]), &wrong).is_err());
    }

    #[test]
    fn form_values() {
        let f = CyclotomicField::new(3).unwrap();
        let v = |a, b| CyclotomicVector::from_scalars(&f, vec![q(a), q(b)]);
        assert_eq!(form_value(&v(1, 0), 3), Cyclotomic::one(&f));
        assert_eq!(form_value(&v(2, 3), 3), Cyclotomic::from_scalar(&f, q(35)));
        let w0 = CyclotomicVector::new(&f, vec![Cyclotomic::<Rational>::omega_pow(&f, 1), Cyclotomic::zero(&f)]).unwrap();
        assert_eq!(form_value(&w0, 3), Cyclotomic::one(&f));
    }

    #[test]
    fn record_round_trip() {
        let a = mm(4, &[2, 0, 1], &[1, 3, 0]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"perm":[2,0,1],"exp":[1,3,0]}"#);
        let rec: MonomialRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(rec.into_matrix(4).unwrap(), a);
    }
}
