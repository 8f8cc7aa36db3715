//! Exact coefficient fields.
//!
//! A [`Field`] is a context object: elements are plain values and every
//! operation goes through the field, so a prime field can carry its modulus
//! at runtime. Two implementations are provided, [`PrimeField`] (word-sized
//! `F_p`) and [`Rationals`] (arbitrary precision).

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn characteristic(&self) -> u64;
    fn spec(&self) -> FieldSpec;
    /// Human readable form used by the polynomial printer.
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a - c * b`, the row-reduction kernel.
    fn sub_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(c, b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    /// `num / den` for a nonzero denominator not divisible by the characteristic.
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;

    /// Whether the element reads as a negative number (printer sign handling).
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }

    /// Refuse characteristic 2 for operations that divide by 2.
    fn require_odd_characteristic(&self) -> Result<()> {
        if self.characteristic() == 2 {
            Err(Error::CharacteristicTwo)
        } else {
            Ok(())
        }
    }
}

/// Serializable description of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldSpec {
    #[serde(alias = "prime", alias = "prime_field")]
    PrimeField { p: u64 },
    Rationals,
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::PrimeField { p } => *p,
            FieldSpec::Rationals => 0,
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::PrimeField { p: 101 }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::PrimeField { p } => write!(f, "F_{p}"),
            FieldSpec::Rationals => write!(f, "QQ"),
        }
    }
}

/// `Z/p` with `p < 2^32`, elements stored reduced in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((n % &p) + &p) % &p;
        u64::try_from(r).expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }

    #[inline]
    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        // Fermat: a^(p-2)
        let mut base = *a;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField { p: self.p }
    }

    fn format(&self, a: &u64) -> String {
        // print the symmetric representative so that p-1 reads as -1
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }

    #[inline]
    fn sub_mul(&self, a: &u64, c: &u64, b: &u64) -> u64 {
        let t = c * b % self.p;
        self.sub(a, &t)
    }

    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<u64> {
        let d = self.reduce_big(den);
        if d == 0 {
            return Err(Error::Parse {
                offset: 0,
                message: format!("denominator {den} vanishes in F_{}", self.p),
            });
        }
        Ok(self.div(&self.reduce_big(num), &d))
    }

    fn is_negative(&self, a: &u64) -> bool {
        *a > self.p / 2
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in QQ");
        a.recip()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::Parse {
                offset: 0,
                message: "zero denominator".into(),
            });
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }

    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert_eq!(PrimeField::new(100), Err(Error::NotPrime(100)));
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(101).is_ok());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }

    #[test]
    fn char_two_guard() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(f2.require_odd_characteristic(), Err(Error::CharacteristicTwo));
        assert!(Rationals.require_odd_characteristic().is_ok());
    }

    #[test]
    fn field_spec_json() {
        let s: FieldSpec = serde_json::from_str(r#"{"kind":"prime","p":7}"#).unwrap();
        assert_eq!(s, FieldSpec::PrimeField { p: 7 });
        let s: FieldSpec = serde_json::from_str(r#"{"kind":"rationals"}"#).unwrap();
        assert_eq!(s, FieldSpec::Rationals);
        assert_eq!(
            serde_json::to_string(&FieldSpec::PrimeField { p: 101 }).unwrap(),
            r#"{"kind":"prime-field","p":101}"#
        );
    }

    #[test]
    fn fractions() {
        let f = PrimeField::new(7).unwrap();
        let half = f.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(f.mul(&half, &2), 1);
        assert!(f.from_fraction(&BigInt::from(1), &BigInt::from(14)).is_err());
    }
}
