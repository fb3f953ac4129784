//! Exact scalar arithmetic over the rationals or a prime field.
//!
//! Scalars are always stored as [`BigRational`]; over `F_p` they are kept
//! reduced to an integer representative in `0..p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{bad_input, Result};

pub type Scalar = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    #[serde(rename = "rationals")]
    Rationals,
    #[serde(rename = "prime")]
    Prime,
}

/// A field with exact arithmetic. `characteristic == 0` means the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    characteristic: u64,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub const RATIONALS: Field = Field { characteristic: 0 };

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(bad_input(format!("field characteristic {p} is not prime")));
        }
        if p > u32::MAX as u64 {
            return Err(bad_input(format!("prime {p} too large")));
        }
        Ok(Field { characteristic: p })
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn kind(&self) -> FieldKind {
        if self.characteristic == 0 {
            FieldKind::Rationals
        } else {
            FieldKind::Prime
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.reduce(Scalar::from_integer(BigInt::from(v)))
    }

    /// Brings an arbitrary rational into canonical form for this field.
    pub fn reduce(&self, v: Scalar) -> Scalar {
        if self.characteristic == 0 {
            return v;
        }
        let p = BigInt::from(self.characteristic);
        let num = v.numer().mod_floor(&p);
        let den = v.denom().mod_floor(&p);
        assert!(!den.is_zero(), "denominator divisible by the characteristic");
        let inv = mod_inverse(&den, &p);
        Scalar::from_integer((num * inv).mod_floor(&p))
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        if self.characteristic == 0 {
            a.recip()
        } else {
            let p = BigInt::from(self.characteristic);
            Scalar::from_integer(mod_inverse(a.numer(), &p))
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// Parses `"3"`, `"-2/5"` or an integer literal into a field element.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n
            .parse()
            .map_err(|_| bad_input(format!("cannot parse scalar {s:?}")))?;
        let d: BigInt = d
            .parse()
            .map_err(|_| bad_input(format!("cannot parse scalar {s:?}")))?;
        if d.is_zero() {
            return Err(bad_input(format!("zero denominator in {s:?}")));
        }
        if self.characteristic != 0 && d.mod_floor(&BigInt::from(self.characteristic)).is_zero() {
            return Err(bad_input(format!("denominator of {s:?} vanishes in F_{}", self.characteristic)));
        }
        Ok(self.reduce(Scalar::new(n, d)))
    }

    /// A uniformly random element over `F_p`; small-height rationals over `Q`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        if self.characteristic == 0 {
            self.from_i64(rng.gen_range(-3..=3))
        } else {
            Scalar::from_integer(BigInt::from(rng.gen_range(0..self.characteristic)))
        }
    }

    /// A random element guaranteed to be nonzero.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let v = self.random(rng);
            if !v.is_zero() {
                return v;
            }
        }
    }

    /// Symmetric representative for display; rationals print as `n/d`.
    pub fn display(&self, a: &Scalar) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    /// Cardinality when finite.
    pub fn order(&self) -> Option<u64> {
        (self.characteristic != 0).then_some(self.characteristic)
    }

    pub fn to_i64(a: &Scalar) -> Option<i64> {
        if a.is_integer() {
            a.numer().to_i64()
        } else {
            None
        }
    }

    pub fn is_negative(a: &Scalar) -> bool {
        a.is_negative()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.characteristic == 0 {
            write!(f, "Q")
        } else {
            write!(f, "F_{}", self.characteristic)
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let egcd = a.mod_floor(p).extended_gcd(p);
    assert!(egcd.gcd.is_one(), "element not invertible mod p");
    egcd.x.mod_floor(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = Field::prime(101).unwrap();
        for v in 1..101 {
            let a = f.from_i64(v);
            assert!(f.mul(&a, &f.inv(&a)).is_one());
        }
    }

    #[test]
    fn parse_fractions_mod_p() {
        let f = Field::prime(7).unwrap();
        // 1/2 = 4 mod 7
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(4));
        assert_eq!(f.parse("-1").unwrap(), f.from_i64(6));
        assert!(f.parse("1/7").is_err());
    }

    #[test]
    fn non_prime_rejected() {
        assert!(Field::prime(100).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(2).is_ok());
    }

    #[test]
    fn rationals_stay_exact() {
        let q = Field::RATIONALS;
        let a = q.parse("2/6").unwrap();
        assert_eq!(q.display(&a), "1/3");
        assert_eq!(q.add(&a, &a), q.parse("2/3").unwrap());
    }
}
