//! Coefficient fields.
//!
//! Everything numeric in the crate (boundary-matrix ranks, polynomial
//! arithmetic, Gröbner bases) is generic over [`Field`], which is just
//! `num_traits::Num` plus negation and a few conveniences. Two families are
//! provided: prime fields [`Fp`] with the modulus as a const parameter, and
//! exact rationals via `num_rational::BigRational`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A commutative field usable as a coefficient domain.
pub trait Field: Num + Neg<Output = Self> + Clone + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Short tag used in JSON output (`"gf2"`, `"gf32003"`, `"q"`).
    fn tag() -> String;

    /// Image of an integer under the canonical map `Z -> K`.
    fn from_int(v: i64) -> Self;

    /// Multiplicative inverse. Panics on zero.
    fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::one() / self.clone()
    }

    /// Parse the textual form written by `Display`.
    fn parse(s: &str) -> Result<Self, Error>;
}

/// The prime field `Z/PZ`. `P` must be prime; this is not checked.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u128;
        let mut acc: u128 = 1;
        let p = P as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u64)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "division by zero in GF({P})");
        self * rhs.pow(P - 2)
    }
}

impl<const P: u64> Rem for Fp<P> {
    type Output = Self;
    // Every nonzero element is a unit, so the remainder is always zero.
    fn rem(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "remainder by zero in GF({P})");
        Fp(0)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Num for Fp<P> {
    type FromStrRadixErr = std::num::ParseIntError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let v = i128::from_str_radix(s, radix)?;
        Ok(Fp(v.rem_euclid(P as i128) as u64))
    }
}

impl<const P: u64> Field for Fp<P> {
    fn tag() -> String {
        format!("gf{P}")
    }

    fn from_int(v: i64) -> Self {
        Fp((v as i128).rem_euclid(P as i128) as u64)
    }

    fn inverse(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }

    fn parse(s: &str) -> Result<Self, Error> {
        Self::from_str_radix(s.trim(), 10).map_err(|e| Error::Parse(format!("bad GF({P}) coefficient {s:?}: {e}")))
    }
}

impl Field for BigRational {
    fn tag() -> String {
        "q".to_string()
    }

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn parse(s: &str) -> Result<Self, Error> {
        BigRational::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad rational coefficient {s:?}: {e}")))
    }
}

/// Runtime selection of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldKind {
    #[serde(rename = "gf2")]
    Gf2,
    #[serde(rename = "gf32003")]
    Gf32003,
    #[serde(rename = "q")]
    Rational,
}

impl FieldKind {
    pub fn tag(self) -> &'static str {
        match self {
            FieldKind::Gf2 => "gf2",
            FieldKind::Gf32003 => "gf32003",
            FieldKind::Rational => "q",
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FieldKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gf2" | "2" => Ok(FieldKind::Gf2),
            "gf32003" | "32003" => Ok(FieldKind::Gf32003),
            "q" | "qq" | "rational" | "rationals" => Ok(FieldKind::Rational),
            other => Err(Error::Parse(format!("unknown field {other:?} (expected gf2, gf32003 or q)"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn fp_arithmetic() {
        let a = F7::new(3);
        let b = F7::new(5);
        assert_eq!((a + b).value(), 1);
        assert_eq!((a - b).value(), 5);
        assert_eq!((a * b).value(), 1);
        assert_eq!((a / b) * b, a);
        assert_eq!((-a).value(), 4);
        assert_eq!(F7::from_int(-1).value(), 6);
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for v in 1..32003u64 {
            let x = Fp::<32003>::new(v);
            assert!((x * x.inverse()).is_one());
        }
    }

    #[test]
    fn gf2_is_characteristic_two() {
        let one = Fp::<2>::one();
        assert!((one + one).is_zero());
        assert_eq!(-one, one);
    }

    #[test]
    fn parse_round_trips() {
        assert_eq!(Fp::<32003>::parse("-1").unwrap().value(), 32002);
        let q = BigRational::parse("-3/4").unwrap();
        assert_eq!(BigRational::parse(&q.to_string()).unwrap(), q);
        assert!(BigRational::parse("x").is_err());
    }

    #[test]
    fn field_kind_parsing() {
        assert_eq!("gf2".parse::<FieldKind>().unwrap(), FieldKind::Gf2);
        assert_eq!("Q".parse::<FieldKind>().unwrap(), FieldKind::Rational);
        assert!("gf3".parse::<FieldKind>().is_err());
    }
}
