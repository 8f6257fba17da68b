//! Exact arbitrary-precision rational scalars.
//!
//! Every coordinate and every distance in this crate is a `Scalar`. There is
//! no floating point anywhere in the computational core: the bounds being
//! reproduced are exact equalities, and parity or divisibility of a distance
//! is meaningless under rounding.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact rational number, always kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`, reduced. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Scalar(BigRational::new(num, den))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar(BigRational::from_integer(n))
    }

    /// Exact power of two, `2^exp`, for either sign of `exp`.
    pub fn pow2(exp: i32) -> Self {
        let two = BigInt::from(2);
        if exp >= 0 {
            Scalar(BigRational::from_integer(two.pow(exp as u32)))
        } else {
            Scalar(BigRational::new(BigInt::one(), two.pow((-exp) as u32)))
        }
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// The integer value when the denominator is one.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.0.is_integer() {
            Some(self.0.numer())
        } else {
            None
        }
    }

    /// Largest integer not exceeding the value.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::ScalarParse { text: s.to_owned() };
        let t = s.trim();
        match t.split_once('/') {
            None => {
                let n: BigInt = t.parse().map_err(|_| bad())?;
                Ok(Scalar(BigRational::from_integer(n)))
            }
            Some((num, den)) => {
                let n: BigInt = num.trim().parse().map_err(|_| bad())?;
                let d: BigInt = den.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar(BigRational::new(n, d)))
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero scalar");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let s = Scalar::ratio(2, -4);
        assert_eq!(s, Scalar::ratio(-1, 2));
        assert_eq!(s.to_string(), "-1/2");
        assert!(s.denom() > &BigInt::zero());
    }

    #[test]
    fn render_integers_without_denominator() {
        assert_eq!(Scalar::int(7).to_string(), "7");
        assert_eq!(Scalar::ratio(8, 4).to_string(), "2");
        assert_eq!(Scalar::ratio(1, 2).to_string(), "1/2");
    }

    #[test]
    fn parse_accepts_both_forms() {
        assert_eq!("5".parse::<Scalar>().unwrap(), Scalar::int(5));
        assert_eq!("-3/6".parse::<Scalar>().unwrap(), Scalar::ratio(-1, 2));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("a/2".parse::<Scalar>().is_err());
    }

    #[test]
    fn pow2_both_signs() {
        assert_eq!(Scalar::pow2(3), Scalar::int(8));
        assert_eq!(Scalar::pow2(-3), Scalar::ratio(1, 8));
        assert_eq!(Scalar::pow2(0), Scalar::one());
    }

    #[test]
    fn exact_arithmetic() {
        let a = Scalar::ratio(1, 3);
        let b = Scalar::ratio(1, 6);
        assert_eq!(&a + &b, Scalar::ratio(1, 2));
        assert_eq!(&a - &b, Scalar::ratio(1, 6));
        assert_eq!(&a * &b, Scalar::ratio(1, 18));
        assert_eq!(&a / &b, Scalar::int(2));
        assert_eq!((-&a).abs(), a);
    }

    #[test]
    fn floor_of_negatives() {
        assert_eq!(Scalar::ratio(-5, 2).floor_int(), BigInt::from(-3));
        assert_eq!(Scalar::ratio(5, 2).floor_int(), BigInt::from(2));
    }
}
