//! Arbitrary-precision rationals.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use dashu_int::{IBig, Sign, UBig};
use dashu_ratio::RBig;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number, always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigRat(RBig);

impl BigRat {
    pub fn zero() -> Self {
        BigRat(RBig::ZERO)
    }

    pub fn one() -> Self {
        BigRat(RBig::ONE)
    }

    pub fn from_int(n: i64) -> Self {
        BigRat(RBig::from(n))
    }

    pub fn from_bigint(n: IBig) -> Self {
        BigRat(RBig::from(n))
    }

    /// Builds `numer/denom`, reducing to lowest terms.
    pub fn new(numer: IBig, denom: IBig) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRat(RBig::from_parts_signed(numer, denom)))
    }

    pub fn ratio(numer: i64, denom: i64) -> Result<Self> {
        Self::new(IBig::from(numer), IBig::from(denom))
    }

    pub fn numer(&self) -> &IBig {
        self.0.numerator()
    }

    pub fn denom(&self) -> &UBig {
        self.0.denominator()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_int()
    }

    pub fn is_negative(&self) -> bool {
        self.0.sign() == Sign::Negative && !self.0.is_zero()
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn checked_div(&self, rhs: &BigRat) -> Result<BigRat> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRat(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<BigRat> {
        BigRat::one().checked_div(self)
    }

    pub fn pow(&self, exp: u32) -> BigRat {
        BigRat(self.0.pow(exp as usize))
    }

    /// The value as a machine integer, if it is one and fits.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        i64::try_from(self.numer()).ok()
    }
}

impl From<i64> for BigRat {
    fn from(n: i64) -> Self {
        BigRat::from_int(n)
    }
}

impl From<IBig> for BigRat {
    fn from(n: IBig) -> Self {
        BigRat::from_bigint(n)
    }
}

impl fmt::Display for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_int() {
            write!(f, "{}", self.0.numerator())
        } else {
            write!(f, "{}/{}", self.0.numerator(), self.0.denominator())
        }
    }
}

impl fmt::Debug for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BigRat {
    type Err = Error;

    /// Accepts `a` or `a/b` with optional sign on `a`; the result is reduced.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("malformed rational {s:?}, expected a or a/b"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let digits = |t: &str, signed: bool| {
            let t = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
            !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
        };
        if !digits(n, true) || !digits(d, false) {
            return Err(bad());
        }
        let numer: IBig = n.parse().map_err(|_| bad())?;
        let denom: IBig = d.parse().map_err(|_| bad())?;
        if denom.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        BigRat::new(numer, denom)
    }
}

impl Serialize for BigRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BigRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&BigRat> for &BigRat {
            type Output = BigRat;
            fn $method(self, rhs: &BigRat) -> BigRat {
                BigRat($tr::$method(&self.0, &rhs.0))
            }
        }
        impl $tr<&BigRat> for BigRat {
            type Output = BigRat;
            fn $method(self, rhs: &BigRat) -> BigRat {
                BigRat($tr::$method(self.0, &rhs.0))
            }
        }
        impl $tr<BigRat> for BigRat {
            type Output = BigRat;
            fn $method(self, rhs: BigRat) -> BigRat {
                BigRat($tr::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-self.0)
    }
}

impl Neg for &BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-&self.0)
    }
}

impl Sum for BigRat {
    fn sum<I: Iterator<Item = BigRat>>(iter: I) -> BigRat {
        iter.fold(BigRat::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_canonical() {
        assert_eq!(BigRat::ratio(6, -4).unwrap().to_string(), "-3/2");
        assert_eq!(BigRat::ratio(10, 5).unwrap().to_string(), "2");
        assert_eq!(BigRat::zero().to_string(), "0");
    }

    #[test]
    fn parse() {
        assert_eq!("-3/2".parse::<BigRat>().unwrap(), BigRat::ratio(-3, 2).unwrap());
        assert_eq!(" 4/6 ".parse::<BigRat>().unwrap().to_string(), "2/3");
        assert_eq!("7".parse::<BigRat>().unwrap(), BigRat::from_int(7));
        for bad in ["", "1/", "/2", "1/0", "a/3", "1.5", "3/-2", "--1"] {
            assert!(bad.parse::<BigRat>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            BigRat::one().checked_div(&BigRat::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn serde_as_string() {
        let r = BigRat::ratio(-12, 7).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, "\"-12/7\"");
        assert_eq!(serde_json::from_str::<BigRat>(&s).unwrap(), r);
    }
}
