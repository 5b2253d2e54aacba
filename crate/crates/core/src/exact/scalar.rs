use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{BigRat, RatFunc};
use crate::error::Result;

/// Exact field element used by the weight systems and the summation engines.
///
/// `BigRat` is the scalar for fixed-`x` computation and `RatFunc` for
/// symbolic computation. Equality is exact.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: &BigRat) -> Self;
    fn is_zero(&self) -> bool;
    fn checked_div(&self, rhs: &Self) -> Result<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rat(&BigRat::from_int(n))
    }

    /// Canonical JSON form (a string for rationals, an object for
    /// rational functions).
    fn to_json(&self) -> serde_json::Value;
}

impl Scalar for BigRat {
    fn zero() -> Self {
        BigRat::zero()
    }
    fn one() -> Self {
        BigRat::one()
    }
    fn from_rat(r: &BigRat) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        BigRat::is_zero(self)
    }
    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        BigRat::checked_div(self, rhs)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

impl Scalar for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn from_rat(r: &BigRat) -> Self {
        RatFunc::constant(r.clone())
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        RatFunc::checked_div(self, rhs)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("rational functions serialize")
    }
}

/// Whether `x` is a formal variable or has been fixed to a rational value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Symbolic,
    Fixed(BigRat),
}

impl Mode {
    pub fn label(&self) -> &'static str {
        match self {
            Mode::Symbolic => "symbolic",
            Mode::Fixed(_) => "fixed",
        }
    }

    pub fn x0(&self) -> Option<&BigRat> {
        match self {
            Mode::Symbolic => None,
            Mode::Fixed(x0) => Some(x0),
        }
    }
}
