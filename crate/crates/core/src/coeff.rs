//! Exact coefficients.
//!
//! Coefficients are rationals with 64-bit numerator and denominator. Every
//! operation is checked; an overflow panics with "coefficient overflow" rather
//! than wrapping. Integer-mode sessions only ever hold denominators equal to 1.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coeff(Rational64);

impl Coeff {
    pub const ZERO: Coeff = Coeff(Rational64::ZERO);
    pub const ONE: Coeff = Coeff(Rational64::ONE);

    pub fn int(n: i64) -> Self {
        Coeff(Rational64::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        Ok(Coeff(Rational64::new(num, den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// `±1`.
    pub fn is_unit_integer(&self) -> bool {
        self.0.is_integer() && self.0.numer().abs() == 1
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Coeff {
        Coeff(self.0.abs())
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn checked_div(&self, other: &Coeff) -> Option<Coeff> {
        self.0.checked_div(&other.0).map(Coeff)
    }
}

fn overflow() -> ! {
    panic!("coefficient overflow")
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, rhs: Coeff) -> Coeff {
        Coeff(self.0.checked_add(&rhs.0).unwrap_or_else(|| overflow()))
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, rhs: Coeff) -> Coeff {
        Coeff(self.0.checked_sub(&rhs.0).unwrap_or_else(|| overflow()))
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, rhs: Coeff) -> Coeff {
        Coeff(self.0.checked_mul(&rhs.0).unwrap_or_else(|| overflow()))
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff::ZERO - self
    }
}

impl AddAssign for Coeff {
    fn add_assign(&mut self, rhs: Coeff) {
        *self = *self + rhs;
    }
}

impl SubAssign for Coeff {
    fn sub_assign(&mut self, rhs: Coeff) {
        *self = *self - rhs;
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff::int(n)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Coeff {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad coefficient `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                Coeff::ratio(n, d)
            }
            None => s.trim().parse::<i64>().map(Coeff::int).map_err(|_| bad()),
        }
    }
}

impl Serialize for Coeff {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Coefficient domain of a session: the integers or the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Integers,
    #[default]
    Rationals,
}

impl Ring {
    /// Exact division. Over the integers only division by `±1` is allowed.
    pub fn divide(self, num: Coeff, den: Coeff) -> Result<Coeff> {
        match self {
            Ring::Integers if !den.is_unit_integer() => Err(Error::NonUnitElimination {
                num: num.to_string(),
                den: den.to_string(),
            }),
            _ => num.checked_div(&den).ok_or(Error::Overflow),
        }
    }

    pub fn admits(self, c: &Coeff) -> bool {
        match self {
            Ring::Integers => c.is_integer(),
            Ring::Rationals => true,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Integers => "integer",
            Ring::Rationals => "rational",
        })
    }
}
