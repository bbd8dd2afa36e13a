//! Arbitrary-precision natural numbers with exact division.
//!
//! Every integer handled by this crate lives in [`Natural`]. The canonical
//! text encoding is plain base-10 with no leading zeros; grouped rendering
//! (`394 394`) is for display only and is rejected by the parser.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Separator used by [`Natural::grouped`] (U+2009 THIN SPACE).
pub const GROUP_SEPARATOR: char = '\u{2009}';

/// A nonnegative integer of unbounded size.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Natural(BigUint);

/// Quotient and remainder of a division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivMod {
    pub quotient: Natural,
    pub remainder: Natural,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact (remainder {remainder})")]
    NotDivisible { remainder: Natural },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseNaturalError {
    #[error("empty number")]
    Empty,
    #[error("invalid character {found:?} at position {position}")]
    InvalidDigit { position: usize, found: char },
    #[error("leading zero in {0:?}")]
    LeadingZero(String),
}

impl Natural {
    pub fn zero() -> Self {
        Natural(BigUint::zero())
    }

    pub fn one() -> Self {
        Natural(BigUint::one())
    }

    /// `10^exp`.
    pub fn pow10(exp: usize) -> Self {
        let exp = u32::try_from(exp).expect("decimal exponent exceeds u32");
        Natural(BigUint::from(10u32).pow(exp))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Natural(self.0.pow(exp))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_even(&self) -> bool {
        self.0.is_even()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    /// Number of decimal digits (`0` has one digit).
    pub fn digit_len(&self) -> usize {
        self.0.to_str_radix(10).len()
    }

    pub fn gcd(&self, other: &Natural) -> Natural {
        Natural(self.0.gcd(&other.0))
    }

    /// Decimal rendering with a thin space between groups of three digits.
    pub fn grouped(&self) -> String {
        let digits = self.to_string();
        let lead = digits.len() % 3;
        let mut out = String::with_capacity(digits.len() + digits.len() / 3 * 3);
        for (i, c) in digits.chars().enumerate() {
            if i > 0 && (i + 3 - lead).is_multiple_of(3) {
                out.push(GROUP_SEPARATOR);
            }
            out.push(c);
        }
        out
    }
}

/// Division with remainder: `b = q*a + r` with `0 <= r < a`.
pub fn divmod(b: &Natural, a: &Natural) -> Result<DivMod, ArithmeticError> {
    if a.is_zero() {
        return Err(ArithmeticError::DivisionByZero);
    }
    let (q, r) = b.0.div_rem(&a.0);
    Ok(DivMod {
        quotient: Natural(q),
        remainder: Natural(r),
    })
}

/// Whether `a` divides `b`.
pub fn divides(a: &Natural, b: &Natural) -> Result<bool, ArithmeticError> {
    if a.is_zero() {
        return Err(ArithmeticError::DivisionByZero);
    }
    Ok((&b.0 % &a.0).is_zero())
}

/// `b / a`, failing with [`ArithmeticError::NotDivisible`] unless the remainder is zero.
pub fn divide_exact(b: &Natural, a: &Natural) -> Result<Natural, ArithmeticError> {
    let DivMod {
        quotient,
        remainder,
    } = divmod(b, a)?;
    if remainder.is_zero() {
        Ok(quotient)
    } else {
        Err(ArithmeticError::NotDivisible { remainder })
    }
}

impl From<u64> for Natural {
    fn from(v: u64) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<u32> for Natural {
    fn from(v: u32) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<u128> for Natural {
    fn from(v: u128) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<BigUint> for Natural {
    fn from(v: BigUint) -> Self {
        Natural(v)
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Natural {
    type Err = ParseNaturalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ParseNaturalError::Empty);
        }
        if let Some((position, found)) = s.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
            return Err(ParseNaturalError::InvalidDigit { position, found });
        }
        if s.len() > 1 && s.starts_with('0') {
            return Err(ParseNaturalError::LeadingZero(s.to_string()));
        }
        let v = BigUint::parse_bytes(s.as_bytes(), 10).expect("validated decimal digits");
        Ok(Natural(v))
    }
}

impl Serialize for Natural {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Natural {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Natural> for &Natural {
            type Output = Natural;
            fn $method(self, rhs: &Natural) -> Natural {
                Natural((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Natural> for Natural {
            type Output = Natural;
            fn $method(self, rhs: Natural) -> Natural {
                Natural(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Natural> for Natural {
            type Output = Natural;
            fn $method(self, rhs: &Natural) -> Natural {
                Natural(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Mul, mul);

impl Sum for Natural {
    fn sum<I: Iterator<Item = Natural>>(iter: I) -> Self {
        iter.fold(Natural::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Natural> for Natural {
    fn sum<I: Iterator<Item = &'a Natural>>(iter: I) -> Self {
        iter.fold(Natural::zero(), |acc, x| acc + x)
    }
}

impl Product for Natural {
    fn product<I: Iterator<Item = Natural>>(iter: I) -> Self {
        iter.fold(Natural::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a Natural> for Natural {
    fn product<I: Iterator<Item = &'a Natural>>(iter: I) -> Self {
        iter.fold(Natural::one(), |acc, x| acc * x)
    }
}
