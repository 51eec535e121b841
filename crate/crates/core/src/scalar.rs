//! Coefficient traits.
//!
//! Everything in this crate is generic over the coefficient type. Group-word
//! expansions have integer coefficients and run over `i128` (overflow is
//! checked in every build profile of this workspace); anything that needs
//! division (logarithms, coordinates in filtered bases, cohomology) runs
//! over [`Rational`]. `f64` is accepted where no exactness is claimed.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

/// Arbitrary-precision exact rationals.
pub type Rational = BigRational;

/// A commutative ring of coefficients.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + AddAssign
    + SubAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + 'static
{
    fn from_int(n: i64) -> Self;

    #[inline]
    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
}

/// A field of coefficients.
pub trait Field: Ring + Div<Output = Self> {
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }
}

macro_rules! impl_ring_prim {
    ($($ty:ty),*) => {
        $(
            impl Ring for $ty {
                #[inline]
                fn from_int(n: i64) -> Self {
                    n as $ty
                }
                #[inline]
                fn mul_ref(&self, other: &Self) -> Self {
                    *self * *other
                }
            }
        )*
    };
}

impl_ring_prim!(i64, i128, f64);

impl Field for f64 {}

impl Ring for BigInt {
    fn from_int(n: i64) -> Self {
        BigInt::from(n)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl Ring for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl Field for BigRational {}

impl Ring for Ratio<i64> {
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(n)
    }
}

impl Field for Ratio<i64> {}

/// Exact conversion of integer series coefficients into rationals.
pub fn int_to_rational(n: &i128) -> Rational {
    BigRational::from_integer(BigInt::from(*n))
}

/// Rationals are written `p` or `p/q` in every textual format.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "-3", "7/2", "-1/6"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert!(parse_rational("1/0").is_none());
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
    }
}
