//! Scalar types used for exact counting.
//!
//! Every counting routine is generic over [`Count`], so the same code runs on
//! machine integers (fast, may overflow) and on [`BigUint`] (exact, the
//! default through the aliases in the crate root).

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, Div, Mul};

use num_bigint::BigUint;
use num_traits::{FromPrimitive, One, Zero};

/// An exact, non-negative counting scalar.
///
/// Division is only ever applied where the quotient is known to be exact
/// (factorial quotients from hook-length style formulas).
pub trait Count:
    Clone
    + Debug
    + Display
    + Ord
    + Zero
    + One
    + FromPrimitive
    + for<'a> AddAssign<&'a Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    fn from_usize_exact(v: usize) -> Self {
        Self::from_usize(v).expect("value does not fit in the count type")
    }
}

impl<T> Count for T where
    T: Clone
        + Debug
        + Display
        + Ord
        + Zero
        + One
        + FromPrimitive
        + for<'a> AddAssign<&'a T>
        + Mul<Output = T>
        + Div<Output = T>
        + Send
        + Sync
{
}

/// `lo * (lo+1) * ... * hi`, or one when the range is empty.
pub fn rising_product<C: Count>(lo: usize, hi: usize) -> C {
    (lo.max(1)..=hi).fold(C::one(), |acc, k| acc * C::from_usize_exact(k))
}

pub fn factorial<C: Count>(n: usize) -> C {
    rising_product(1, n)
}

/// Serde adapter writing big integers as decimal strings.
pub mod decimal {
    use super::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10)
            .ok_or_else(|| D::Error::custom(format!("not a decimal integer: {s}")))
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => super::serialize(v, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
            let s: Option<String> = Option::deserialize(d)?;
            s.map(|s| {
                BigUint::parse_bytes(s.as_bytes(), 10)
                    .ok_or_else(|| D::Error::custom(format!("not a decimal integer: {s}")))
            })
            .transpose()
        }
    }
}
