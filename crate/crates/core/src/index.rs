//! Positive-integer coordinates.
//!
//! Counterexample constructions place their blocks at coordinates far beyond
//! `u64` (the unbounded-gap recursion with `a_n = n` reaches ~`10^61` at depth
//! six), so coordinates are 256-bit unsigned integers.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use bnum::cast::As;
use bnum::types::U256;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A coordinate `n` of a finitely supported sequence (or any nonnegative
/// integer quantity living on the same scale, such as shifts and partial sums).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Index(U256);

impl Index {
    pub const ZERO: Index = Index(U256::ZERO);
    pub const ONE: Index = Index(U256::ONE);
    pub const MAX: Index = Index(U256::MAX);

    pub fn new(n: u64) -> Self {
        Index(U256::from(n))
    }

    pub fn checked_add(self, rhs: Index) -> Option<Index> {
        self.0.checked_add(rhs.0).map(Index)
    }

    pub fn checked_sub(self, rhs: Index) -> Option<Index> {
        self.0.checked_sub(rhs.0).map(Index)
    }

    pub fn checked_mul(self, rhs: Index) -> Option<Index> {
        self.0.checked_mul(rhs.0).map(Index)
    }

    pub fn saturating_sub(self, rhs: Index) -> Index {
        Index(self.0.saturating_sub(rhs.0))
    }

    pub fn try_add(self, rhs: Index) -> Result<Index> {
        self.checked_add(rhs).ok_or(Error::IndexOverflow)
    }

    pub fn try_mul(self, rhs: Index) -> Result<Index> {
        self.checked_mul(rhs).ok_or(Error::IndexOverflow)
    }

    pub fn div_u64(self, d: u64) -> Index {
        Index(self.0 / U256::from(d))
    }

    pub fn rem_u64(self, d: u64) -> u64 {
        (self.0 % U256::from(d)).as_::<u64>()
    }

    pub fn is_zero(self) -> bool {
        self.0 == U256::ZERO
    }

    pub fn is_power_of_two(self) -> bool {
        self.0.is_power_of_two()
    }

    /// Smallest power of two that is `>= self` (`1` for zero).
    pub fn next_power_of_two(self) -> Option<Index> {
        self.0.checked_next_power_of_two().map(Index)
    }

    /// `floor(log2(self))`; zero maps to zero.
    pub fn ilog2(self) -> u32 {
        if self.is_zero() {
            0
        } else {
            self.0.ilog2()
        }
    }

    pub fn pow2(e: u32) -> Option<Index> {
        U256::ONE.checked_shl(e).map(Index)
    }

    /// Nearest double; exact below `2^53`.
    pub fn to_f64(self) -> f64 {
        self.0.as_::<f64>()
    }

    pub fn to_u64(self) -> Option<u64> {
        if self.0 <= U256::from(u64::MAX) {
            Some(self.0.as_::<u64>())
        } else {
            None
        }
    }

    pub fn try_u64(self) -> Result<u64> {
        self.to_u64().ok_or(Error::IndexTooLarge(self))
    }

    /// `floor(sqrt(self))`.
    pub fn isqrt(self) -> Index {
        if self.0 < U256::from(2u64) {
            return self;
        }
        // Newton iteration from a power of two above the root.
        let shift = self.0.ilog2() / 2 + 1;
        let mut x = U256::ONE << shift;
        loop {
            let y = (x + self.0 / x) >> 1u32;
            if y >= x {
                return Index(x);
            }
            x = y;
        }
    }

    /// `floor(self^(1/4))`.
    pub fn iroot4(self) -> Index {
        self.isqrt().isqrt()
    }
}

impl From<u64> for Index {
    fn from(n: u64) -> Self {
        Index::new(n)
    }
}

impl From<u32> for Index {
    fn from(n: u32) -> Self {
        Index::new(u64::from(n))
    }
}

impl From<usize> for Index {
    fn from(n: usize) -> Self {
        Index::new(n as u64)
    }
}

impl Add for Index {
    type Output = Index;

    fn add(self, rhs: Index) -> Index {
        self.checked_add(rhs).expect("index overflow in addition")
    }
}

impl Sub for Index {
    type Output = Index;

    fn sub(self, rhs: Index) -> Index {
        self.checked_sub(rhs).expect("index underflow in subtraction")
    }
}

impl Mul for Index {
    type Output = Index;

    fn mul(self, rhs: Index) -> Index {
        self.checked_mul(rhs).expect("index overflow in multiplication")
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Index {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        U256::from_str_radix(s.trim(), 10)
            .map(Index)
            .map_err(|_| Error::InvalidParameter(format!("`{s}` is not a nonnegative integer")))
    }
}

// Serialized as a decimal string so that values above 2^53 survive JSON readers.
impl Serialize for Index {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Index {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct IndexVisitor;

        impl Visitor<'_> for IndexVisitor {
            type Value = Index;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative integer or a decimal string")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Index, E> {
                Ok(Index::new(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Index, E> {
                u64::try_from(v)
                    .map(Index::new)
                    .map_err(|_| E::custom("negative index"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Index, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(IndexVisitor)
    }
}
