//! Integer scalar abstraction shared by every solver in the crate.
//!
//! Offsets, constants, residues and path weights are all values of one
//! [`Scalar`] type. Fixed-width types (`i64`, `i128`) are fast; [`BigInt`]
//! removes every width limit.
//!
//! [`BigInt`]: num_bigint::BigInt

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

/// A signed integer type usable for offsets, residues and weights.
pub trait Scalar:
    Clone
    + Ord
    + Hash
    + Debug
    + Display
    + FromStr
    + Signed
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Converts a small literal. Every supported scalar holds the full `i64` range.
    fn lit(v: i64) -> Self {
        Self::from_i64(v).expect("scalar type narrower than i64")
    }

    /// `|self|`, or `None` where the magnitude is not representable.
    fn checked_abs(&self) -> Option<Self> {
        if self.is_negative() {
            Self::zero().checked_sub(self)
        } else {
            Some(self.clone())
        }
    }

    fn from_count(v: usize) -> Self {
        Self::from_usize(v).expect("count does not fit the scalar type")
    }
}

impl<T> Scalar for T where
    T: Clone
        + Ord
        + Hash
        + Debug
        + Display
        + FromStr
        + Signed
        + Integer
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}
