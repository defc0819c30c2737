use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact integer ring used for lattice coordinates.
///
/// Everything in this crate is generic over the ring so the same code runs on
/// `BigInt` (the default, overflow-free) and on machine integers such as
/// `i64`/`i128` where the caller knows the values stay small. Rationals are
/// always `num_rational::Ratio<T>` over the chosen ring.
pub trait Scalar:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Send
    + Sync
    + 'static
{
    fn from_int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("i64 fits every supported ring")
    }
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + FromStr
        + Send
        + Sync
        + 'static
{
}

/// Parses a decimal integer token into the ring, `None` if it is not one.
pub fn parse_integer<T: Scalar>(token: &str) -> Option<T> {
    let t = token.strip_prefix('+').unwrap_or(token);
    if t.is_empty() || !t.trim_start_matches('-').chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    t.parse::<T>().ok()
}
