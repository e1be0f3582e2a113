//! The universal exact scalar: an arbitrary precision rational.
//!
//! `Rat` is `num_rational::BigRational`, which already maintains the two
//! invariants we rely on everywhere (lowest terms, positive denominator).
//! This module adds the handful of helpers the rest of the crate needs:
//! construction from machine integers, the fractional part, parsing and
//! formatting in the `p/q` wire format, and serde adapters for that format.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

pub type Rat = BigRational;

/// Rational from a machine integer pair. Panics on a zero denominator.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Fractional part in `[0, 1)`, exact for negative inputs as well.
pub fn frac_part(x: &Rat) -> Rat {
    x - x.floor()
}

/// Formats as `p/q`, or just `p` when the denominator is one.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRatError(pub String);

/// Parses `p/q` or a plain integer `p`. Whitespace is not accepted.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let bad = || ParseRatError(s.to_string());
    match s.split_once('/') {
        None => {
            let p = BigInt::from_str(s).map_err(|_| bad())?;
            Ok(Rat::from_integer(p))
        }
        Some((num, den)) => {
            let p = BigInt::from_str(num).map_err(|_| bad())?;
            let q = BigInt::from_str(den).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Serde adapter serializing a `Rat` as a `p/q` string.
pub mod serde_pq {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format_rat(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(de)?;
        parse_rat(&s).map_err(de::Error::custom)
    }
}

/// Best effort conversion for reporting. Not used in any exact computation.
pub fn to_f64(x: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of clamped parts for gigantic values.
        let n = x.numer().to_f64().unwrap_or(if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frac_part_wraps_negatives() {
        assert_eq!(frac_part(&rat(7, 4)), rat(3, 4));
        assert_eq!(frac_part(&rat(-1, 4)), rat(3, 4));
        assert_eq!(frac_part(&rat(0, 1)), rat(0, 1));
        assert_eq!(frac_part(&rat(-9, 3)), rat(0, 1));
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-3/4", "0", "17", "-2/7"] {
            let x = parse_rat(s).unwrap();
            assert_eq!(format_rat(&x), s);
        }
        // Non-canonical input normalizes.
        assert_eq!(format_rat(&parse_rat("2/-4").unwrap()), "-1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/b").is_err());
    }
}
