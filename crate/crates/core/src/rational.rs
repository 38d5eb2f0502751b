//! Exact rational numbers.
//!
//! Every dimension value and every `k` is an arbitrary-precision rational.
//! Values print as `p/q`, or `p` when the denominator is one, which is the
//! `Display` format of [`BigRational`]. Parsing additionally accepts finite
//! decimal literals such as `2.5`, converted exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub type Rational = BigRational;

/// Shorthand for an integral rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Shorthand for `numer / denom`. Panics if `denom` is zero.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `p/q`, `p`, or a finite decimal like `-1.25`.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let s = text.trim();
    let bad = || Error::InvalidRational(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let (negative, whole) = match whole.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, whole.strip_prefix('+').unwrap_or(whole)),
        };
        let digits_ok = |d: &str| d.chars().all(|c| c.is_ascii_digit());
        if !digits_ok(whole) || !digits_ok(frac) || (whole.is_empty() && frac.is_empty()) {
            return Err(bad());
        }
        let mut digits = String::with_capacity(whole.len() + frac.len());
        digits.push_str(whole);
        digits.push_str(frac);
        let numer: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(numer, denom);
        return Ok(if negative { -value } else { value });
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// Smallest integer not below `value`.
pub fn ceil(value: &Rational) -> BigInt {
    value.ceil().to_integer()
}

/// Converts an integral, non-negative rational to `u64`.
pub fn to_u64_exact(value: &Rational) -> Option<u64> {
    if value.is_integer() && !value.is_negative() {
        value.to_integer().to_u64()
    } else {
        None
    }
}

pub fn is_integral(value: &Rational) -> bool {
    value.denom().is_one()
}

/// `count` equally spaced rationals from 1 to `kappa` inclusive.
pub fn equally_spaced(kappa: u64, count: usize) -> Vec<Rational> {
    let lo = Rational::one();
    let hi = Rational::from_integer(BigInt::from(kappa));
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let steps = BigInt::from(count - 1);
            let width = &hi - &lo;
            (0..count)
                .map(|i| &lo + &width * Rational::new(BigInt::from(i), steps.clone()))
                .collect()
        }
    }
}

/// Serde adapters writing rationals as `"p/q"` strings.
pub mod serde_str {
    use super::{parse_rational, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_rational(&text).map_err(de::Error::custom)
    }

    pub mod vec {
        use super::super::{parse_rational, Rational};
        use serde::ser::SerializeSeq;
        use serde::{de, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(
            values: &[Rational],
            serializer: S,
        ) -> Result<S::Ok, S::Error> {
            let mut seq = serializer.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&v.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            deserializer: D,
        ) -> Result<Vec<Rational>, D::Error> {
            let raw = Vec::<String>::deserialize(deserializer)?;
            raw.iter()
                .map(|s| parse_rational(s).map_err(de::Error::custom))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_lowest_terms() {
        assert_eq!(ratio(10, 6).to_string(), "5/3");
        assert_eq!(ratio(12, 4).to_string(), "3");
        assert_eq!(ratio(-3, 6).to_string(), "-1/2");
        assert_eq!(ratio(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("5/2").unwrap(), ratio(5, 2));
        assert_eq!(parse_rational("4/2").unwrap(), int(2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("2.5").unwrap(), ratio(5, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), ratio(-1, 8));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("3.").unwrap(), int(3));
        for bad in ["", "1/0", "a", "1.2.3", "1/2/3", ".", "1e3", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn spacing_hits_both_ends() {
        let grid = equally_spaced(4, 4);
        assert_eq!(grid, vec![int(1), int(2), int(3), int(4)]);
        let grid = equally_spaced(3, 5);
        assert_eq!(grid[1], ratio(3, 2));
        assert_eq!(grid[4], int(3));
        assert_eq!(equally_spaced(5, 1), vec![int(1)]);
    }

    #[test]
    fn ceil_and_integral() {
        assert_eq!(ceil(&ratio(7, 3)), BigInt::from(3));
        assert_eq!(ceil(&int(4)), BigInt::from(4));
        assert!(is_integral(&int(4)));
        assert!(!is_integral(&ratio(1, 2)));
        assert_eq!(to_u64_exact(&int(9)), Some(9));
        assert_eq!(to_u64_exact(&ratio(9, 2)), None);
    }
}
