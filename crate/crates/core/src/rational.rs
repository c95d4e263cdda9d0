//! Exact rational scalars and their wire format.
//!
//! Rationals cross the JSON boundary as strings, either `"n"` or `"n/d"` with
//! integer numerator and positive integer denominator. Parsing is strict; the
//! formatter always emits the canonical reduced form, so serialization is
//! byte-stable.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::str::FromStr;

use crate::Q;

/// Shorthand for an integer rational.
pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `n/d`. Panics on `d == 0`.
pub fn qr(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"n"` or `"n/d"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Q, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational literal".to_string());
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = BigInt::from_str(num_str)
        .map_err(|_| format!("invalid integer numerator {num_str:?}"))?;
    let den = match den_str {
        None => BigInt::one(),
        Some(d) => {
            let den = BigInt::from_str(d)
                .map_err(|_| format!("invalid integer denominator {d:?}"))?;
            if den.is_zero() {
                return Err("zero denominator".to_string());
            }
            if den.is_negative() {
                return Err("denominator must be positive".to_string());
            }
            den
        }
    };
    Ok(BigRational::new(num, den))
}

/// Format a rational as `"n"` (integer) or `"n/d"` (reduced, positive `d`).
pub fn format_rational(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), q(3));
        assert_eq!(parse_rational("-7/2").unwrap(), qr(-7, 2));
        assert_eq!(parse_rational("4/6").unwrap(), qr(2, 3));
        assert_eq!(parse_rational(" 0 ").unwrap(), q(0));
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in ["", "1/0", "1/-2", "a", "1/2/3", "1.5"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn formats_reduced_canonical_form() {
        assert_eq!(format_rational(&q(5)), "5");
        assert_eq!(format_rational(&qr(-6, 4)), "-3/2");
        assert_eq!(format_rational(&qr(0, 7)), "0");
    }

    #[test]
    fn round_trips() {
        for s in ["0", "17", "-3", "1/2", "-22/7"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
    }
}
