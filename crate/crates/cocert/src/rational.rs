//! Exact rational coefficients.
//!
//! Every coefficient in this crate is a reduced arbitrary-precision rational;
//! there is no floating-point path anywhere. Decimal literals in inputs
//! (e.g. `1.9`) are parsed as exact rationals (`19/10`).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::str::FromStr;

pub type Rational = BigRational;
pub type Integer = BigInt;

/// Parse a rational from `"p/q"`, `"p"` or a decimal string such as `"-8.97"`.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RationalParseError(s.to_string()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| RationalParseError(s.to_string()))?;
        let d = BigInt::from_str(den.trim()).map_err(|_| RationalParseError(s.to_string()))?;
        if d.is_zero() {
            return Err(RationalParseError(s.to_string()));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (sign, int_digits) = match int_part.trim() {
            t if t.starts_with('-') => (-1, &t[1..]),
            t if t.starts_with('+') => (1, &t[1..]),
            t => (1, t),
        };
        if frac_part.is_empty() || !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(RationalParseError(s.to_string()));
        }
        if !int_digits.is_empty() && !int_digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(RationalParseError(s.to_string()));
        }
        let int_val = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(int_digits).map_err(|_| RationalParseError(s.to_string()))?
        };
        let frac_val = BigInt::from_str(frac_part).map_err(|_| RationalParseError(s.to_string()))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let unsigned = int_val * &scale + frac_val;
        return Ok(Rational::new(BigInt::from(sign) * unsigned, scale));
    }
    let n = BigInt::from_str(s).map_err(|_| RationalParseError(s.to_string()))?;
    Ok(Rational::from_integer(n))
}

/// Canonical string form: `"p"` when the denominator is 1, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_from_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_strictly_positive(r: &Rational) -> bool {
    r.is_positive()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{0}` as an exact rational")]
pub struct RationalParseError(pub String);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_input_forms() {
        assert_eq!(parse_rational("19/10").unwrap(), parse_rational("1.9").unwrap());
        assert_eq!(parse_rational("-1.9").unwrap(), parse_rational("-19/10").unwrap());
        assert_eq!(parse_rational("8.97").unwrap(), parse_rational("897/100").unwrap());
        assert_eq!(parse_rational("3").unwrap(), rational_from_i64(3));
        assert_eq!(parse_rational("-4/6").unwrap(), parse_rational("-2/3").unwrap());
        assert_eq!(parse_rational("0.50").unwrap(), parse_rational("1/2").unwrap());
        assert_eq!(parse_rational(".5").unwrap(), parse_rational("1/2").unwrap());
        assert_eq!(parse_rational("-0.5").unwrap(), parse_rational("-1/2").unwrap());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.2e3").is_err());
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format_rational(&parse_rational("-19/10").unwrap()), "-19/10");
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert_eq!(format_rational(&parse_rational("0").unwrap()), "0");
    }
}
