//! Exact rationals and their canonical `p/q` text form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Shorthand constructor, mostly for tests and fixtures.
pub fn q(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `p/q` in lowest terms with `q > 0`; zero is `0/1` and integers keep the `/1`.
pub fn format(value: &Rational) -> String {
    // BigRational is always reduced with a positive denominator.
    format!("{}/{}", value.numer(), value.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational `{0}`")]
pub struct ParseRationalError(pub String);

/// Accepts `p/q`, `-p/q` or a bare integer.
pub fn parse(text: &str) -> Result<Rational, ParseRationalError> {
    let text = text.trim();
    let err = || ParseRationalError(text.to_string());
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| err())?;
    let denom: BigInt = denom.parse().map_err(|_| err())?;
    if denom.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(numer, denom))
}

pub fn floor(value: &Rational) -> BigInt {
    value.numer().div_floor(value.denom())
}

pub fn is_positive(value: &Rational) -> bool {
    value.is_positive()
}

pub fn is_integer(value: &Rational) -> bool {
    value.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text() {
        assert_eq!(format(&q(6, 4)), "3/2");
        assert_eq!(format(&q(3, -9)), "-1/3");
        assert_eq!(format(&int(0)), "0/1");
        assert_eq!(format(&int(9)), "9/1");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse("38/11").unwrap(), q(38, 11));
        assert_eq!(parse(" -4/5 ").unwrap(), q(-4, 5));
        assert_eq!(parse("7").unwrap(), int(7));
        assert_eq!(parse("2/-4").unwrap(), q(-1, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn floor_of_negative() {
        assert_eq!(floor(&q(-4, 5)), BigInt::from(-1));
        assert_eq!(floor(&q(92, 17)), BigInt::from(5));
    }
}
