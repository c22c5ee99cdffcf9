use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// The coefficient field: the rationals or a prime field `F_p`.
///
/// Elements of `F_p` are stored as integer-valued [`Rational`]s in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("characteristic {0} is not 0 or a prime")]
    NotPrime(u64),
    #[error("{value} has no image in F_{p}")]
    NotReducible { value: String, p: u64 },
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl FieldSpec {
    /// `0` selects the rationals; any prime selects `F_p`.
    pub fn from_characteristic(p: u64) -> Result<FieldSpec, FieldError> {
        match p {
            0 => Ok(FieldSpec::Rationals),
            p if is_prime(p) => Ok(FieldSpec::Prime(p)),
            p => Err(FieldError::NotPrime(p)),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    fn modulus(p: u64) -> BigInt {
        BigInt::from(p)
    }

    /// Maps a rational into the field; fails when the denominator is divisible by `p`.
    pub fn reduce(&self, value: &Rational) -> Result<Rational, FieldError> {
        match *self {
            FieldSpec::Rationals => Ok(value.clone()),
            FieldSpec::Prime(p) => {
                let m = Self::modulus(p);
                let den = value.denom().mod_floor(&m);
                if den.is_zero() {
                    return Err(FieldError::NotReducible { value: crate::rational::format(value), p });
                }
                let inv = den.modpow(&(&m - 2u32), &m);
                Ok(Rational::from_integer((value.numer().mod_floor(&m) * inv).mod_floor(&m)))
            }
        }
    }

    pub fn from_i64(&self, v: i64) -> Rational {
        self.reduce(&Rational::from_integer(v.into())).expect("integers always reduce")
    }

    fn wrap(&self, v: Rational) -> Rational {
        match *self {
            FieldSpec::Rationals => v,
            FieldSpec::Prime(p) => Rational::from_integer(v.to_integer().mod_floor(&Self::modulus(p))),
        }
    }

    pub fn add(&self, a: &Rational, b: &Rational) -> Rational {
        self.wrap(a + b)
    }

    pub fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        self.wrap(a - b)
    }

    pub fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        self.wrap(a * b)
    }

    pub fn neg(&self, a: &Rational) -> Rational {
        self.wrap(-a)
    }

    pub fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            return None;
        }
        match *self {
            FieldSpec::Rationals => Some(a.recip()),
            FieldSpec::Prime(p) => {
                let m = Self::modulus(p);
                Some(Rational::from_integer(a.to_integer().modpow(&(&m - 2u32), &m)))
            }
        }
    }

    pub fn div(&self, a: &Rational, b: &Rational) -> Option<Rational> {
        Some(self.mul(a, &self.inv(b)?))
    }

    pub fn one(&self) -> Rational {
        Rational::one()
    }

    /// Whether `a` is a canonical element of this field.
    pub fn contains(&self, a: &Rational) -> bool {
        match *self {
            FieldSpec::Rationals => true,
            FieldSpec::Prime(p) => a.is_integer() && !a.is_negative() && a.to_integer() < Self::modulus(p),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    #[test]
    fn characteristic_validation() {
        assert_eq!(FieldSpec::from_characteristic(0), Ok(FieldSpec::Rationals));
        assert_eq!(FieldSpec::from_characteristic(5), Ok(FieldSpec::Prime(5)));
        assert_eq!(FieldSpec::from_characteristic(4), Err(FieldError::NotPrime(4)));
        assert_eq!(FieldSpec::from_characteristic(1), Err(FieldError::NotPrime(1)));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::Prime(7);
        assert_eq!(f.reduce(&q(1, 3)).unwrap(), int(5));
        assert_eq!(f.reduce(&int(-45)).unwrap(), int(4));
        assert!(f.reduce(&q(1, 7)).is_err());
        assert_eq!(f.mul(&int(3), &int(5)), int(1));
        assert_eq!(f.inv(&int(3)), Some(int(5)));
        assert_eq!(f.neg(&int(2)), int(5));
        assert_eq!(f.inv(&int(0)), None);
        assert!(f.contains(&int(6)) && !f.contains(&int(7)));
    }
}
