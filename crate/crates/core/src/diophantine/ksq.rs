//! Closed forms for `K^2` of the rank-one surface in terms of the genus `g`
//! of the boundary curve and the shape parameter of the worst singularity.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KsqFamily {
    /// `g / ((2r+3)(4(r+1) - g(2r+3)))`, worst point `[3,2^r]`.
    ConfigI,
    /// `2 / ((2g+3)(2g-1))`, worst point `[3,2^g]`.
    ConfigII,
    /// `[3,2^k]`: `2(k+g+2)^2 / ((2k+3)(2g+1)(4gk+4g-1))`.
    Chain3Twos,
    /// `[4]`: `1 / ((2g+1)(2g-1))`.
    Four,
    /// `[3,2^k,3]`: `(k+2) / ((2g+1)(4gk+6g-1))`.
    Chain3Twos3,
    /// `[2,3,2]`: `1 / (4g(2g+1))`.
    Chain232,
    /// `[2;[2],[2],[2^k,3]]`: `1 / (4(2kg+3g+k+1)(2g+1))`.
    Star,
    /// `[2,3,2^k]`, `2 <= k <= 4`: `2(gk-g-k-3)^2 / ((2g+1)(3k+5)(8kg+8g+k-1))`.
    Chain23Twos,
    /// `[2,4]`: `2 / (5*7*13)`.
    Chain24,
}

impl KsqFamily {
    /// Rows of the `K^2` table, in table order.
    pub const TABLE: [KsqFamily; 7] = [
        KsqFamily::Chain3Twos,
        KsqFamily::Four,
        KsqFamily::Chain3Twos3,
        KsqFamily::Chain232,
        KsqFamily::Star,
        KsqFamily::Chain23Twos,
        KsqFamily::Chain24,
    ];

    pub fn id(self) -> &'static str {
        match self {
            KsqFamily::ConfigI => "config-i",
            KsqFamily::ConfigII => "config-ii",
            KsqFamily::Chain3Twos => "[3,2^k]",
            KsqFamily::Four => "[4]",
            KsqFamily::Chain3Twos3 => "[3,2^k,3]",
            KsqFamily::Chain232 => "[2,3,2]",
            KsqFamily::Star => "[2;[2],[2],[2^k,3]]",
            KsqFamily::Chain23Twos => "[2,3,2^k]",
            KsqFamily::Chain24 => "[2,4]",
        }
    }

    /// Whether the formula depends on the second parameter.
    pub fn uses_k(self) -> bool {
        matches!(
            self,
            KsqFamily::ConfigI
                | KsqFamily::Chain3Twos
                | KsqFamily::Chain3Twos3
                | KsqFamily::Star
                | KsqFamily::Chain23Twos
        )
    }

    /// Admissible range of the second parameter.
    pub fn k_range(self) -> (i64, i64) {
        match self {
            KsqFamily::Chain23Twos => (2, 4),
            KsqFamily::ConfigI => (0, 8),
            f if f.uses_k() => (0, i64::MAX),
            _ => (0, 0),
        }
    }

    fn min_genus(self) -> i64 {
        match self {
            KsqFamily::ConfigI => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for KsqFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for KsqFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [KsqFamily::ConfigI, KsqFamily::ConfigII]
            .into_iter()
            .chain(KsqFamily::TABLE)
            .find(|f| f.id() == s)
            .ok_or_else(|| format!("unknown K^2 family `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KsqValue {
    Positive(Rational),
    /// The closed form is zero, negative, or has a vanishing denominator.
    NonPositive,
}

impl KsqValue {
    pub fn positive(self) -> Option<Rational> {
        match self {
            KsqValue::Positive(v) => Some(v),
            KsqValue::NonPositive => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KsqDomainError {
    #[error("{family} needs g >= {min}, got g = {g}")]
    Genus { family: KsqFamily, min: i64, g: i64 },
    #[error("{family} needs k in [{lo}, {hi}], got k = {k}")]
    Parameter { family: KsqFamily, lo: i64, hi: i64, k: i64 },
}

fn ratio(num: i64, den: i64) -> KsqValue {
    if den == 0 {
        return KsqValue::NonPositive;
    }
    let v = Rational::new(BigInt::from(num), BigInt::from(den));
    if v.is_positive() {
        KsqValue::Positive(v)
    } else {
        KsqValue::NonPositive
    }
}

/// Evaluates a formula without domain checks; searches use this directly
/// because their ranges already encode the domain.
pub fn ksq_raw(family: KsqFamily, g: i64, k: i64) -> KsqValue {
    match family {
        KsqFamily::ConfigI => ratio(g, (2 * k + 3) * (4 * (k + 1) - g * (2 * k + 3))),
        KsqFamily::ConfigII => ratio(2, (2 * g + 3) * (2 * g - 1)),
        KsqFamily::Chain3Twos => {
            ratio(2 * (k + g + 2).pow(2), (2 * k + 3) * (2 * g + 1) * (4 * g * k + 4 * g - 1))
        }
        KsqFamily::Four => ratio(1, (2 * g + 1) * (2 * g - 1)),
        KsqFamily::Chain3Twos3 => ratio(k + 2, (2 * g + 1) * (4 * g * k + 6 * g - 1)),
        KsqFamily::Chain232 => ratio(1, 4 * g * (2 * g + 1)),
        KsqFamily::Star => ratio(1, 4 * (2 * k * g + 3 * g + k + 1) * (2 * g + 1)),
        KsqFamily::Chain23Twos => ratio(
            2 * (g * k - g - k - 3).pow(2),
            (2 * g + 1) * (3 * k + 5) * (8 * k * g + 8 * g + k - 1),
        ),
        KsqFamily::Chain24 => ratio(2, 5 * 7 * 13),
    }
}

pub fn ksq_formula(family: KsqFamily, g: i64, k: i64) -> Result<KsqValue, KsqDomainError> {
    let min = family.min_genus();
    if g < min {
        return Err(KsqDomainError::Genus { family, min, g });
    }
    let (lo, hi) = family.k_range();
    if family.uses_k() && !(lo..=hi).contains(&k) {
        return Err(KsqDomainError::Parameter { family, lo, hi, k });
    }
    Ok(ksq_raw(family, g, if family.uses_k() { k } else { 0 }))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("self-intersection of the boundary class is zero")]
pub struct ZeroSigma;

/// `K^2 = (K.S)^2 / S^2` on a Picard-rank-one surface.
pub fn ksq_from_sigma(k_dot_sigma: &Rational, sigma_sq: &Rational) -> Result<Rational, ZeroSigma> {
    if sigma_sq.is_zero() {
        return Err(ZeroSigma);
    }
    Ok(k_dot_sigma * k_dot_sigma / sigma_sq)
}
