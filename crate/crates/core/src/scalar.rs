//! Arithmetic modes.
//!
//! Every coefficient container is generic over [`Scalar`]. The exact mode is
//! [`BigRational`]: comparisons are exact and the tolerance argument is
//! ignored. The numeric mode is `f64`: nonnegativity and equality are decided
//! relative to a scale with a [`Tolerance`]. The mode is fixed by the type the
//! caller picks, never inferred from the values.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Relative tolerance used by the numeric mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance(pub f64);

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance(1e-9);

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// A coefficient field: exact rationals or binary floating point.
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialOrd + Num + Signed + Send + Sync + 'static
{
    /// `true` for exact arithmetic.
    const EXACT: bool;

    fn from_rational(q: &BigRational) -> Self;

    fn from_u64(v: u64) -> Self;

    fn to_f64(&self) -> f64;

    /// `margin >= 0`, or `margin >= -tol * scale` in numeric mode.
    fn nonneg_within(margin: &Self, scale: &Self, tol: Tolerance) -> bool;

    /// `margin == 0`, or `|margin| <= tol * scale` in numeric mode.
    fn zero_within(margin: &Self, scale: &Self, tol: Tolerance) -> bool;

    /// Rejects NaN and infinities; always `true` for exact values.
    fn is_finite_value(&self) -> bool {
        true
    }

    fn max_of(a: &Self, b: &Self) -> Self {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn from_u64(v: u64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        // Ratio::to_f64 handles numerators and denominators beyond f64 range.
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn nonneg_within(margin: &Self, _scale: &Self, _tol: Tolerance) -> bool {
        !margin.is_negative()
    }

    fn zero_within(margin: &Self, _scale: &Self, _tol: Tolerance) -> bool {
        margin.is_zero()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(q: &BigRational) -> Self {
        Scalar::to_f64(q)
    }

    fn from_u64(v: u64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn nonneg_within(margin: &Self, scale: &Self, tol: Tolerance) -> bool {
        *margin >= -tol.0 * scale.abs()
    }

    fn zero_within(margin: &Self, scale: &Self, tol: Tolerance) -> bool {
        margin.abs() <= tol.0 * scale.abs()
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

/// Exact rational with the same value as `x`. `None` for NaN or infinities.
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_f64(x)
}

/// Parses an integer, decimal (`0.125`, `-3e-2`) or fraction (`7/3`) literal as
/// an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all_digits.parse::<BigInt>().ok()?);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    if negative {
        value = -value;
    }
    Some(value)
}

pub(crate) fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_and_fraction_literals() {
        assert_eq!(parse_rational("7/3"), Some(rational(7, 3)));
        assert_eq!(parse_rational("0.125"), Some(rational(1, 8)));
        assert_eq!(parse_rational("-3e-2"), Some(rational(-3, 100)));
        assert_eq!(parse_rational("4"), Some(rational(4, 1)));
        assert_eq!(parse_rational(".5"), Some(rational(1, 2)));
        assert_eq!(parse_rational("1.5E1"), Some(rational(15, 1)));
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational(""), None);
    }

    #[test]
    fn float_conversion_is_exact() {
        let q = rational_from_f64(0.1).unwrap();
        assert_ne!(q, rational(1, 10));
        assert_eq!(Scalar::to_f64(&q), 0.1);
        assert!(rational_from_f64(f64::NAN).is_none());
    }

    #[test]
    fn numeric_mode_uses_relative_tolerance() {
        let tol = Tolerance::DEFAULT;
        assert!(f64::nonneg_within(&-1e-10, &1.0, tol));
        assert!(!f64::nonneg_within(&-1e-8, &1.0, tol));
        assert!(f64::zero_within(&5e-10, &1.0, tol));
        assert!(!BigRational::nonneg_within(&rational(-1, 1_000_000_000_000), &BigRational::from_integer(1.into()), tol));
    }
}
