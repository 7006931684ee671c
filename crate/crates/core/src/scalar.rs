//! Number types the solver runs over.

use alloc::format;
use alloc::string::ToString;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, NumOps, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Comparison tolerance used in floating-point mode unless configured otherwise.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// An ordered field: either exact rationals or `f64`.
///
/// Comparisons go through [`Scalar::approx_cmp`], which ignores the tolerance for
/// exact types.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Num
    + Signed
    + for<'a> NumOps<&'a Self, Self>
    + Send
    + Sync
    + 'static
{
    const EXACT: bool;

    fn from_int(v: i64) -> Self;
    fn from_u64(v: u64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    /// `None` when the value is not finite.
    fn from_f64(v: f64) -> Option<Self>;
    fn to_f64(&self) -> f64;
    fn to_rational(&self) -> Option<Rational>;

    fn approx_cmp(&self, other: &Self, tol: f64) -> Ordering;

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.approx_cmp(other, tol) == Ordering::Equal
    }

    /// `self < other` by more than the tolerance.
    fn definitely_lt(&self, other: &Self, tol: f64) -> bool {
        self.approx_cmp(other, tol) == Ordering::Less
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.approx_eq(&Self::zero(), tol)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_u64(v: u64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_f64(v: f64) -> Option<Self> {
        <Rational as FromPrimitive>::from_f64(v)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn approx_cmp(&self, other: &Self, _tol: f64) -> Ordering {
        self.cmp(other)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_u64(v: u64) -> Self {
        v as f64
    }

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn from_f64(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Option<Rational> {
        <Rational as FromPrimitive>::from_f64(*self)
    }

    fn approx_cmp(&self, other: &Self, tol: f64) -> Ordering {
        if (self - other).abs() <= tol {
            Ordering::Equal
        } else {
            self.total_cmp(other)
        }
    }
}

/// Parses `p/q`, integers and plain decimals (`0.25`, `-3`, `1.5e-2`) into an exact
/// rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Number(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str_radix(p.trim(), 10).map_err(|_| bad())?;
        let q = BigInt::from_str_radix(q.trim(), 10).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let joined = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str_radix(&joined, 10).map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), q(-7, 1));
        assert_eq!(parse_rational("0.125").unwrap(), q(1, 8));
        assert_eq!(parse_rational("1.5e-2").unwrap(), q(3, 200));
        assert_eq!(parse_rational("2E3").unwrap(), q(2000, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        for bad in ["", "1/0", "abc", "1.2.3", "-", "1/x"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn float_comparison_uses_absolute_tolerance() {
        assert!(1.0f64.approx_eq(&(1.0 + 1e-10), 1e-9));
        assert!(1.0f64.definitely_lt(&1.1, 1e-9));
        assert!(!1.0f64.definitely_lt(&(1.0 + 1e-12), 1e-9));
        assert!(q(1, 3).definitely_lt(&q(1, 2), 1.0));
    }

    #[test]
    fn rational_display_is_p_over_q() {
        assert_eq!(q(4, 6).to_string(), "2/3");
        assert_eq!(q(3, 1).to_string(), "3");
    }
}
