//! Exact rational numbers.
//!
//! Every quantity in the game (rates, quantities, budgets, allocations) is a
//! [`Ratio`]. Values are always kept in lowest terms with a positive
//! denominator, so structural equality is numeric equality.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use dashu_int::ops::{DivRem, Gcd, UnsignedAbs};
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// An arbitrary-precision rational number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ratio(RBig);

/// Failure to read a rational from text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational {input:?}: {reason}")]
pub struct ParseRatioError {
    pub input: String,
    pub reason: &'static str,
}

impl Ratio {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Ratio(RBig::from_parts_signed(numer.into(), denom.into()))
    }

    pub fn from_integer(n: i64) -> Self {
        Ratio(RBig::from(n))
    }

    pub fn from_parts(numer: IBig, denom: UBig) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Ratio(RBig::from_parts(numer, denom))
    }

    pub fn zero() -> Self {
        Ratio(RBig::ZERO)
    }

    pub fn one() -> Self {
        Ratio(RBig::ONE)
    }

    pub fn numer(&self) -> &IBig {
        self.0.numerator()
    }

    pub fn denom(&self) -> &UBig {
        self.0.denominator()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        *self.denom() == UBig::ONE
    }

    pub fn is_positive(&self) -> bool {
        self.0 > RBig::ZERO
    }

    pub fn is_negative(&self) -> bool {
        self.0 < RBig::ZERO
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Ratio(RBig::ONE / &self.0)
    }

    /// Returns `self` if positive, otherwise zero.
    pub fn clamp_nonnegative(self) -> Self {
        if self.is_negative() {
            Ratio::zero()
        } else {
            self
        }
    }

    /// Lossy conversion, for presentation only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    /// Renders the value as a decimal with `places` fractional digits,
    /// rounding half away from zero.
    pub fn to_decimal_string(&self, places: usize) -> String {
        let scale = UBig::from(10u8).pow(places);
        let numer = self.numer().unsigned_abs() * &scale;
        let denom = self.denom();
        let mut q = &numer / denom;
        let r = &numer % denom;
        if r * UBig::from(2u8) >= *denom {
            q += UBig::ONE;
        }
        let digits = q.to_string();
        let (int_part, frac_part) = if places == 0 {
            (digits, String::new())
        } else if digits.len() > places {
            let split = digits.len() - places;
            (digits[..split].to_string(), digits[split..].to_string())
        } else {
            ("0".to_string(), format!("{digits:0>places$}"))
        };
        let sign = if self.is_negative() && !q.is_zero() { "-" } else { "" };
        if places == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    fn parse_integer(s: &str, input: &str) -> Result<IBig, ParseRatioError> {
        let err = |reason| ParseRatioError {
            input: input.to_string(),
            reason,
        };
        let (negative, digits) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("expected an integer"));
        }
        let magnitude: IBig = digits.parse().map_err(|_| err("expected an integer"))?;
        Ok(if negative { -magnitude } else { magnitude })
    }

    fn parse_decimal(s: &str, input: &str) -> Result<Self, ParseRatioError> {
        let err = |reason| ParseRatioError {
            input: input.to_string(),
            reason,
        };
        let (negative, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err("no digits"));
        }
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_part) || !all_digits(frac_part) {
            return Err(err("unexpected character"));
        }
        let mut digits = String::with_capacity(int_part.len() + frac_part.len());
        digits.push_str(int_part);
        digits.push_str(frac_part);
        let mut numer: IBig = digits.parse().map_err(|_| err("unexpected character"))?;
        if negative {
            numer = -numer;
        }
        let denom = UBig::from(10u8).pow(frac_part.len());
        Ok(Ratio(RBig::from_parts(numer, denom)))
    }
}

impl FromStr for Ratio {
    type Err = ParseRatioError;

    /// Accepts `"7"`, `"-7"`, `"0.9"`, `".5"`, `"9/10"`, and `"-9/10"`.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s = input.trim();
        if s.is_empty() {
            return Err(ParseRatioError {
                input: input.to_string(),
                reason: "empty",
            });
        }
        match s.split_once('/') {
            Some((n, d)) => {
                let numer = Ratio::parse_integer(n.trim(), input)?;
                let denom = Ratio::parse_integer(d.trim(), input)?;
                if denom.is_zero() {
                    return Err(ParseRatioError {
                        input: input.to_string(),
                        reason: "zero denominator",
                    });
                }
                Ok(Ratio(RBig::from_parts_signed(numer, denom)))
            }
            None => Ratio::parse_decimal(s, input),
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_int() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Ratio {
    fn from(n: i64) -> Self {
        Ratio::from_integer(n)
    }
}

impl From<RBig> for Ratio {
    fn from(r: RBig) -> Self {
        Ratio(r)
    }
}

impl Default for Ratio {
    fn default() -> Self {
        Ratio::zero()
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Ratio> for Ratio {
            type Output = Ratio;
            fn $method(self, rhs: Ratio) -> Ratio {
                Ratio($trait::$method(self.0, rhs.0))
            }
        }

        impl<'a> $trait<&'a Ratio> for Ratio {
            type Output = Ratio;
            fn $method(self, rhs: &'a Ratio) -> Ratio {
                Ratio($trait::$method(self.0, &rhs.0))
            }
        }

        impl<'a> $trait<Ratio> for &'a Ratio {
            type Output = Ratio;
            fn $method(self, rhs: Ratio) -> Ratio {
                Ratio($trait::$method(&self.0, rhs.0))
            }
        }

        impl<'a, 'b> $trait<&'b Ratio> for &'a Ratio {
            type Output = Ratio;
            fn $method(self, rhs: &'b Ratio) -> Ratio {
                Ratio($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

// Division is spelled out so the zero check lives in one place.
impl<'b> Div<&'b Ratio> for &Ratio {
    type Output = Ratio;
    fn div(self, rhs: &'b Ratio) -> Ratio {
        assert!(!rhs.is_zero(), "division by zero");
        Ratio(&self.0 / &rhs.0)
    }
}

impl<'a> Div<&'a Ratio> for Ratio {
    type Output = Ratio;
    fn div(self, rhs: &'a Ratio) -> Ratio {
        &self / rhs
    }
}

impl Div<Ratio> for &Ratio {
    type Output = Ratio;
    fn div(self, rhs: Ratio) -> Ratio {
        self / &rhs
    }
}

impl Div<Ratio> for Ratio {
    type Output = Ratio;
    fn div(self, rhs: Ratio) -> Ratio {
        &self / &rhs
    }
}

impl<'a> AddAssign<&'a Ratio> for Ratio {
    fn add_assign(&mut self, rhs: &'a Ratio) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Ratio> for Ratio {
    fn add_assign(&mut self, rhs: Ratio) {
        self.0 += rhs.0;
    }
}

impl<'a> SubAssign<&'a Ratio> for Ratio {
    fn sub_assign(&mut self, rhs: &'a Ratio) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign<Ratio> for Ratio {
    fn sub_assign(&mut self, rhs: Ratio) {
        self.0 -= rhs.0;
    }
}

impl Neg for Ratio {
    type Output = Ratio;
    fn neg(self) -> Ratio {
        Ratio(-self.0)
    }
}

impl Neg for &Ratio {
    type Output = Ratio;
    fn neg(self) -> Ratio {
        Ratio(-&self.0)
    }
}

impl Sum for Ratio {
    fn sum<I: Iterator<Item = Ratio>>(iter: I) -> Ratio {
        iter.fold(Ratio::zero(), |acc, r| acc + r)
    }
}

impl<'a> Sum<&'a Ratio> for Ratio {
    fn sum<I: Iterator<Item = &'a Ratio>>(iter: I) -> Ratio {
        iter.fold(Ratio::zero(), |mut acc, r| {
            acc += r;
            acc
        })
    }
}

/// An exact running sum kept over a common denominator.
///
/// Adding a term whose denominator already divides the common one costs a
/// small division and a multiply instead of a gcd; the sum is reduced only
/// when read with [`LazySum::to_ratio`].
#[derive(Debug, Clone)]
pub(crate) struct LazySum {
    numer: IBig,
    denom: UBig,
}

impl LazySum {
    pub(crate) fn new() -> Self {
        LazySum {
            numer: IBig::ZERO,
            denom: UBig::ONE,
        }
    }

    /// Adds `numer / denom` (not necessarily in lowest terms).
    fn add_parts(&mut self, numer: IBig, denom: UBig) {
        let (quot, rem) = (&self.denom).div_rem(&denom);
        if rem.is_zero() {
            self.numer += numer * IBig::from(quot);
        } else {
            let g = (&self.denom).gcd(&denom);
            let widen = denom / &g;
            let scale = &self.denom / &g;
            self.numer = &self.numer * IBig::from(widen.clone()) + numer * IBig::from(scale);
            self.denom *= widen;
        }
    }

    pub(crate) fn add(&mut self, value: &Ratio) {
        self.add_parts(value.numer().clone(), value.denom().clone());
    }

    /// Adds `a / p` for positive `p` without reducing it first.
    pub(crate) fn add_quotient(&mut self, a: &Ratio, p: &Ratio) {
        debug_assert!(p.is_positive());
        let numer = a.numer() * IBig::from(p.denom().clone());
        let denom = a.denom() * p.numer().unsigned_abs();
        self.add_parts(numer, denom);
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub(crate) fn to_ratio(&self) -> Ratio {
        Ratio::from_parts(self.numer.clone(), self.denom.clone())
    }

    /// `max{(self - offset) / divisor, 0}` with a single reduction. `divisor`
    /// must be positive.
    pub(crate) fn excess_over(&self, offset: &Ratio, divisor: &LazySum) -> Ratio {
        debug_assert!(divisor.numer > IBig::ZERO);
        // (n/d - on/od) / (wn/wd) = (n*od - on*d) * wd / (d*od*wn)
        let od = IBig::from(offset.denom().clone());
        let d = IBig::from(self.denom.clone());
        let diff = &self.numer * &od - offset.numer() * &d;
        if diff <= IBig::ZERO {
            return Ratio::zero();
        }
        let numer = diff * IBig::from(divisor.denom.clone());
        let denom = (d * od * &divisor.numer).unsigned_abs();
        Ratio::from_parts(numer, denom)
    }
}

/// Shorthand for building a [`Ratio`] in tests and fixtures: `q(9, 10)`.
pub fn q(numer: i64, denom: i64) -> Ratio {
    Ratio::new(numer, denom)
}
