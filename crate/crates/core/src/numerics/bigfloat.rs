use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{usage, Error, Result};
use crate::numerics::Rational;

/// Smallest precision any [`BigFloat`] may carry.
pub const MIN_PRECISION: u32 = 16;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Binary floating-point number `mantissa × 2^exponent` whose mantissa is
/// rounded to at most `precision` bits (round to nearest, ties away from zero).
///
/// Every arithmetic result carries the larger of the operand precisions and
/// is within one unit in the last place of the exact result. Compound
/// routines elsewhere in the crate work at a raised precision and round once
/// at the end, so their documented bounds are relative errors of a few ulps.
#[derive(Clone)]
pub struct BigFloat {
    mantissa: BigInt,
    exponent: i64,
    precision: u32,
}

fn round_shift(m: &BigInt, shift: u64) -> BigInt {
    if shift == 0 {
        return m.clone();
    }
    let half = BigInt::one() << (shift - 1);
    let mag = (m.abs() + half) >> shift;
    if m.is_negative() {
        -mag
    } else {
        mag
    }
}

impl BigFloat {
    fn normalized(mantissa: BigInt, exponent: i64, precision: u32) -> Self {
        assert!(precision >= MIN_PRECISION, "precision below {MIN_PRECISION} bits");
        if mantissa.is_zero() {
            return BigFloat { mantissa, exponent: 0, precision };
        }
        let bits = mantissa.bits();
        let (mut m, mut e) = (mantissa, exponent);
        if bits > precision as u64 {
            let shift = bits - precision as u64;
            m = round_shift(&m, shift);
            e += shift as i64;
            if m.bits() > precision as u64 {
                m >>= 1u32;
                e += 1;
            }
        }
        // Strip trailing zero bits so that equal values share a representation.
        let tz = m.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            m >>= tz;
            e += tz as i64;
        }
        BigFloat { mantissa: m, exponent: e, precision }
    }

    /// Checks a user-facing precision request.
    pub fn check_precision(precision: u32) -> Result<()> {
        if precision < MIN_PRECISION {
            return usage(format!("precision {precision} below the minimum of {MIN_PRECISION} bits"));
        }
        Ok(())
    }

    pub fn zero(precision: u32) -> Self {
        Self::normalized(BigInt::zero(), 0, precision)
    }

    pub fn one(precision: u32) -> Self {
        Self::from_int(1, precision)
    }

    pub fn from_int(value: impl Into<BigInt>, precision: u32) -> Self {
        Self::normalized(value.into(), 0, precision)
    }

    /// `mantissa × 2^exponent`, rounded to `precision`.
    pub fn from_parts(mantissa: BigInt, exponent: i64, precision: u32) -> Self {
        Self::normalized(mantissa, exponent, precision)
    }

    /// Nearest representable value to `num / den` (error under one ulp).
    pub fn from_ratio(num: &BigInt, den: &BigInt, precision: u32) -> Self {
        assert!(!den.is_zero(), "BigFloat::from_ratio with zero denominator");
        if num.is_zero() {
            return Self::zero(precision);
        }
        let shift = (precision as i64 + 8 + den.bits() as i64 - num.bits() as i64).max(0);
        let q = BigInt::from((num.magnitude() << shift as u64) / den.magnitude());
        let q = if num.sign() == den.sign() { q } else { -q };
        Self::normalized(q, -shift, precision)
    }

    pub fn from_rational(value: &Rational, precision: u32) -> Self {
        Self::from_ratio(value.numer(), value.denom(), precision)
    }

    pub fn from_f64(value: f64, precision: u32) -> Self {
        if value == 0.0 || !value.is_finite() {
            return Self::zero(precision);
        }
        let bits = value.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
        Self::normalized(BigInt::from(m) * sign, e, precision)
    }

    /// Parses a decimal literal such as `-12.5e-3` exactly, then rounds.
    pub fn parse_decimal(text: &str, precision: u32) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid decimal literal `{text}`"));
        let t = text.trim();
        let (mant, exp10) = match t.find(['e', 'E']) {
            Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| bad())?),
            None => (t, 0),
        };
        let (neg, mant) = match mant.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mant.strip_prefix('+').unwrap_or(mant)),
        };
        let (int_part, frac_part) = match mant.find('.') {
            Some(i) => (&mant[..i], &mant[i + 1..]),
            None => (mant, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut num: BigInt = digits.parse().map_err(|_| bad())?;
        if neg {
            num = -num;
        }
        let scale = exp10 - frac_part.len() as i64;
        let ten = BigInt::from(10);
        if scale >= 0 {
            Ok(Self::from_int(num * num_traits::pow(ten, scale as usize), precision))
        } else {
            Ok(Self::from_ratio(&num, &num_traits::pow(ten, (-scale) as usize), precision))
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// Same value rounded (or widened) to another precision.
    pub fn with_precision(&self, precision: u32) -> Self {
        Self::normalized(self.mantissa.clone(), self.exponent, precision)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigFloat { mantissa: self.mantissa.abs(), ..self.clone() }
    }

    /// Exponent of the leading bit plus one: `2^(top-1) ≤ |x| < 2^top`.
    fn top(&self) -> i64 {
        self.exponent + self.mantissa.bits() as i64
    }

    /// `⌈log₂|x|⌉`, or `None` for zero.
    pub fn log2_abs_ceil(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        // Mantissas are odd after normalization, so only ±1 is a power of two.
        if self.mantissa.magnitude().is_one() {
            Some(self.exponent)
        } else {
            Some(self.top())
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits();
        let shift = bits.saturating_sub(60);
        let m = (&self.mantissa >> shift).to_f64().unwrap_or(0.0);
        let e = self.exponent + shift as i64;
        let e = e.clamp(-3000, 3000) as i32;
        // Split the scaling so intermediate powers stay finite.
        m * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
    }

    fn add_signed(&self, other: &Self, negate_other: bool) -> Self {
        let precision = self.precision.max(other.precision);
        let other_m = if negate_other { -&other.mantissa } else { other.mantissa.clone() };
        if other.is_zero() {
            return Self::normalized(self.mantissa.clone(), self.exponent, precision);
        }
        if self.is_zero() {
            return Self::normalized(other_m, other.exponent, precision);
        }
        let gap = precision as i64 + 4;
        if self.top() - other.top() > gap {
            return self.with_precision(precision);
        }
        if other.top() - self.top() > gap {
            return Self::normalized(other_m, other.exponent, precision);
        }
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa << (self.exponent - e) as u64;
        let b = other_m << (other.exponent - e) as u64;
        Self::normalized(a + b, e, precision)
    }

    pub fn recip(&self) -> Self {
        BigFloat::one(self.precision) / self
    }

    /// Square root, or `None` for negative input.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let want = 2 * (self.precision as i64 + 4);
        let mut shift = (want - self.mantissa.bits() as i64).max(0);
        if (self.exponent - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m: BigUint = self.mantissa.magnitude() << shift as u64;
        let root = m.sqrt();
        Some(Self::normalized(BigInt::from(root), (self.exponent - shift) / 2, self.precision))
    }

    /// Integer power by repeated squaring; relative error below `2|n|+2` ulps.
    pub fn powi(&self, n: i64) -> Self {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut result = BigFloat::one(self.precision);
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn mul_int(&self, n: impl Into<BigInt>) -> Self {
        Self::normalized(&self.mantissa * n.into(), self.exponent, self.precision)
    }

    pub fn div_int(&self, n: impl Into<BigInt>) -> Self {
        self / &BigFloat::from_int(n, self.precision)
    }

    /// Multiplies by `2^n` exactly.
    pub fn mul_pow2(&self, n: i64) -> Self {
        BigFloat { exponent: if self.is_zero() { 0 } else { self.exponent + n }, ..self.clone() }
    }

    /// Nearest integer (ties away from zero).
    pub fn round_to_int(&self) -> BigInt {
        if self.exponent >= 0 {
            &self.mantissa << self.exponent as u64
        } else {
            round_shift(&self.mantissa, (-self.exponent) as u64)
        }
    }

    /// Decimal rendering with `digits` significant digits.
    ///
    /// Positional notation for decimal exponents in `[-5, 21)`, scientific
    /// (`d.ddde±N`) otherwise.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return if digits > 1 { format!("0.{}", "0".repeat(digits - 1)) } else { "0".into() };
        }
        let mag = self.abs();
        let approx = (mag.top() as f64 - 0.5) / LOG2_10;
        let mut e10 = approx.floor() as i64;
        let mut n = mag.scaled_decimal_integer(digits as i64 - 1 - e10);
        let ten_pow = num_traits::pow(BigInt::from(10), digits);
        let lower = num_traits::pow(BigInt::from(10), digits - 1);
        // The f64 estimate of the exponent can be off by one in either direction.
        for _ in 0..3 {
            if n >= ten_pow {
                e10 += 1;
            } else if n < lower {
                e10 -= 1;
            } else {
                break;
            }
            n = mag.scaled_decimal_integer(digits as i64 - 1 - e10);
        }
        if n >= ten_pow {
            // Rounding carried into a new digit: 99.96 -> 100.0
            n /= 10;
            e10 += 1;
        }
        let ds = n.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        if (-5..21).contains(&e10) {
            let body = if e10 >= 0 {
                let int_len = e10 as usize + 1;
                if int_len >= ds.len() {
                    format!("{}{}", ds, "0".repeat(int_len - ds.len()))
                } else {
                    format!("{}.{}", &ds[..int_len], &ds[int_len..])
                }
            } else {
                format!("0.{}{}", "0".repeat((-e10 - 1) as usize), ds)
            };
            format!("{sign}{body}")
        } else {
            let body = if ds.len() > 1 { format!("{}.{}", &ds[..1], &ds[1..]) } else { ds };
            format!("{sign}{body}e{e10}")
        }
    }

    /// `round(|x| · 10^t)` computed exactly from the binary representation.
    fn scaled_decimal_integer(&self, t: i64) -> BigInt {
        let mut num = self.mantissa.abs();
        let mut den = BigInt::one();
        let ten = BigInt::from(10);
        if t >= 0 {
            num *= num_traits::pow(ten, t as usize);
        } else {
            den *= num_traits::pow(ten, (-t) as usize);
        }
        if self.exponent >= 0 {
            num <<= self.exponent as u64;
        } else {
            den <<= (-self.exponent) as u64;
        }
        let (q, r) = num.div_rem(&den);
        if r * 2 >= den {
            q + 1
        } else {
            q
        }
    }

    /// Decimal digits that `precision` bits can faithfully represent.
    pub fn decimal_digits(&self) -> usize {
        ((self.precision as f64) / LOG2_10).floor() as usize
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.mantissa.sign(), other.mantissa.sign());
        if sa != sb {
            let rank = |s: Sign| match s {
                Sign::Minus => 0,
                Sign::NoSign => 1,
                Sign::Plus => 2,
            };
            return rank(sa).cmp(&rank(sb));
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        let mag = match self.top().cmp(&other.top()) {
            Ordering::Equal => {
                let e = self.exponent.min(other.exponent);
                let a = self.mantissa.magnitude() << (self.exponent - e) as u64;
                let b = other.mantissa.magnitude() << (other.exponent - e) as u64;
                a.cmp(&b)
            }
            ord => ord,
        };
        if sa == Sign::Minus {
            mag.reverse()
        } else {
            mag
        }
    }
}

impl PartialEq for BigFloat {
    /// Value equality; precision is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.mantissa == other.mantissa && self.exponent == other.exponent
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({}, prec={})", self.to_decimal(self.decimal_digits().clamp(1, 40)), self.precision)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or_else(|| self.decimal_digits().max(1));
        f.write_str(&self.to_decimal(digits))
    }
}

impl<'a> Add<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: &BigFloat) -> BigFloat {
        self.add_signed(rhs, false)
    }
}

impl<'a> Sub<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: &BigFloat) -> BigFloat {
        self.add_signed(rhs, true)
    }
}

impl<'a> Mul<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: &BigFloat) -> BigFloat {
        BigFloat::normalized(
            &self.mantissa * &rhs.mantissa,
            self.exponent + rhs.exponent,
            self.precision.max(rhs.precision),
        )
    }
}

impl<'a> Div<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn div(self, rhs: &BigFloat) -> BigFloat {
        assert!(!rhs.is_zero(), "BigFloat division by zero");
        let precision = self.precision.max(rhs.precision);
        if self.is_zero() {
            return BigFloat::zero(precision);
        }
        let shift =
            (precision as i64 + 8 + rhs.mantissa.bits() as i64 - self.mantissa.bits() as i64).max(0);
        let q = (&self.mantissa << shift as u64) / &rhs.mantissa;
        BigFloat::normalized(q, self.exponent - rhs.exponent - shift, precision)
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { mantissa: -&self.mantissa, ..self.clone() }
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { mantissa: -self.mantissa, ..self }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &BigFloat) -> BigFloat { (&self).$m(rhs) }
        }
        impl<'a> $tr<BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for BigFloat {
    /// Panics on an empty iterator, which has no precision to inherit.
    fn sum<I: Iterator<Item = BigFloat>>(mut iter: I) -> BigFloat {
        let first = iter.next().expect("sum of an empty BigFloat iterator");
        iter.fold(first, |acc, x| &acc + &x)
    }
}

/// Binary precision used for a request of `digits` decimal digits:
/// `⌈digits · log₂10⌉ + 64`.
pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32 + 64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(x: f64) -> BigFloat {
        BigFloat::from_f64(x, 64)
    }

    #[test]
    fn basic_arithmetic_matches_f64() {
        assert_eq!((bf(1.5) + bf(2.25)).to_f64(), 3.75);
        assert_eq!((bf(1.5) - bf(2.25)).to_f64(), -0.75);
        assert_eq!((bf(1.5) * bf(-2.0)).to_f64(), -3.0);
        assert!(((bf(1.0) / bf(3.0)).to_f64() - 1.0 / 3.0).abs() < 1e-16);
        assert_eq!(bf(2.0).powi(10).to_f64(), 1024.0);
        assert_eq!(bf(2.0).powi(-2).to_f64(), 0.25);
    }

    #[test]
    fn sqrt_two() {
        let r = BigFloat::from_int(2, 200).sqrt().unwrap();
        let back = &r * &r;
        let err = (&back - &BigFloat::from_int(2, 200)).abs();
        assert!(err.log2_abs_ceil().map_or(true, |l| l < -195));
        assert!(BigFloat::from_int(-1, 64).sqrt().is_none());
    }

    #[test]
    fn rounding_to_precision() {
        let x = BigFloat::from_int((1u64 << 20) + 1, 16);
        assert_eq!(x.to_f64(), (1u64 << 20) as f64);
        let y = BigFloat::from_int(0xFFFF_Fu64, 16);
        assert_eq!(y.to_f64(), (1u64 << 20) as f64);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(BigFloat::from_f64(0.5, 64).to_decimal(3), "0.500");
        assert_eq!(BigFloat::from_int(-1234, 64).to_decimal(6), "-1234.00");
        assert_eq!(BigFloat::from_int(100, 64).to_decimal(2), "100");
        assert_eq!(BigFloat::from_f64(9.996, 64).to_decimal(3), "10.0");
        let third = BigFloat::from_ratio(&1.into(), &3.into(), 128);
        assert_eq!(third.to_decimal(10), "0.3333333333");
        let tiny = BigFloat::from_ratio(&1.into(), &BigInt::from(10).pow(30), 128);
        assert_eq!(tiny.to_decimal(4), "1.000e-30");
        assert_eq!(BigFloat::zero(64).to_decimal(3), "0.00");
    }

    #[test]
    fn decimal_parsing() {
        let x = BigFloat::parse_decimal("-12.5e-1", 64).unwrap();
        assert_eq!(x.to_f64(), -1.25);
        assert_eq!(BigFloat::parse_decimal(".5", 64).unwrap().to_f64(), 0.5);
        assert!(BigFloat::parse_decimal("1.2.3", 64).is_err());
        assert!(BigFloat::parse_decimal("abc", 64).is_err());
    }

    #[test]
    fn ordering_and_log2() {
        assert!(bf(1.0) < bf(1.5));
        assert!(bf(-2.0) < bf(-1.0));
        assert!(bf(-1.0) < BigFloat::zero(64));
        assert_eq!(bf(1.0).log2_abs_ceil(), Some(0));
        assert_eq!(bf(0.75).log2_abs_ceil(), Some(0));
        assert_eq!(bf(4.0).log2_abs_ceil(), Some(2));
        assert_eq!(bf(5.0).log2_abs_ceil(), Some(3));
        assert_eq!(BigFloat::zero(64).log2_abs_ceil(), None);
    }

    #[test]
    fn round_to_int_ties_away() {
        assert_eq!(bf(2.5).round_to_int(), BigInt::from(3));
        assert_eq!(bf(-2.5).round_to_int(), BigInt::from(-3));
        assert_eq!(bf(7.0).round_to_int(), BigInt::from(7));
    }

    #[test]
    fn precision_check() {
        assert!(BigFloat::check_precision(15).is_err());
        assert!(BigFloat::check_precision(16).is_ok());
        assert_eq!(digits_to_bits(100), 397);
    }
}
