//! Decimal fixed-point reals on top of `BigInt`, for the few quantities that
//! are not exact (π, square roots, real powers).
//!
//! A [`Real`] with precision `p` stores `round(x · 10^(p + GUARD_DIGITS))`.
//! Every operation truncates at that scale, so results carry an error of a few
//! units in the last guard digit.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Extra digits carried beyond the requested precision.
pub const GUARD_DIGITS: u32 = 12;

/// Smallest precision accepted anywhere.
pub const MIN_PRECISION: u32 = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Real {
    scaled: BigInt,
    digits: u32,
}

fn pow10(n: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), n as usize)
}

/// `round(a / b)` for `b > 0`.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if (r << 1u32) >= *b {
        q + 1
    } else {
        q
    }
}

impl Real {
    fn scale(&self) -> u32 {
        self.digits + GUARD_DIGITS
    }

    fn raw(scaled: BigInt, digits: u32) -> Real {
        Real { scaled, digits }
    }

    pub fn precision(&self) -> u32 {
        self.digits
    }

    pub fn from_int(n: impl Into<BigInt>, digits: u32) -> Real {
        Real::raw(n.into() * pow10(digits + GUARD_DIGITS), digits)
    }

    pub fn from_ratio(r: &BigRational, digits: u32) -> Real {
        let num = r.numer() * pow10(digits + GUARD_DIGITS);
        Real::raw(div_round(&num, r.denom()), digits)
    }

    pub fn zero(digits: u32) -> Real {
        Real::raw(BigInt::zero(), digits)
    }

    pub fn is_negative(&self) -> bool {
        self.scaled.is_negative()
    }

    fn same(&self, other: &Real) -> u32 {
        assert_eq!(self.digits, other.digits, "mixed precisions");
        self.digits
    }

    pub fn add(&self, other: &Real) -> Real {
        Real::raw(&self.scaled + &other.scaled, self.same(other))
    }

    pub fn sub(&self, other: &Real) -> Real {
        Real::raw(&self.scaled - &other.scaled, self.same(other))
    }

    pub fn neg(&self) -> Real {
        Real::raw(-&self.scaled, self.digits)
    }

    pub fn abs(&self) -> Real {
        Real::raw(self.scaled.abs(), self.digits)
    }

    pub fn mul(&self, other: &Real) -> Real {
        let d = self.same(other);
        Real::raw(div_round(&(&self.scaled * &other.scaled), &pow10(self.scale())), d)
    }

    pub fn mul_int(&self, n: &BigInt) -> Real {
        Real::raw(&self.scaled * n, self.digits)
    }

    pub fn div(&self, other: &Real) -> Result<Real> {
        let d = self.same(other);
        if other.scaled.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        let num = &self.scaled * pow10(self.scale());
        let q = div_round(&(num.abs()), &other.scaled.abs());
        let negative = (self.scaled.sign() == Sign::Minus) != (other.scaled.sign() == Sign::Minus);
        Ok(Real::raw(if negative { -q } else { q }, d))
    }

    pub fn div_int(&self, n: &BigInt) -> Result<Real> {
        self.div(&Real::from_int(n.clone(), self.digits))
    }

    pub fn sqrt(&self) -> Result<Real> {
        if self.is_negative() {
            return Err(Error::Domain("square root of a negative number".into()));
        }
        Ok(Real::raw((&self.scaled * pow10(self.scale())).sqrt(), self.digits))
    }

    /// `π` by Machin's formula `16·atan(1/5) − 4·atan(1/239)`.
    pub fn pi(digits: u32) -> Real {
        let one = pow10(digits + GUARD_DIGITS + 5);
        let atan_inv = |x: u32| -> BigInt {
            let x = BigInt::from(x);
            let x2 = &x * &x;
            let mut power = &one / &x;
            let mut sum = power.clone();
            let mut k = 1u32;
            while !power.is_zero() {
                power /= &x2;
                let term = &power / BigInt::from(2 * k + 1);
                if k % 2 == 1 {
                    sum -= term;
                } else {
                    sum += term;
                }
                k += 1;
            }
            sum
        };
        let v = atan_inv(5) * 16 - atan_inv(239) * 4;
        Real::raw(div_round(&v, &BigInt::from(100_000)), digits)
    }

    /// `ln 2 = 2·atanh(1/3)`.
    fn ln2(digits: u32) -> Real {
        Real::atanh_inv(3, digits).mul_int(&BigInt::from(2))
    }

    /// `atanh(1/n)` for an integer `n ≥ 2`.
    fn atanh_inv(n: u32, digits: u32) -> Real {
        let third = Real::from_ratio(&BigRational::new(BigInt::one(), BigInt::from(n)), digits);
        third.atanh_series()
    }

    /// `Σ x^(2k+1)/(2k+1)` for `|x| < 1`.
    fn atanh_series(&self) -> Real {
        let x2 = self.mul(self);
        let mut power = self.clone();
        let mut sum = self.clone();
        let mut k = 1u32;
        loop {
            power = power.mul(&x2);
            if power.scaled.is_zero() {
                break;
            }
            sum = sum.add(&Real::raw(&power.scaled / BigInt::from(2 * k + 1), self.digits));
            k += 1;
        }
        sum
    }

    /// Natural logarithm of a positive number.
    pub fn ln(&self) -> Result<Real> {
        if self.scaled.sign() != Sign::Plus {
            return Err(Error::Domain("logarithm of a non-positive number".into()));
        }
        // Bring the argument into [1/√2, √2] by powers of two.
        let one = pow10(self.scale());
        let bits = self.scaled.bits() as i64 - one.bits() as i64;
        let shifted = if bits >= 0 { &self.scaled >> bits as usize } else { &self.scaled << (-bits) as usize };
        let m = Real::raw(shifted, self.digits);
        let one_r = Real::from_int(1, self.digits);
        let y = m.sub(&one_r).div(&m.add(&one_r))?;
        let ln_m = y.atanh_series().mul_int(&BigInt::from(2));
        Ok(ln_m.add(&Real::ln2(self.digits).mul_int(&BigInt::from(bits))))
    }

    /// Exponential function.
    pub fn exp(&self) -> Real {
        // exp(x) = exp(x / 2^k)^(2^k) with |x / 2^k| < 1/2.
        let one = pow10(self.scale());
        let mut k = 0u32;
        let mut reduced = self.scaled.clone();
        while reduced.abs() * 2 > one {
            reduced = div_round(&reduced, &BigInt::from(2));
            k += 1;
        }
        let x = Real::raw(reduced, self.digits);
        let mut term = Real::from_int(1, self.digits);
        let mut sum = term.clone();
        let mut n = 1u32;
        loop {
            term = Real::raw(div_round(&term.mul(&x).scaled, &BigInt::from(n)), self.digits);
            if term.scaled.is_zero() {
                break;
            }
            sum = sum.add(&term);
            n += 1;
        }
        for _ in 0..k {
            sum = sum.mul(&sum);
        }
        sum
    }

    /// `self^r` for `self > 0` and rational `r`.
    pub fn pow_ratio(&self, r: &BigRational) -> Result<Real> {
        if r.is_integer() {
            let e = r.to_integer();
            let n = e.abs().to_u32().ok_or_else(|| Error::Resource("exponent too large".into()))?;
            let mut acc = Real::from_int(1, self.digits);
            for _ in 0..n {
                acc = acc.mul(self);
            }
            return if e.is_negative() { Real::from_int(1, self.digits).div(&acc) } else { Ok(acc) };
        }
        // Extra digits absorb the error amplification of exp(r·ln x).
        let extra = self.digits + 20;
        let x = self.with_precision(extra);
        let y = x.ln()?.mul(&Real::from_ratio(r, extra)).exp();
        Ok(y.with_precision(self.digits))
    }

    /// Same value stored at another precision.
    pub fn with_precision(&self, digits: u32) -> Real {
        let from = self.scale();
        let to = digits + GUARD_DIGITS;
        let scaled = match to.cmp(&from) {
            Ordering::Equal => self.scaled.clone(),
            Ordering::Greater => &self.scaled * pow10(to - from),
            Ordering::Less => div_round(&self.scaled, &pow10(from - to)),
        };
        Real::raw(scaled, digits)
    }

    /// Nearest integer and `|self − nearest|`.
    pub fn round(&self) -> (BigInt, Real) {
        let n = div_round(&self.scaled, &pow10(self.scale()));
        let residual = self.sub(&Real::from_int(n.clone(), self.digits)).abs();
        (n, residual)
    }

    /// True when `|self| < 10^(-k)`.
    pub fn below_ten_pow(&self, k: u32) -> bool {
        k <= self.scale() && self.scaled.abs() < pow10(self.scale() - k)
    }

    pub fn to_f64(&self) -> f64 {
        let s = self.to_decimal(17.min(self.digits));
        s.parse().unwrap_or(f64::NAN)
    }

    /// Decimal expansion rounded to `places` digits after the point.
    pub fn to_decimal(&self, places: u32) -> String {
        let places = places.min(self.digits);
        let v = div_round(&self.scaled, &pow10(self.scale() - places));
        let neg = v.is_negative();
        let digits = v.abs().to_string();
        let digits = if digits.len() <= places as usize {
            format!("{}{}", "0".repeat(places as usize + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int, frac) = digits.split_at(digits.len() - places as usize);
        let sign = if neg { "-" } else { "" };
        if places == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }

    pub fn cmp_value(&self, other: &Real) -> Ordering {
        self.same(other);
        self.scaled.cmp(&other.scaled)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(self.digits))
    }
}

/// Serialized as a decimal string at the value's precision.
impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Serializes an exact rational as the string `"p/q"` (or `"p"`).
pub fn serialize_ratio<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Parses a decimal like `-12.5e3` or `3/7` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parameter(format!("cannot read {text:?} as a rational number"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.trim_start_matches(['+', '-']).is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, shift as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-shift) as usize))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_100: &str =
        "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";
    const LN2_50: &str = "0.69314718055994530941723212145817656807550013436025";
    const E_50: &str = "2.71828182845904523536028747135266249775724709369995";
    const SQRT2_50: &str = "1.41421356237309504880168872420969807856967187537694";

    /// References are truncated expansions; compare on a few extra places.
    fn agrees(x: &Real, reference: &str) -> bool {
        let places = reference.len() - reference.find('.').unwrap() - 1;
        x.to_decimal(places as u32 + 3).starts_with(reference)
    }

    #[test]
    fn pi_to_one_hundred_digits() {
        assert!(agrees(&Real::pi(104), PI_100));
        assert!(agrees(&Real::pi(54), &PI_100[..52]));
        assert_eq!(Real::pi(30).to_decimal(4), "3.1416");
    }

    #[test]
    fn elementary_constants() {
        assert!(agrees(&Real::from_int(2, 60).ln().unwrap(), LN2_50));
        assert!(agrees(&Real::from_int(1, 60).exp(), E_50));
        assert!(agrees(&Real::from_int(2, 60).sqrt().unwrap(), SQRT2_50));
        let quarter = BigRational::new(1.into(), 4.into());
        assert!(agrees(&Real::from_int(4, 60).pow_ratio(&quarter).unwrap(), SQRT2_50));
    }

    #[test]
    fn power_matches_integer_root() {
        let r = BigRational::new(7.into(), 3.into());
        let x = Real::from_int(10, 40).pow_ratio(&r).unwrap();
        // 10^(7/3) = cube root of 10^7, checked with an exact integer root.
        let exact = num_integer::Roots::cbrt(&(BigInt::from(10_000_000) * pow10(3 * 40)));
        let got: BigInt = x.to_decimal(40).replace('.', "").parse().unwrap();
        assert!((got - exact).abs() <= BigInt::one());
    }

    #[test]
    fn arithmetic_and_rounding() {
        let a = Real::from_ratio(&BigRational::new(7.into(), 2.into()), 30);
        let (n, res) = a.mul(&Real::from_int(2, 30)).round();
        assert_eq!(n, BigInt::from(7));
        assert!(res.below_ten_pow(25));
        assert_eq!(Real::from_int(-1, 30).div_int(&BigInt::from(8)).unwrap().to_decimal(3), "-0.125");
        assert!(Real::from_int(-1, 30).sqrt().is_err());
        assert!(Real::from_int(0, 30).ln().is_err());
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("1/4").unwrap(), BigRational::new(1.into(), 4.into()));
        assert_eq!(parse_rational("0.25").unwrap(), BigRational::new(1.into(), 4.into()));
        assert_eq!(parse_rational("-1.5e2").unwrap(), BigRational::from_integer((-150).into()));
        assert_eq!(parse_rational("3").unwrap(), BigRational::from_integer(3.into()));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
