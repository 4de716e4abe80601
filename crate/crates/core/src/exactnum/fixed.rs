//! Binary fixed-point reals with 192 fractional bits.
//!
//! Used for generator values and for reducing `τ·λ mod 2π` when τ is huge.
//! Decimal output carries 64 fractional digits, enough for exact round trips.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;
use crate::error::{Error, Result};

pub const FRAC_BITS: u64 = 192;
const GUARD_BITS: u64 = 32;
const DECIMAL_DIGITS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fixed {
    m: BigInt,
}

/// floor((x + 2^(bits-1)) / 2^bits)
fn round_shift(x: BigInt, bits: u64) -> BigInt {
    if bits == 0 {
        return x;
    }
    (x + (BigInt::one() << (bits - 1))) >> bits
}

/// Nearest-integer quotient for b != 0.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (a, b) = if b.is_negative() { (-a, -b) } else { (a.clone(), b.clone()) };
    let num: BigInt = a * 2u32 + &b;
    num.div_floor(&(b * 2u32))
}

impl Fixed {
    pub fn zero() -> Self {
        Fixed { m: BigInt::zero() }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Fixed { m: n.into() << FRAC_BITS }
    }

    pub fn from_rational(r: &Rational) -> Self {
        Fixed { m: round_div(&(r.num() << FRAC_BITS), r.den()) }
    }

    /// Exact for every finite double whose binary expansion fits in 192
    /// fractional bits; otherwise rounded to nearest.
    pub fn from_f64(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite value {x}")));
        }
        if x == 0.0 {
            return Ok(Fixed::zero());
        }
        let bits = x.to_bits();
        let neg = bits >> 63 == 1;
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
        let mant = BigInt::from(mant);
        let shift = e + FRAC_BITS as i64;
        let m = if shift >= 0 { mant << shift as u64 } else { round_shift(mant, (-shift) as u64) };
        Ok(Fixed { m: if neg { -m } else { m } })
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.m.bits();
        let (top, shift) = if bits > 64 {
            let s = bits - 64;
            (&self.m >> s, s as i64)
        } else {
            (self.m.clone(), 0)
        };
        let v = top.to_f64().unwrap_or(0.0);
        v * 2f64.powi((shift - FRAC_BITS as i64) as i32)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn abs(&self) -> Self {
        Fixed { m: self.m.abs() }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Fixed { m: &self.m * k }
    }

    pub fn div_int(&self, k: &BigInt) -> Self {
        Fixed { m: round_div(&self.m, k) }
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        Fixed { m: round_div(&(&self.m * r.num()), r.den()) }
    }

    pub fn floor(&self) -> BigInt {
        &self.m >> FRAC_BITS
    }

    pub fn round(&self) -> BigInt {
        round_shift(self.m.clone(), FRAC_BITS)
    }

    /// Representative in `[0, modulus)`; `modulus` must be positive.
    pub fn rem_euclid(&self, modulus: &Fixed) -> Fixed {
        assert!(modulus.m.is_positive(), "modulus must be positive");
        Fixed { m: self.m.mod_floor(&modulus.m) }
    }

    /// Representative in `[-modulus/2, modulus/2)`.
    pub fn rem_centered(&self, modulus: &Fixed) -> Fixed {
        let half = Fixed { m: &modulus.m >> 1 };
        let shifted = self + &half;
        &shifted.rem_euclid(modulus) - &half
    }

    pub fn sqrt(&self) -> Result<Fixed> {
        if self.m.is_negative() {
            return Err(Error::InvalidArgument("square root of a negative number".into()));
        }
        // sqrt(m·2^-F) = sqrt(m·2^(F+2G))·2^-(F+G), rounded back by G bits.
        let wide = (&self.m << (FRAC_BITS + 2 * GUARD_BITS)).sqrt();
        Ok(Fixed { m: round_shift(wide, GUARD_BITS) })
    }

    pub fn pi() -> Fixed {
        static PI: OnceLock<Fixed> = OnceLock::new();
        PI.get_or_init(|| {
            // Machin: π = 16·atan(1/5) − 4·atan(1/239)
            let w = FRAC_BITS + GUARD_BITS;
            let v = atan_inv(5, w) * 16 - atan_inv(239, w) * 4;
            Fixed { m: round_shift(v, GUARD_BITS) }
        })
        .clone()
    }

    pub fn two_pi() -> Fixed {
        Fixed { m: Fixed::pi().m << 1 }
    }

    fn ln2_wide() -> BigInt {
        static LN2: OnceLock<BigInt> = OnceLock::new();
        LN2.get_or_init(|| {
            let w = FRAC_BITS + GUARD_BITS;
            atanh_ratio(&BigInt::one(), &BigInt::from(3), w) << 1
        })
        .clone()
    }

    /// Natural log of a positive integer.
    pub fn ln_int(n: &BigInt) -> Result<Fixed> {
        Ok(Fixed { m: round_shift(ln_int_wide(n)?, GUARD_BITS) })
    }

    /// Natural log of a positive rational.
    pub fn ln_rational(r: &Rational) -> Result<Fixed> {
        let v = ln_int_wide(r.num())? - ln_int_wide(r.den())?;
        Ok(Fixed { m: round_shift(v, GUARD_BITS) })
    }

    /// Decimal rendering with exactly 64 fractional digits.
    pub fn to_decimal(&self) -> String {
        let scale = BigInt::from(10u32).pow(DECIMAL_DIGITS);
        let total = round_shift(self.m.abs() * &scale, FRAC_BITS);
        let (ip, fp) = total.div_rem(&scale);
        let sign = if self.m.is_negative() && !total.is_zero() { "-" } else { "" };
        format!("{sign}{ip}.{fp:0>width$}", width = DECIMAL_DIGITS as usize)
    }

    /// Parses `[-]digits[.digits][e[-]digits]`.
    pub fn parse_decimal(s: &str) -> Result<Fixed> {
        let bad = || Error::Parse(format!("invalid decimal {s:?}"));
        let t = s.trim();
        let (neg, t) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (mant, exp) = match t.find(['e', 'E']) {
            Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
            None => (t, 0),
        };
        let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
        if ip.is_empty() && fp.is_empty() {
            return Err(bad());
        }
        if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{ip}{fp}0").parse::<BigInt>().map_err(|_| bad())? / 10;
        let e10 = exp as i64 - fp.len() as i64;
        let mut num = digits << FRAC_BITS;
        let mut den = BigInt::one();
        if e10 >= 0 {
            num *= BigInt::from(10u32).pow(e10 as u32);
        } else {
            den = BigInt::from(10u32).pow((-e10) as u32);
        }
        let m = round_div(&num, &den);
        Ok(Fixed { m: if neg { -m } else { m } })
    }
}

/// atan(1/x) scaled by 2^w.
fn atan_inv(x: u64, w: u64) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = (BigInt::one() << w) / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// atanh(p/q) scaled by 2^w, for 0 <= p/q < 1.
fn atanh_ratio(p: &BigInt, q: &BigInt, w: u64) -> BigInt {
    let mut num = p << w;
    let mut sum = BigInt::zero();
    let p2 = p * p;
    let q2 = q * q;
    let mut k = 0u64;
    loop {
        let term = &num / (q * BigInt::from(2 * k + 1));
        if term.is_zero() {
            break;
        }
        sum += term;
        num = num * &p2 / &q2;
        k += 1;
    }
    sum
}

/// ln(n) scaled by 2^(F+G).
fn ln_int_wide(n: &BigInt) -> Result<BigInt> {
    if !n.is_positive() {
        return Err(Error::InvalidArgument(format!("logarithm of non-positive {n}")));
    }
    let w = FRAC_BITS + GUARD_BITS;
    // n = 2^k·y with y in [1, 2); ln y = 2·atanh((n − 2^k)/(n + 2^k)).
    let k = n.bits() - 1;
    let pk = BigInt::one() << k;
    let rest = atanh_ratio(&(n - &pk), &(n + &pk), w) << 1;
    Ok(Fixed::ln2_wide() * BigInt::from(k) + rest)
}

impl Add for &Fixed {
    type Output = Fixed;
    fn add(self, rhs: &Fixed) -> Fixed {
        Fixed { m: &self.m + &rhs.m }
    }
}

impl Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, rhs: &Fixed) -> Fixed {
        Fixed { m: &self.m - &rhs.m }
    }
}

impl Mul for &Fixed {
    type Output = Fixed;
    fn mul(self, rhs: &Fixed) -> Fixed {
        Fixed { m: round_shift(&self.m * &rhs.m, FRAC_BITS) }
    }
}

impl Div for &Fixed {
    type Output = Fixed;
    fn div(self, rhs: &Fixed) -> Fixed {
        assert!(!rhs.is_zero(), "division by zero");
        Fixed { m: round_div(&(&self.m << FRAC_BITS), &rhs.m) }
    }
}

impl Neg for &Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed { m: -&self.m }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Fixed {
            type Output = Fixed;
            fn $f(self, rhs: Fixed) -> Fixed { (&self).$f(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed { m: -self.m }
    }
}

impl PartialEq<f64> for Fixed {
    fn eq(&self, other: &f64) -> bool {
        Fixed::from_f64(*other).is_ok_and(|o| *self == o)
    }
}

impl PartialOrd<f64> for Fixed {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        Fixed::from_f64(*other).ok().map(|o| self.cmp(&o))
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

impl FromStr for Fixed {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Fixed::parse_decimal(s)
    }
}

impl Serialize for Fixed {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_decimal())
    }
}

impl<'de> Deserialize<'de> for Fixed {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Num(f64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Num(x) => Fixed::from_f64(x).map_err(serde::de::Error::custom),
        }
    }
}

impl From<i64> for Fixed {
    fn from(n: i64) -> Self {
        Fixed::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_50: &str = "3.14159265358979323846264338327950288419716939937510";
    const LN2_50: &str = "0.69314718055994530941723212145817656807550013436025";
    const LN3_50: &str = "1.09861228866810969139524523692252570464749055782274";
    const SQRT2_50: &str = "1.41421356237309504880168872420969807856967187537694";

    fn close(x: &Fixed, reference: &str) {
        let r = Fixed::parse_decimal(reference).unwrap();
        let diff = (x - &r).abs();
        assert!(diff < Fixed::parse_decimal("1e-49").unwrap(), "{x} vs {reference}");
    }

    #[test]
    fn constants() {
        close(&Fixed::pi(), PI_50);
        close(&Fixed::ln_int(&BigInt::from(2)).unwrap(), LN2_50);
        close(&Fixed::ln_int(&BigInt::from(3)).unwrap(), LN3_50);
        close(&Fixed::from_int(2).sqrt().unwrap(), SQRT2_50);
        let l6 = Fixed::ln_int(&BigInt::from(6)).unwrap();
        let sum = &Fixed::ln_int(&BigInt::from(2)).unwrap() + &Fixed::ln_int(&BigInt::from(3)).unwrap();
        assert!((&l6 - &sum).abs() < Fixed::parse_decimal("1e-55").unwrap());
        assert!(Fixed::ln_int(&BigInt::one()).unwrap().is_zero());
    }

    #[test]
    fn f64_exact_round_trip() {
        for x in [0.0, 1.0, -2.5, 0.1, 7.888609052210118e-31, 123456.789, std::f64::consts::PI, -1e20] {
            let f = Fixed::from_f64(x).unwrap();
            assert_eq!(f.to_f64(), x);
        }
        assert!(Fixed::from_f64(f64::NAN).is_err());
    }

    #[test]
    fn decimal_round_trip() {
        for x in [Fixed::pi(), -Fixed::pi(), Fixed::from_f64(0.1).unwrap(), Fixed::zero(), Fixed::from_int(-7)] {
            let s = x.to_decimal();
            assert_eq!(Fixed::parse_decimal(&s).unwrap(), x, "{s}");
        }
        assert_eq!(Fixed::parse_decimal("2.5e3").unwrap(), Fixed::from_int(2500));
        assert_eq!(Fixed::parse_decimal("-.5").unwrap().to_f64(), -0.5);
        assert!(Fixed::parse_decimal("abc").is_err());
        assert!(Fixed::parse_decimal(".").is_err());
    }

    #[test]
    fn reductions() {
        let tp = Fixed::two_pi();
        let x = Fixed::from_int(-1);
        let r = x.rem_euclid(&tp);
        assert!((r.to_f64() - (2.0 * std::f64::consts::PI - 1.0)).abs() < 1e-15);
        let c = Fixed::from_int(4).rem_centered(&tp);
        assert!((c.to_f64() - (4.0 - 2.0 * std::f64::consts::PI)).abs() < 1e-15);
        assert_eq!(Fixed::from_f64(2.5).unwrap().round(), BigInt::from(3));
        assert_eq!(Fixed::from_f64(-2.5).unwrap().floor(), BigInt::from(-3));
    }

    #[test]
    fn arithmetic() {
        let a = Fixed::from_f64(1.5).unwrap();
        let b = Fixed::from_int(4);
        assert_eq!((&a * &b).to_f64(), 6.0);
        assert_eq!((&b / &a).to_f64(), 4.0 / 1.5);
        let r = Rational::new(3, 7).unwrap();
        assert!((b.mul_rational(&r).to_f64() - 12.0 / 7.0).abs() < 1e-15);
    }
}
