use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number, always normalized with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn num(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn den(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Integer value; panics on a non-integer, callers check `is_integer` first.
    pub fn to_integer(&self) -> BigInt {
        assert!(self.is_integer(), "not an integer: {self}");
        self.0.to_integer()
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

pub fn rat_add(a: &Rational, b: &Rational) -> Rational {
    Rational(&a.0 + &b.0)
}

pub fn rat_mul(a: &Rational, b: &Rational) -> Rational {
    Rational(&a.0 * &b.0)
}

/// Least common multiple of the denominators; 1 for an empty list.
pub fn rat_lcm_den<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.den()))
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        rat_add(self, rhs)
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        rat_mul(self, rhs)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl fmt::Display for Rational {
    /// Always `p/q`, including `/1`, so files are unambiguous.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num(), self.den())
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                Rational::new(p, q)
            }
            None => Ok(Rational::from_int(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(Rational::from_int(n)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(rat_lcm_den(&[r(1, 2), r(2, 3), r(5, 6)]), BigInt::from(6));
        assert_eq!(rat_lcm_den(&[r(3, 1), r(-7, 1)]), BigInt::from(1));
        assert_eq!(rat_lcm_den(&[]), BigInt::from(1));
    }

    #[test]
    fn add_and_normalize() {
        assert_eq!(&r(1, 2) + &r(1, 3), r(5, 6));
        let z = r(0, -5);
        assert_eq!(z.den(), &BigInt::from(1));
        let n = r(4, -6);
        assert_eq!((n.num().clone(), n.den().clone()), (BigInt::from(-2), BigInt::from(3)));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(Rational::new(1, 0).is_err());
        assert!("3/0".parse::<Rational>().is_err());
    }

    #[test]
    fn string_round_trip() {
        let x = r(-22, 7);
        assert_eq!(x.to_string(), "-22/7");
        assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        assert_eq!(Rational::from_int(5).to_string(), "5/1");
        assert_eq!("12".parse::<Rational>().unwrap(), Rational::from_int(12));
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(js, "\"-22/7\"");
        assert_eq!(serde_json::from_str::<Rational>(&js).unwrap(), x);
    }
}
