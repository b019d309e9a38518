//! Exact rationals.
//!
//! `Rat` is a thin newtype over `num_rational::BigRational` that fixes the
//! textual form used everywhere in this crate: `p/q` with `q >= 1`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseRatError {
    #[error("malformed rational `{0}`: expected [+-]digits[/digits]")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl Rat {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rat {
        Rat(BigRational::new(num.into(), den.into()))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Rat {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    /// `2^-k`.
    pub fn pow2_neg(k: u64) -> Rat {
        Rat(BigRational::new(BigInt::one(), BigInt::one() << k))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// True when the reduced denominator is a power of two.
    pub fn is_dyadic(&self) -> bool {
        let d = self.denom();
        (d & (d - BigInt::one())).is_zero()
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    pub fn ceil(&self) -> BigInt {
        -((-self.0.numer()).div_floor(self.0.denom()))
    }

    pub fn fract(&self) -> Rat {
        self - &Rat::from_int(self.floor())
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Rat {
        Rat(self.0.recip())
    }

    pub fn mul_pow2(&self, k: u64) -> Rat {
        Rat(&self.0 * BigRational::from_integer(BigInt::one() << k))
    }

    pub fn midpoint(a: &Rat, b: &Rat) -> Rat {
        Rat((&a.0 + &b.0) / BigRational::from_integer(BigInt::from(2)))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// The rational with the smallest denominator strictly between the
    /// bounds (ties broken towards zero). `None` bounds are infinite.
    pub fn simplest_between(lo: Option<&Rat>, hi: Option<&Rat>) -> Rat {
        match (lo, hi) {
            (None, None) => Rat::zero(),
            (None, Some(h)) => {
                let c = h.ceil() - 1;
                if c >= BigInt::zero() {
                    Rat::zero()
                } else {
                    Rat::from_int(c)
                }
            }
            (Some(l), None) => {
                let f = l.floor() + 1;
                if f <= BigInt::zero() {
                    Rat::zero()
                } else {
                    Rat::from_int(f)
                }
            }
            (Some(l), Some(h)) => {
                assert!(l < h, "empty open interval ({l}, {h})");
                simplest_in_open(l, h)
            }
        }
    }
}

fn simplest_in_open(lo: &Rat, hi: &Rat) -> Rat {
    // integers strictly inside
    let first = lo.floor() + 1;
    let last = hi.ceil() - 1;
    if first <= last {
        let zero = BigInt::zero();
        let pick = if first <= zero && zero <= last {
            zero
        } else if first > zero {
            first
        } else {
            last
        };
        return Rat::from_int(pick);
    }
    // lo and hi share the unit cell [f, f+1]
    let f = lo.floor();
    let fr = Rat::from_int(f.clone());
    let a = lo - &fr;
    let b = hi - &fr;
    if a.is_zero() {
        // (0, b): 1/n with the least n such that 1/n < b
        let n = b.recip().floor() + 1;
        return &fr + &Rat::new(1, n);
    }
    &fr + &simplest_in_open(&b.recip(), &a.recip()).recip()
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> Result<Rat, ParseRatError> {
        let malformed = || ParseRatError::Malformed(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let digits = num.strip_prefix(['+', '-']).unwrap_or(num);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let n: BigInt = num.parse().map_err(|_| malformed())?;
        let d: BigInt = match den {
            None => BigInt::one(),
            Some(d) => {
                if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(malformed());
                }
                d.parse().map_err(|_| malformed())?
            }
        };
        if d.is_zero() {
            return Err(ParseRatError::ZeroDenominator(s.to_string()));
        }
        Ok(Rat::new(n, d))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat(self.0.$m(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

/// Shorthand used heavily in tests: `rat("3/4")`.
pub fn rat(s: &str) -> Rat {
    s.parse().expect("valid rational literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(rat("6/8").to_string(), "3/4");
        assert_eq!(rat("-2").to_string(), "-2");
        assert_eq!(rat("+5/1").to_string(), "5");
        assert!(matches!("1/0".parse::<Rat>(), Err(ParseRatError::ZeroDenominator(_))));
        for bad in ["", "/3", "1/", "a", "1.5", "--1", "1/-2", " 1"] {
            assert!(bad.parse::<Rat>().is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn json_form_is_p_over_q() {
        assert_eq!(serde_json::to_string(&rat("3")).unwrap(), "\"3/1\"");
        let back: Rat = serde_json::from_str("\"-6/4\"").unwrap();
        assert_eq!(back, rat("-3/2"));
    }

    #[test]
    fn floor_ceil_fract() {
        assert_eq!(rat("-1/2").floor(), BigInt::from(-1));
        assert_eq!(rat("-1/2").ceil(), BigInt::from(0));
        assert_eq!(rat("-1/2").fract(), rat("1/2"));
        assert_eq!(rat("7/3").fract(), rat("1/3"));
    }

    #[test]
    fn simplest_between_examples() {
        assert_eq!(Rat::simplest_between(Some(&rat("0")), Some(&rat("1"))), rat("1/2"));
        assert_eq!(Rat::simplest_between(Some(&rat("1/2")), Some(&rat("3/4"))), rat("2/3"));
        assert_eq!(Rat::simplest_between(Some(&rat("17/32")), Some(&rat("35/64"))), rat("6/11"));
        assert_eq!(Rat::simplest_between(Some(&rat("-3/2")), Some(&rat("5"))), rat("0"));
        assert_eq!(Rat::simplest_between(Some(&rat("2")), Some(&rat("5"))), rat("3"));
        assert_eq!(Rat::simplest_between(None, Some(&rat("-7/2"))), rat("-4"));
        assert_eq!(Rat::simplest_between(Some(&rat("0")), Some(&rat("1/5"))), rat("1/6"));
    }

    #[test]
    fn dyadic() {
        assert!(rat("3/8").is_dyadic());
        assert!(rat("5").is_dyadic());
        assert!(!rat("1/3").is_dyadic());
    }
}
