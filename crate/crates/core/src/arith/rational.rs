use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::Field;
use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always reduced with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `"n"` or `"n/d"`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Input(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Floor of the square root of a non-negative rational.
pub fn floor_sqrt(q: &Rational) -> BigInt {
    assert!(*q >= Rational::zero(), "square root of a negative number");
    q.floor().to_integer().sqrt()
}

/// ℚ as a [`Field`] context.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QField;

impl Field for QField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_i64(&self, n: i64) -> Rational {
        rat_int(n)
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &Rational) -> String {
        format_rational(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        for s in ["0", "-7", "3/8", "-11/4"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn floor_sqrt_of_rationals() {
        assert_eq!(floor_sqrt(&rat(9, 4)), BigInt::from(1));
        assert_eq!(floor_sqrt(&rat(4, 1)), BigInt::from(2));
        assert_eq!(floor_sqrt(&rat(35, 9)), BigInt::from(1));
        assert_eq!(floor_sqrt(&rat(0, 1)), BigInt::from(0));
    }
}
