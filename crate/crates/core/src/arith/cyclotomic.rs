//! The eighth cyclotomic field ℚ(ζ), ζ = exp(2πi/8), in the power basis
//! 1, ζ, ζ², ζ³ with ζ⁴ = −1.
//!
//! Elements are stored with a common positive denominator, which keeps the
//! number of gcd computations per multiplication at one. Because
//! 1, ζ, ζ², ζ³ is an integral basis of ℤ[ζ], that denominator is exactly
//! the least positive integer clearing α into the ring of integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use super::rational::{parse_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    num: [BigInt; 4],
    den: BigInt,
}

fn zero4() -> [BigInt; 4] {
    [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()]
}

impl CycNum {
    fn normalized(mut num: [BigInt; 4], mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if num.iter().all(Zero::is_zero) {
            return CycNum {
                num,
                den: BigInt::one(),
            };
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(c);
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c = &*c / &g;
                }
                den = den / g;
            }
        }
        CycNum { num, den }
    }

    pub fn zero() -> Self {
        CycNum {
            num: zero4(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        let mut num = zero4();
        num[0] = BigInt::from(n);
        CycNum {
            num,
            den: BigInt::one(),
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        let mut num = zero4();
        num[0] = n;
        CycNum {
            num,
            den: BigInt::one(),
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        let mut num = zero4();
        num[0] = q.numer().clone();
        Self::normalized(num, q.denom().clone())
    }

    /// Element with integer power-basis coordinates.
    pub fn from_ints(c: [i64; 4]) -> Self {
        CycNum {
            num: c.map(BigInt::from),
            den: BigInt::one(),
        }
    }

    pub fn from_coeffs(c: &[Rational; 4]) -> Self {
        let mut den = BigInt::one();
        for q in c {
            den = den.lcm(q.denom());
        }
        let mut num = zero4();
        for (slot, q) in num.iter_mut().zip(c) {
            *slot = q.numer() * (&den / q.denom());
        }
        Self::normalized(num, den)
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [0i64; 4];
        if k < 4 {
            c[k] = 1;
        } else {
            c[k - 4] = -1;
        }
        Self::from_ints(c)
    }

    pub fn zeta() -> Self {
        Self::zeta_pow(1)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Coordinate of ζ^i.
    pub fn coeff(&self, i: usize) -> Rational {
        BigRational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> [Rational; 4] {
        [self.coeff(0), self.coeff(1), self.coeff(2), self.coeff(3)]
    }

    pub fn numerators(&self) -> &[BigInt; 4] {
        &self.num
    }

    /// Least positive integer d with d·α ∈ ℤ[ζ].
    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Rational value if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        let num = self.num.clone().map(|c| c * k);
        Self::normalized(num, self.den.clone())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let num = self.num.clone().map(|c| c * q.numer());
        Self::normalized(num, &self.den * q.denom())
    }

    /// Image under the Galois automorphism ζ ↦ ζ^k (k odd).
    pub fn galois(&self, k: i64) -> Self {
        assert!(k.rem_euclid(2) == 1, "Galois exponent must be odd");
        let mut num = zero4();
        for i in 0..4 {
            let e = (i as i64 * k).rem_euclid(8) as usize;
            if e < 4 {
                num[e] += &self.num[i];
            } else {
                num[e - 4] -= &self.num[i];
            }
        }
        CycNum {
            num,
            den: self.den.clone(),
        }
    }

    /// Complex conjugation ζ ↦ ζ⁷.
    pub fn conj(&self) -> Self {
        self.galois(7)
    }

    /// Product of the conjugates under ζ ↦ ζ³, ζ⁵, ζ⁷.
    fn cofactor(&self) -> Self {
        &(&self.galois(3) * &self.galois(5)) * &self.galois(7)
    }

    /// Field norm down to ℚ.
    pub fn norm(&self) -> Rational {
        let n = self * &self.cofactor();
        n.as_rational().expect("norm is rational")
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let cof = self.cofactor();
        let n = (self * &cof).as_rational().expect("norm is rational");
        Some(cof.scale(&n.recip()))
    }

    /// `(d(α), n(α))`: the least positive integer clearing α into ℤ[ζ] and
    /// the norm of d(α)·α.
    pub fn norm_and_denominator(&self) -> Result<(BigInt, BigInt)> {
        if self.is_zero() {
            return Err(Error::Input("norm/denominator of zero".into()));
        }
        let d = self.den.clone();
        let cleared = CycNum {
            num: self.num.clone(),
            den: BigInt::one(),
        };
        let n = cleared.norm();
        debug_assert!(n.is_integer());
        Ok((d, n.to_integer()))
    }

    /// Power-basis string `"c0,c1,c2,c3"` with rational entries.
    pub fn to_basis_string(&self) -> String {
        (0..4)
            .map(|i| super::rational::format_rational(&self.coeff(i)))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl FromStr for CycNum {
    type Err = Error;

    /// Parses the power-basis format `"c0,c1,c2,c3"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Input(format!("expected 4 coordinates in {s:?}")));
        }
        let mut c: [Rational; 4] = Default::default();
        for (slot, p) in c.iter_mut().zip(&parts) {
            *slot = parse_rational(p)?;
        }
        Ok(CycNum::from_coeffs(&c))
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    /// Renders as a polynomial in `z` (standing for ζ).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for i in 0..4 {
            if self.num[i].is_zero() {
                continue;
            }
            let c = self.num[i].clone();
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                k => format!("z^{k}"),
            };
            let body = if mono.is_empty() {
                c.abs().to_string()
            } else if c.abs().is_one() {
                mono
            } else {
                format!("{}*{}", c.abs(), mono)
            };
            terms.push((c.is_negative(), body));
        }
        let mut out = String::new();
        for (k, (neg, body)) in terms.iter().enumerate() {
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(body);
        }
        if self.den.is_one() {
            write!(f, "{out}")
        } else if terms.len() == 1 {
            write!(f, "{out}/{}", self.den)
        } else {
            write!(f, "({out})/{}", self.den)
        }
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if self.den == rhs.den {
            let mut num = self.num.clone();
            for (a, b) in num.iter_mut().zip(&rhs.num) {
                *a += b;
            }
            return CycNum::normalized(num, self.den.clone());
        }
        let mut num = zero4();
        for i in 0..4 {
            num[i] = &self.num[i] * &rhs.den + &rhs.num[i] * &self.den;
        }
        CycNum::normalized(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            num: self.num.clone().map(|c| -c),
            den: self.den.clone(),
        }
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        let mut num = zero4();
        for i in 0..4 {
            if self.num[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if rhs.num[j].is_zero() {
                    continue;
                }
                let p = &self.num[i] * &rhs.num[j];
                let k = i + j;
                if k < 4 {
                    num[k] += p;
                } else {
                    num[k - 4] -= p;
                }
            }
        }
        CycNum::normalized(num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

/// ℚ(ζ) as a [`Field`] context.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CycField;

impl Field for CycField {
    type Elem = CycNum;

    fn zero(&self) -> CycNum {
        CycNum::zero()
    }
    fn one(&self) -> CycNum {
        CycNum::one()
    }
    fn from_i64(&self, n: i64) -> CycNum {
        CycNum::from_int(n)
    }
    fn is_zero(&self, a: &CycNum) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &CycNum, b: &CycNum) -> CycNum {
        a + b
    }
    fn sub(&self, a: &CycNum, b: &CycNum) -> CycNum {
        a - b
    }
    fn mul(&self, a: &CycNum, b: &CycNum) -> CycNum {
        a * b
    }
    fn neg(&self, a: &CycNum) -> CycNum {
        -a
    }
    fn inv(&self, a: &CycNum) -> Option<CycNum> {
        a.inv()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &CycNum) -> String {
        a.to_string()
    }
    fn is_one(&self, a: &CycNum) -> bool {
        a.is_one()
    }
}

/// A = −1 − 2ζ − 2ζ³, the coefficient appearing in the X₅₆ equation.
pub fn coefficient_a() -> CycNum {
    CycNum::from_ints([-1, -2, 0, -2])
}

/// B = 3 + A.
pub fn coefficient_b() -> CycNum {
    &coefficient_a() + &CycNum::from_int(3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn zeta_has_order_eight() {
        let z = CycNum::zeta();
        assert_eq!(z.pow(8), CycNum::one());
        assert_eq!(z.pow(4), CycNum::from_int(-1));
        assert_ne!(z.pow(2), CycNum::one());
    }

    #[test]
    fn conjugation_sends_zeta_to_minus_zeta_cubed() {
        let z = CycNum::zeta();
        assert_eq!(z.conj(), -&CycNum::zeta_pow(3));
        assert_eq!(z.conj(), CycNum::zeta_pow(7));
    }

    #[test]
    fn norm_and_denominator_examples() {
        let (d, n) = CycNum::one().norm_and_denominator().unwrap();
        assert_eq!((d, n), (BigInt::from(1), BigInt::from(1)));

        let third = CycNum::from_rational(&q(1, 3));
        let (d, n) = third.norm_and_denominator().unwrap();
        // 3 · (1/3) = 1 has norm 1; the norm of 1/3 itself is 3⁻⁴.
        assert_eq!(d, BigInt::from(3));
        assert_eq!(n, BigInt::from(1));
        assert_eq!(third.norm(), q(1, 81));

        assert!(CycNum::zero().norm_and_denominator().is_err());
    }

    #[test]
    fn norm_of_a_is_81() {
        // A = −1 − 2√−2; its norm from ℚ(√−2) is 9, squared going up to ℚ(ζ).
        let a = coefficient_a();
        let brute: CycNum = [1, 3, 5, 7]
            .iter()
            .map(|&k| a.galois(k))
            .fold(CycNum::one(), |acc, c| &acc * &c);
        assert_eq!(brute.as_rational().unwrap(), q(81, 1));
        assert_eq!(a.norm_and_denominator().unwrap().1, BigInt::from(81));
    }

    #[test]
    fn parse_and_render() {
        let x: CycNum = "1/2,-3,0,2/3".parse().unwrap();
        assert_eq!(x.coeff(0), q(1, 2));
        assert_eq!(x.coeff(1), q(-3, 1));
        assert_eq!(x.coeff(3), q(2, 3));
        assert_eq!(x.to_basis_string(), "1/2,-3,0,2/3");
        assert_eq!(x.to_basis_string().parse::<CycNum>().unwrap(), x);
        assert_eq!(coefficient_a().to_string(), "-1 - 2*z - 2*z^3");
    }
}
