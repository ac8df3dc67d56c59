//! Exact scalars: rationals with a machine-word fast path, Gaussian rationals,
//! and the small `Scalar` trait the generic linear algebra is written against.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Field operations shared by `Rational` and `Gaussian`.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    /// Complex conjugation; identity on Q.
    fn conj(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: Rational) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// A reduced fraction. Small values live in `i64`; anything that overflows
/// is promoted to a big rational and demoted again when it fits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational::Small(0, 1);
    pub const ONE: Rational = Rational::Small(1, 1);

    pub fn new(n: i64, d: i64) -> Rational {
        assert!(d != 0, "zero denominator");
        Self::from_i128(n as i128, d as i128)
    }

    pub fn int(n: i64) -> Rational {
        Rational::Small(n, 1)
    }

    fn from_i128(mut n: i128, mut d: i128) -> Rational {
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_i128(n, d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n == 0 {
            return Rational::ZERO;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rational::Small(a, b),
            _ => Rational::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Rational {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => Rational::Small(a, b),
            _ => Rational::Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(r) => r.denom().clone(),
        }
    }

    pub fn from_bigint(n: BigInt) -> Rational {
        Rational::from_big(BigRational::from_integer(n))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(r) => r.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rational::Small(n, _) => n.signum() as i32,
            Rational::Big(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn abs(&self) -> Rational {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, e: u32) -> Rational {
        let mut out = Rational::ONE;
        for _ in 0..e {
            out *= self.clone();
        }
        out
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::int(v)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, o: Rational) -> Rational {
        match (&self, &o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rational::from_i128(a + c, b)
                } else {
                    Rational::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Rational::from_big(self.to_big() + o.to_big()),
        }
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, o: Rational) -> Rational {
        self + (-o)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, o: Rational) -> Rational {
        match (&self, &o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *a == 0 || *c == 0 {
                    return Rational::ZERO;
                }
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * o.to_big()),
        }
    }
}

impl Div for Rational {
    type Output = Rational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Rational) -> Rational {
        self * o.inv().expect("division by zero")
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational::Small(m, d),
                None => Rational::from_i128(-(n as i128), d as i128),
            },
            Rational::Big(r) => Rational::from_big(-r),
        }
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, o: Rational) {
        *self = std::mem::take(self) + o;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, o: Rational) {
        *self = std::mem::take(self) - o;
    }
}

impl MulAssign for Rational {
    fn mul_assign(&mut self, o: Rational) {
        *self = std::mem::take(self) * o;
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn one() -> Self {
        Rational::ONE
    }
    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }
    fn inv(&self) -> Option<Self> {
        match self {
            Rational::Small(0, _) => None,
            Rational::Small(n, d) => Some(Rational::from_i128(*d as i128, *n as i128)),
            Rational::Big(r) => Some(Rational::from_big(r.recip())),
        }
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_i64(v: i64) -> Self {
        Rational::int(v)
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Rational::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Rational> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        let r = BigRational::new(n, d);
        Ok(Rational::from_big(r))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Clears denominators: returns the integer vector `l·v` where `l` is the lcm
/// of the denominators.
pub fn integer_row(v: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        let d = x.denom();
        l = l.lcm(&d);
    }
    v.iter()
        .map(|x| {
            let b = x.to_big() * BigRational::from_integer(l.clone());
            b.to_integer()
        })
        .collect()
}

/// An element of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn i() -> Self {
        Gaussian::new(Rational::ZERO, Rational::ONE)
    }

    pub fn real(re: Rational) -> Self {
        Gaussian::new(re, Rational::ZERO)
    }

    pub fn norm(&self) -> Rational {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, o: Gaussian) -> Gaussian {
        let re = self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone();
        let im = self.re * o.im + self.im * o.re;
        Gaussian::new(re, im)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

impl AddAssign for Gaussian {
    fn add_assign(&mut self, o: Gaussian) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl SubAssign for Gaussian {
    fn sub_assign(&mut self, o: Gaussian) {
        self.re -= o.re;
        self.im -= o.im;
    }
}

impl MulAssign for Gaussian {
    fn mul_assign(&mut self, o: Gaussian) {
        *self = std::mem::take(self) * o;
    }
}

impl Scalar for Gaussian {
    fn zero() -> Self {
        Gaussian::default()
    }
    fn one() -> Self {
        Gaussian::real(Rational::ONE)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        Some(Gaussian::new(self.re.clone() * n.clone(), -(self.im.clone() * n)))
    }
    fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }
    fn from_i64(v: i64) -> Self {
        Gaussian::real(Rational::int(v))
    }
    fn from_rational(r: Rational) -> Self {
        Gaussian::real(r)
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "({})i", self.im)
        } else {
            write!(f, "{}+({})i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_promotes() {
        assert_eq!(Rational::new(6, -4), Rational::new(-3, 2));
        let big = Rational::int(i64::MAX) * Rational::int(4);
        assert!(matches!(big, Rational::Big(_)));
        let back = big / Rational::int(4);
        assert_eq!(back, Rational::int(i64::MAX));
        assert!(matches!(back, Rational::Small(..)));
    }

    #[test]
    fn parse_roundtrip() {
        let r: Rational = "-10/4".parse().unwrap();
        assert_eq!(r.to_string(), "-5/2");
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::int(7));
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn gaussian_inverse() {
        let z = Gaussian::new(Rational::int(3), Rational::int(4));
        assert_eq!(z.clone() * z.inv().unwrap(), Gaussian::one());
        assert_eq!(z.conj().conj(), z);
    }
}
