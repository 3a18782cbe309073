//! Exact rationals and points of `Q^n`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in an `i64` are kept inline and
/// combined with `i128` intermediates; anything larger spills to a
/// `BigRational`. The representation is canonical, so equality and hashing
/// are structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(Rat::from_i128(numer as i128, denom as i128))
    }

    /// `n / d` with `d != 0`, reduced.
    fn from_i128(n: i128, d: i128) -> Self {
        debug_assert!(d != 0);
        let (mut n, mut d) = if d < 0 {
            match (n.checked_neg(), d.checked_neg()) {
                (Some(a), Some(b)) => (a, b),
                _ => return Rat::from_big(BigRational::new(n.into(), d.into())),
            }
        } else {
            (n, d)
        };
        let g = gcd_u128(n.unsigned_abs(), d as u128);
        if g > 1 {
            n /= g as i128;
            d /= g as i128;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rat(Repr::Small(a, b)),
            _ => Rat(Repr::Big(BigRational::new(n.into(), d.into()))),
        }
    }

    fn from_big(v: BigRational) -> Self {
        match (v.numer().to_i64(), v.denom().to_i64()) {
            (Some(a), Some(b)) => Rat(Repr::Small(a, b)),
            _ => Rat(Repr::Big(v)),
        }
    }

    fn big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(a, b) => BigRational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Repr::Big(v) => v.clone(),
        }
    }

    pub fn from_integer(value: i64) -> Self {
        Rat(Repr::Small(value, 1))
    }

    pub fn from_bigint(value: BigInt) -> Self {
        Rat::from_big(BigRational::from_integer(value))
    }

    pub fn zero() -> Self {
        Rat::from_integer(0)
    }

    pub fn one() -> Self {
        Rat::from_integer(1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small(a, _) => *a > 0,
            Repr::Big(v) => v.is_positive(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(a, _) => *a < 0,
            Repr::Big(v) => v.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, b) => *b == 1,
            Repr::Big(v) => v.is_integer(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(a, _) => BigInt::from(*a),
            Repr::Big(v) => v.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, b) => BigInt::from(*b),
            Repr::Big(v) => v.denom().clone(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// `Some` when the value is an integer that fits an `i128`.
    pub fn to_i128(&self) -> Option<i128> {
        match &self.0 {
            Repr::Small(a, 1) => Some(*a as i128),
            Repr::Small(..) => None,
            Repr::Big(v) if v.is_integer() => v.numer().to_i128(),
            Repr::Big(_) => None,
        }
    }

    /// `(numerator, denominator)` when both fit an `i64`.
    pub fn to_small(&self) -> Option<(i64, i64)> {
        match self.0 {
            Repr::Small(a, b) => Some((a, b)),
            Repr::Big(_) => None,
        }
    }

    pub fn to_big_rational(&self) -> BigRational {
        self.big()
    }

    /// `floor(self)` as a big integer.
    pub fn floor(&self) -> BigInt {
        self.big().floor().to_integer()
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if b == d {
                    a.cmp(c)
                } else {
                    (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
                }
            }
            _ => self.big().cmp(&other.big()),
        }
    }
}

impl From<BigRational> for Rat {
    fn from(value: BigRational) -> Self {
        Rat::from_big(value)
    }
}

impl From<i64> for Rat {
    fn from(value: i64) -> Self {
        Rat::from_integer(value)
    }
}

impl From<i32> for Rat {
    fn from(value: i32) -> Self {
        Rat::from_integer(value as i64)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(a, 1) => write!(f, "{a}"),
            Repr::Small(a, b) => write!(f, "{a}/{b}"),
            Repr::Big(v) if v.is_integer() => write!(f, "{}", v.numer()),
            Repr::Big(v) => write!(f, "{}/{}", v.numer(), v.denom()),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::invalid(format!("malformed rational {s:?}"));
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::invalid(format!("zero denominator in {s:?}")));
                }
                Ok(Rat::from_big(BigRational::new(n, d)))
            }
            None => {
                let n: BigInt = t.parse().map_err(|_| bad())?;
                Ok(Rat::from_bigint(n))
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct RatVisitor;

        impl de::Visitor<'_> for RatVisitor {
            type Value = Rat;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as a \"num/den\" string or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rat, E> {
                v.parse().map_err(|e: Error| E::custom(e.to_string()))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rat, E> {
                Ok(Rat::from_integer(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rat, E> {
                Ok(Rat::from_bigint(v.into()))
            }
        }

        deserializer.deserialize_any(RatVisitor)
    }
}

fn add_small(a: i64, b: i64, c: i64, d: i64) -> Option<Rat> {
    let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
    if b == d {
        return Some(Rat::from_i128(a + c, b));
    }
    let num = a.checked_mul(d)?.checked_add(c.checked_mul(b)?)?;
    let den = b.checked_mul(d)?;
    Some(Rat::from_i128(num, den))
}

fn mul_small(a: i64, b: i64, c: i64, d: i64) -> Option<Rat> {
    let num = (a as i128).checked_mul(c as i128)?;
    let den = (b as i128).checked_mul(d as i128)?;
    Some(Rat::from_i128(num, den))
}

impl Rat {
    fn add_ref(&self, rhs: &Rat) -> Rat {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            if let Some(r) = add_small(*a, *b, *c, *d) {
                return r;
            }
        }
        Rat::from_big(self.big() + rhs.big())
    }

    fn sub_ref(&self, rhs: &Rat) -> Rat {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            if let Some(nc) = c.checked_neg() {
                if let Some(r) = add_small(*a, *b, nc, *d) {
                    return r;
                }
            }
        }
        Rat::from_big(self.big() - rhs.big())
    }

    fn mul_ref(&self, rhs: &Rat) -> Rat {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            if let Some(r) = mul_small(*a, *b, *c, *d) {
                return r;
            }
        }
        Rat::from_big(self.big() * rhs.big())
    }

    fn div_ref(&self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            let (c, d) = if *c < 0 { (d.checked_neg(), c.checked_neg()) } else { (Some(*d), Some(*c)) };
            if let (Some(c), Some(d)) = (c, d) {
                if let Some(r) = mul_small(*a, *b, c, d) {
                    return r;
                }
            }
        }
        Rat::from_big(self.big() / rhs.big())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                self.$imp(&rhs)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                self.$imp(rhs)
            }
        }
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                self.$imp(rhs)
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                self.$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match &self.0 {
            Repr::Small(a, b) => match a.checked_neg() {
                Some(na) => Rat(Repr::Small(na, *b)),
                None => Rat::from_big(-self.big()),
            },
            Repr::Big(v) => Rat::from_big(-v),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = self.add_ref(rhs);
    }
}

impl AddAssign<Rat> for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        *self = self.add_ref(&rhs);
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = self.sub_ref(rhs);
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

/// A point `w` of `Q^n`; coordinate `i` (0-based) belongs to ground element `i + 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<Rat>);

impl Point {
    pub fn zero(n: usize) -> Self {
        Point(vec![Rat::zero(); n])
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| Rat::from_integer(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the coordinates indexed by the elements of `set`.
    pub fn dot_subset(&self, set: crate::Subset) -> Rat {
        set.iter().map(|i| &self.0[i - 1]).sum()
    }

    /// Shift so the last coordinate is zero (representative modulo the all-ones line).
    pub fn normalized(&self) -> Self {
        match self.0.last() {
            None => self.clone(),
            Some(last) => {
                let last = last.clone();
                Point(self.0.iter().map(|x| x - &last).collect())
            }
        }
    }
}

impl Add<&Point> for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Point> for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_canonical() {
        let r = Rat::new(2, -4).unwrap();
        assert_eq!(r.to_string(), "-1/2");
        assert_eq!(r, Rat::new(-1, 2).unwrap());
        assert_eq!(r.denom(), BigInt::from(2));
    }

    #[test]
    fn parse_forms() {
        assert_eq!("-1/2".parse::<Rat>().unwrap(), Rat::new(-1, 2).unwrap());
        assert_eq!("3".parse::<Rat>().unwrap(), Rat::from_integer(3));
        assert_eq!("6/4".parse::<Rat>().unwrap().to_string(), "3/2");
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    #[test]
    fn json_is_a_string() {
        let r = Rat::new(-1, 2).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, "\"-1/2\"");
        assert_eq!(serde_json::from_str::<Rat>(&s).unwrap(), r);
        assert_eq!(serde_json::from_str::<Rat>("7").unwrap(), Rat::from_integer(7));
    }

    #[test]
    fn spills_to_big_and_back() {
        let big = Rat::from_integer(i64::MAX);
        let sum = &big + &big;
        assert_eq!(sum.to_string(), "18446744073709551614");
        let back = &sum - &big;
        assert_eq!(back, big);
        assert_eq!(back.to_small(), Some((i64::MAX, 1)));
        let tiny = Rat::new(1, i64::MAX).unwrap();
        let sq = &tiny * &tiny;
        assert!(sq.to_small().is_none());
        assert_eq!(&sq / &tiny, tiny);
        assert!(Rat::from_integer(i64::MIN) < Rat::zero());
        assert_eq!(-Rat::from_integer(i64::MIN), Rat::from_bigint(BigInt::from(i64::MIN) * -1));
    }

    #[test]
    fn ordering_is_numeric() {
        let a = Rat::new(1, 3).unwrap();
        let b = Rat::new(2, 5).unwrap();
        assert!(a < b);
        assert!(-&b < -&a);
        assert_eq!(Rat::new(2, 6).unwrap().cmp(&a), Ordering::Equal);
    }

    #[test]
    fn exact_sums() {
        let a = Rat::new(1, 3).unwrap();
        let b = Rat::new(1, 6).unwrap();
        assert_eq!(&a + &b, Rat::new(1, 2).unwrap());
    }
}
