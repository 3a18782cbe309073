//! Integer polynomials in two variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

/// A polynomial `sum c_ij a^i b^j` with integer coefficients. Zero
/// coefficients are never stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c.into());
        p
    }

    /// The first variable.
    pub fn a() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// The second variable.
    pub fn b() -> Self {
        Self::monomial(0, 1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(1);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `a -> s`, `b -> t`.
    pub fn substitute(&self, s: &BivariatePoly, t: &BivariatePoly) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out = &out + &(&s.pow(i) * &t.pow(j)).scale(c);
        }
        out
    }

    /// Swap the roles of the two variables.
    pub fn swap(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(j, i, c.clone());
        }
        out
    }

    pub fn eval(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * num_traits::pow(a.clone(), i as usize) * num_traits::pow(b.clone(), j as usize))
            .sum()
    }

    pub fn has_negative_coefficient(&self) -> bool {
        self.terms.values().any(|c| c.is_negative())
    }

    /// Render with the given variable names, highest total degree first.
    pub fn render(&self, a: &str, b: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        let mut out = String::new();
        for (k, (i, j)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = [(a, i), (b, j)]
                .iter()
                .filter(|(_, e)| *e > 0)
                .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect::<Vec<_>>()
                .join("*");
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("a", "b"))
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        self + &(-rhs)
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        BivariatePoly {
            terms: self.terms.iter().map(|(&k, v)| (k, -v)).collect(),
        }
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(i, j), c) in &self.terms {
            for (&(k, l), e) in &rhs.terms {
                out.add_term(i + k, j + l, c * e);
            }
        }
        out
    }
}

impl Serialize for BivariatePoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (&(i, j), c) in &self.terms {
            let v: serde_json::Number = match i64::try_from(c) {
                Ok(small) => small.into(),
                Err(_) => c.to_string().parse().map_err(serde::ser::Error::custom)?,
            };
            map.serialize_entry(&format!("({i},{j})"), &v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for BivariatePoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, serde_json::Number> = BTreeMap::deserialize(deserializer)?;
        let mut out = BivariatePoly::zero();
        for (key, value) in raw {
            let inner = key
                .trim()
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| de::Error::custom(format!("bad exponent key {key:?}")))?;
            let (i, j) = inner
                .split_once(',')
                .ok_or_else(|| de::Error::custom(format!("bad exponent key {key:?}")))?;
            let i: u32 = i.trim().parse().map_err(de::Error::custom)?;
            let j: u32 = j.trim().parse().map_err(de::Error::custom)?;
            let c: BigInt = value
                .to_string()
                .parse()
                .map_err(|_| de::Error::custom(format!("non-integer coefficient {value}")))?;
            if c.is_zero() {
                return Err(de::Error::custom(format!("zero coefficient stored at {key}")));
            }
            if out.terms.contains_key(&(i, j)) {
                return Err(de::Error::custom(format!("duplicate exponent {key}")));
            }
            out.add_term(i, j, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let p = &BivariatePoly::a() + &BivariatePoly::b();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"(0,1)":1,"(1,0)":1}"#);
        let back: BivariatePoly = serde_json::from_str(r#"{"(1,0)":1,"(0,1)":1}"#).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<BivariatePoly>(r#"{"(1,0)":0}"#).is_err());
    }

    #[test]
    fn substitution_shift() {
        // (a + b + 2) at a -> a - 1, b -> b - 1 is a + b
        let p = &(&BivariatePoly::a() + &BivariatePoly::b()) + &BivariatePoly::constant(2);
        let one = BivariatePoly::constant(1);
        let q = p.substitute(&(&BivariatePoly::a() - &one), &(&BivariatePoly::b() - &one));
        assert_eq!(q, &BivariatePoly::a() + &BivariatePoly::b());
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = &BivariatePoly::a() - &BivariatePoly::a();
        assert!(p.is_zero());
        assert_eq!(p.render("z", "w"), "0");
    }

    #[test]
    fn rendering() {
        let z = BivariatePoly::a();
        let w = BivariatePoly::b();
        let p = &(&z.pow(3) + &w.pow(3)) + &z.scale(&BigInt::from(6));
        assert_eq!(p.render("z", "w"), "z^3 + w^3 + 6*z");
    }
}
