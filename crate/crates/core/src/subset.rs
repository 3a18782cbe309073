//! Subsets of a ground set `[n] = {1, ..., n}` and colex enumeration.
//!
//! A [`Subset`] is a bitmask: bit `i - 1` is set when element `i` belongs to
//! the set. For subsets of a fixed size, numeric order of the masks is exactly
//! colexicographic order, which is the order every dense array over
//! `binom([n], d)` in this crate uses.

use std::fmt;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 31;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Builds a subset from 1-based elements. Duplicates and out-of-range
    /// elements are rejected.
    pub fn from_elements(n: usize, elements: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &e in elements {
            if e == 0 || e > n || e > MAX_GROUND {
                return Err(Error::invalid(format!("element {e} outside 1..{n}")));
            }
            let b = 1u32 << (e - 1);
            if bits & b != 0 {
                return Err(Error::invalid(format!("duplicate element {e}")));
            }
            bits |= b;
        }
        Ok(Subset(bits))
    }

    /// Like [`Subset::from_elements`] but panics on bad input; for literals in
    /// tests and examples.
    pub fn of(elements: &[usize]) -> Self {
        Self::from_elements(MAX_GROUND, elements).expect("bad subset literal")
    }

    /// The full ground set `[n]`.
    pub fn full(n: usize) -> Self {
        if n == 0 {
            Subset(0)
        } else {
            Subset(u32::MAX >> (32 - n))
        }
    }

    pub fn singleton(e: usize) -> Self {
        Subset(1 << (e - 1))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=32).contains(&e) && self.0 & (1 << (e - 1)) != 0
    }

    pub fn insert(self, e: usize) -> Self {
        Subset(self.0 | (1 << (e - 1)))
    }

    pub fn remove(self, e: usize) -> Self {
        Subset(self.0 & !(1 << (e - 1)))
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement inside `[n]`.
    pub fn complement(self, n: usize) -> Self {
        Subset(Subset::full(n).0 & !self.0)
    }

    /// Largest element, if any.
    pub fn max(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(32 - self.0.leading_zeros() as usize)
        }
    }

    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let tz = bits.trailing_zeros();
                bits &= bits - 1;
                Some(tz as usize + 1)
            }
        })
    }

    pub fn elements(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Re-index the elements of `self` (which must lie inside `ground`) to
    /// `1..=|ground|`, preserving order.
    pub fn compress(self, ground: Subset) -> Subset {
        let mut out = 0u32;
        for (k, e) in ground.iter().enumerate() {
            if self.contains(e) {
                out |= 1 << k;
            }
        }
        Subset(out)
    }

    /// Inverse of [`Subset::compress`]: element `k` maps to the `k`-th element of `ground`.
    pub fn expand(self, ground: Subset) -> Subset {
        let mut out = 0u32;
        for (k, e) in ground.iter().enumerate() {
            if self.contains(k + 1) {
                out |= 1 << (e - 1);
            }
        }
        Subset(out)
    }

    /// Position of this subset in the colex order of `binom([n], |self|)`.
    pub fn colex_rank(self) -> usize {
        self.iter()
            .enumerate()
            .map(|(k, e)| binomial(e - 1, k + 1) as usize)
            .sum()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Subset {
    type Err = Error;

    /// Parses the `"[1,3]"` key form used in JSON maps.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::invalid(format!("malformed subset {s:?}")))?;
        let mut elements = Vec::new();
        for part in inner.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let e: usize = part
                .parse()
                .map_err(|_| Error::invalid(format!("malformed subset {s:?}")))?;
            elements.push(e);
        }
        let mut sorted = elements.clone();
        sorted.sort_unstable();
        if sorted != elements {
            return Err(Error::invalid(format!("subset {s:?} is not strictly increasing")));
        }
        Subset::from_elements(MAX_GROUND, &elements)
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for e in self.iter() {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct SubsetVisitor;

        impl<'de> Visitor<'de> for SubsetVisitor {
            type Value = Subset;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a strictly increasing array of elements 1..n")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Subset, A::Error> {
                let mut elements: Vec<usize> = Vec::new();
                while let Some(e) = seq.next_element::<usize>()? {
                    if let Some(&last) = elements.last() {
                        if e <= last {
                            return Err(de::Error::custom("subset elements must be strictly increasing"));
                        }
                    }
                    elements.push(e);
                }
                Subset::from_elements(MAX_GROUND, &elements).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_seq(SubsetVisitor)
    }
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Binomial coefficient with signed arguments; zero outside `0 <= k <= n`.
pub fn binomial_i(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binomial(n as usize, k as usize)
    }
}

/// All `d`-subsets of `[n]` in colex order.
pub fn enumerate_subsets(n: usize, d: usize) -> Result<Vec<Subset>> {
    if d > n {
        return Err(Error::invalid(format!("cannot choose {d} elements from {n}")));
    }
    if n > MAX_GROUND {
        return Err(Error::invalid(format!("ground size {n} exceeds {MAX_GROUND}")));
    }
    Ok(KSubsets::new(n, d).collect())
}

/// Iterator over the `d`-subsets of `[n]` in colex order (Gosper's hack).
pub struct KSubsets {
    next: Option<u32>,
    limit: u64,
}

impl KSubsets {
    pub fn new(n: usize, d: usize) -> Self {
        let limit = 1u64 << n;
        let start = if d == 0 { 0 } else { (1u64 << d) - 1 };
        KSubsets {
            next: if d <= n { Some(start as u32) } else { None },
            limit,
        }
    }
}

impl Iterator for KSubsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let c = cur as u64;
            let u = c & c.wrapping_neg();
            let v = c + u;
            let nxt = v + (((v ^ c) / u) >> 2);
            if nxt < self.limit {
                Some(nxt as u32)
            } else {
                None
            }
        };
        Some(Subset(cur))
    }
}

/// Every subset of `ground`, in increasing mask order.
pub fn all_subsets_of(ground: Subset) -> impl Iterator<Item = Subset> {
    let g = ground.bits();
    let mut cur: Option<u32> = Some(0);
    std::iter::from_fn(move || {
        let c = cur?;
        cur = if c == g { None } else { Some((c.wrapping_sub(g)) & g) };
        Some(Subset(c))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[Subset]) -> Vec<String> {
        v.iter()
            .map(|s| s.iter().map(|e| e.to_string()).collect::<String>())
            .collect()
    }

    #[test]
    fn colex_four_two() {
        let v = enumerate_subsets(4, 2).unwrap();
        assert_eq!(names(&v), ["12", "13", "23", "14", "24", "34"]);
        for (k, s) in v.iter().enumerate() {
            assert_eq!(s.colex_rank(), k);
        }
    }

    #[test]
    fn empty_choice() {
        let v = enumerate_subsets(3, 0).unwrap();
        assert_eq!(v, vec![Subset::EMPTY]);
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_subsets(6, 3).unwrap().len(), 20);
        assert_eq!(enumerate_subsets(5, 5).unwrap().len(), 1);
        assert!(enumerate_subsets(3, 4).is_err());
    }

    #[test]
    fn text_forms() {
        let s = Subset::from_elements(4, &[1, 3]).unwrap();
        assert_eq!(s.to_string(), "[1,3]");
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,3]");
        assert_eq!("[1,3]".parse::<Subset>().unwrap(), s);
        assert!("[3,1]".parse::<Subset>().is_err());
        assert!(serde_json::from_str::<Subset>("[2,2]").is_err());
        assert_eq!("[]".parse::<Subset>().unwrap(), Subset::EMPTY);
    }

    #[test]
    fn compress_expand() {
        let ground = Subset::of(&[2, 4, 5]);
        let s = Subset::of(&[2, 5]);
        assert_eq!(s.compress(ground), Subset::of(&[1, 3]));
        assert_eq!(Subset::of(&[1, 3]).expand(ground), s);
    }

    #[test]
    fn subsets_of_mask() {
        let all: Vec<_> = all_subsets_of(Subset::of(&[1, 3])).collect();
        assert_eq!(all.len(), 4);
        assert_eq!(all_subsets_of(Subset::EMPTY).count(), 1);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial_i(-1, 0), 0);
        assert_eq!(binomial_i(4, -1), 0);
    }
}
