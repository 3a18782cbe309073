//! Tropical Plücker vectors and the operations on them.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::rational::{Point, Rat};
use crate::subset::{binomial, KSubsets, Subset, MAX_GROUND};

/// A rational value for every `d`-subset of `[n]`, stored in colex order.
/// Validity is checked by [`PlueckerVector::validate`], not enforced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlueckerVector {
    n: usize,
    d: usize,
    values: Vec<Rat>,
}

/// A three-term relation whose minimum is attained only once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlueckerWitness {
    pub s: Subset,
    pub quad: [usize; 4],
    /// `(p_Sij + p_Skl, p_Sik + p_Sjl, p_Sil + p_Sjk)`.
    pub sums: [Rat; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Invalid(PlueckerWitness),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

impl fmt::Debug for PlueckerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p(n={}, d={}; ", self.n, self.d)?;
        for (k, (s, v)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}:{v}")?;
        }
        f.write_str(")")
    }
}

impl PlueckerVector {
    /// `values` in colex order of the `d`-subsets of `[n]`.
    pub fn new(n: usize, d: usize, values: Vec<Rat>) -> Result<Self> {
        if d > n || n > MAX_GROUND {
            return Err(Error::invalid(format!("no {d}-subsets of [{n}] to index")));
        }
        let expected = binomial(n, d) as usize;
        if values.len() != expected {
            return Err(Error::invalid(format!(
                "expected {expected} values for (d, n) = ({d}, {n}), got {}",
                values.len()
            )));
        }
        Ok(PlueckerVector { n, d, values })
    }

    pub fn from_fn(n: usize, d: usize, mut f: impl FnMut(Subset) -> Rat) -> Result<Self> {
        if d > n || n > MAX_GROUND {
            return Err(Error::invalid(format!("no {d}-subsets of [{n}] to index")));
        }
        let values = KSubsets::new(n, d).map(&mut f).collect();
        Ok(PlueckerVector { n, d, values })
    }

    pub fn zero(n: usize, d: usize) -> Result<Self> {
        Self::from_fn(n, d, |_| Rat::zero())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// `p_I`; `i` must be a `d`-subset of `[n]`.
    pub fn get(&self, i: Subset) -> &Rat {
        debug_assert_eq!(i.len(), self.d);
        &self.values[i.colex_rank()]
    }

    pub fn subsets(&self) -> KSubsets {
        KSubsets::new(self.n, self.d)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Subset, &Rat)> {
        self.subsets().zip(self.values.iter())
    }

    /// Checks every three-term relation. Witnesses are searched with `S`
    /// in colex order, then quadruples `i < j < k < l` lexicographically.
    pub fn validate(&self) -> Validity {
        if self.d < 2 || self.n < self.d + 2 {
            return Validity::Valid;
        }
        for s in KSubsets::new(self.n, self.d - 2) {
            let rest: Vec<usize> = s.complement(self.n).elements();
            let m = rest.len();
            for a in 0..m {
                for b in a + 1..m {
                    for c in b + 1..m {
                        for e in c + 1..m {
                            let (i, j, k, l) = (rest[a], rest[b], rest[c], rest[e]);
                            let v = |x: usize, y: usize| self.get(s.insert(x).insert(y));
                            let sums = [v(i, j) + v(k, l), v(i, k) + v(j, l), v(i, l) + v(j, k)];
                            let min = sums.iter().min().unwrap();
                            if sums.iter().filter(|x| *x == min).count() < 2 {
                                return Validity::Invalid(PlueckerWitness { s, quad: [i, j, k, l], sums });
                            }
                        }
                    }
                }
            }
        }
        Validity::Valid
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        match self.validate() {
            Validity::Valid => Ok(()),
            Validity::Invalid(w) => Err(Error::invalid(format!(
                "not a tropical Plücker vector: relation S={} on {:?} has sums {:?}",
                w.s, w.quad, w.sums
            ))),
        }
    }

    /// `p_I - w·e_I` for every `I`, in colex order.
    pub(crate) fn heights(&self, w: &Point) -> Vec<Rat> {
        self.iter().map(|(i, v)| v - w.dot_subset(i)).collect()
    }

    /// The subsets minimizing `p_I - w·e_I`, without checking exchange.
    pub(crate) fn argmin(&self, w: &Point) -> Vec<Subset> {
        argmin_of(self.n, self.d, &self.heights(w))
    }

    /// `M_w`: bases are the minimizers of `p_I - w·e_I`.
    pub fn minimizing_matroid(&self, w: &Point) -> Result<Matroid> {
        if w.len() != self.n {
            return Err(Error::invalid(format!("point has {} coordinates, expected {}", w.len(), self.n)));
        }
        Matroid::new(self.n, self.argmin(w)).map_err(|e| match e {
            Error::NotMatroid { b1, b2, x } => Error::InvalidPlucker(format!(
                "minimizers at {w:?} fail exchange for {b1}, {b2} at {x}"
            )),
            other => other,
        })
    }

    /// `w` lies on the tropical linear space: `M_w` is loop-free.
    pub fn contains(&self, w: &Point) -> Result<bool> {
        Ok(self.minimizing_matroid(w)?.is_loop_free())
    }

    /// `w` lies in the bounded part: `M_w` is loop-free and coloop-free.
    pub fn in_bounded_part(&self, w: &Point) -> Result<bool> {
        Ok(self.minimizing_matroid(w)?.is_interior())
    }

    /// `p⊥_I = p_([n] \ I)`.
    pub fn dualize(&self) -> PlueckerVector {
        PlueckerVector::from_fn(self.n, self.n - self.d, |i| self.get(i.complement(self.n)).clone())
            .expect("complement sizes are in range")
    }

    /// `(p \ S / T)_I = p_(I ∪ T)` on `[n] \ (S ∪ T)`, re-indexed in order.
    pub fn minor(&self, delete: Subset, contract: Subset) -> Result<PlueckerVector> {
        let full = Subset::full(self.n);
        if !delete.is_subset(full) || !contract.is_subset(full) {
            return Err(Error::invalid("minor sets leave the ground set"));
        }
        if !delete.is_disjoint(contract) {
            return Err(Error::invalid(format!("delete {delete} and contract {contract} overlap")));
        }
        if contract.len() > self.d {
            return Err(Error::invalid(format!("cannot contract {} elements in rank {}", contract.len(), self.d)));
        }
        let ground = full.difference(delete.union(contract));
        let d = self.d - contract.len();
        if d > ground.len() {
            return Err(Error::invalid(format!(
                "deleting {} elements leaves fewer than {d} for rank {d}",
                delete.len()
            )));
        }
        PlueckerVector::from_fn(ground.len(), d, |j| self.get(j.expand(ground).union(contract)).clone())
    }

    /// `p_I + sum_(i in I) v_i`, the vector of the translate `L + v`.
    pub fn translate(&self, v: &Point) -> Result<PlueckerVector> {
        if v.len() != self.n {
            return Err(Error::invalid(format!("translation has {} coordinates, expected {}", v.len(), self.n)));
        }
        Ok(PlueckerVector {
            n: self.n,
            d: self.d,
            values: self.iter().map(|(i, x)| x + v.dot_subset(i)).collect(),
        })
    }

    /// Shift by a constant so that the smallest value is zero.
    pub fn normalize(&self) -> PlueckerVector {
        let min = self.values.iter().min().cloned().unwrap_or_default();
        PlueckerVector {
            n: self.n,
            d: self.d,
            values: self.values.iter().map(|x| x - &min).collect(),
        }
    }

    /// Apply an element permutation; `perm[i - 1]` is the image of `i`.
    pub fn relabel(&self, perm: &[usize]) -> PlueckerVector {
        let mut values = vec![Rat::zero(); self.values.len()];
        for (i, v) in self.iter() {
            let image = i.iter().fold(Subset::EMPTY, |a, e| a.insert(perm[e - 1]));
            values[image.colex_rank()] = v.clone();
        }
        PlueckerVector { n: self.n, d: self.d, values }
    }

    /// Pointwise sum with another vector of the same shape.
    pub fn add(&self, other: &PlueckerVector) -> Result<PlueckerVector> {
        if (self.n, self.d) != (other.n, other.d) {
            return Err(Error::invalid("vectors have different shapes"));
        }
        Ok(PlueckerVector {
            n: self.n,
            d: self.d,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Rat) -> PlueckerVector {
        PlueckerVector {
            n: self.n,
            d: self.d,
            values: self.values.iter().map(|x| x * c).collect(),
        }
    }
}

pub(crate) fn argmin_of(n: usize, d: usize, heights: &[Rat]) -> Vec<Subset> {
    let min = heights.iter().min().expect("at least one subset");
    KSubsets::new(n, d)
        .zip(heights)
        .filter(|(_, h)| *h == min)
        .map(|(s, _)| s)
        .collect()
}

/// `q_J = min (p_I + p'_I')` over `I ∩ I' = J` with `|I| = d`, `|I'| = d'`.
pub fn stable_intersection(p: &PlueckerVector, p2: &PlueckerVector) -> Result<PlueckerVector> {
    let n = p.n;
    if p2.n != n {
        return Err(Error::invalid("vectors live in different ambient spaces"));
    }
    if p.d + p2.d < n {
        return Err(Error::invalid(format!("ranks {} + {} fall short of {n}", p.d, p2.d)));
    }
    let e = p.d + p2.d - n;
    let q = PlueckerVector::from_fn(n, e, |j| {
        let rest = j.complement(n);
        KSubsets::new(rest.len(), p.d - e)
            .map(|k| {
                let k = k.expand(rest);
                p.get(j.union(k)) + p2.get(k.complement(n))
            })
            .min()
            .expect("the complement always splits")
    })?;
    Ok(q)
}

/// The tropical hyperplane with `p_([n] \ {i}) = c_i`.
pub fn hyperplane(c: &[Rat]) -> Result<PlueckerVector> {
    let n = c.len();
    if n == 0 {
        return Err(Error::invalid("hyperplane needs n >= 1"));
    }
    let p = PlueckerVector::from_fn(n, n - 1, |i| {
        let missing = i.complement(n).min().expect("one element is missing");
        c[missing - 1].clone()
    })?;
    debug_assert!(p.is_valid());
    Ok(p)
}

/// `p_I = -rank(I)` for a loop-free matroid.
pub fn corank_vector(m: &Matroid) -> Result<PlueckerVector> {
    if !m.is_loop_free() {
        return Err(Error::invalid("corank vector needs a loop-free matroid"));
    }
    let p = PlueckerVector::from_fn(m.n(), m.rank(), |i| Rat::from_integer(-(m.rank_of(i) as i64)))?;
    if let Validity::Invalid(w) = p.validate() {
        return Err(Error::invariant(format!("corank vector fails relation {w:?}")));
    }
    if p.argmin(&Point::zero(m.n())) != m.bases() {
        return Err(Error::invariant("matroid is not the minimizing cell of its corank vector"));
    }
    Ok(p)
}

/// `τ^d(p)_I = sum_(i<j in I) p_ij` for a rank 2 vector.
pub fn tau(p2: &PlueckerVector, d: usize) -> Result<PlueckerVector> {
    if p2.d != 2 {
        return Err(Error::invalid(format!("tree space input must have rank 2, not {}", p2.d)));
    }
    let n = p2.n;
    if d > n {
        return Err(Error::invalid(format!("rank {d} exceeds {n}")));
    }
    p2.require_valid()?;
    let t = PlueckerVector::from_fn(n, d, |i| {
        let el = i.elements();
        let mut acc = Rat::zero();
        for a in 0..el.len() {
            for b in a + 1..el.len() {
                acc += p2.get(Subset::singleton(el[a]).insert(el[b]));
            }
        }
        acc
    })?;
    if let Validity::Invalid(w) = t.validate() {
        return Err(Error::invariant(format!("tree space vector fails relation {w:?}")));
    }
    Ok(t)
}

impl Serialize for PlueckerVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Values<'a>(&'a PlueckerVector);
        impl Serialize for Values<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.values.len()))?;
                for (s, v) in self.0.iter() {
                    map.serialize_entry(&s.to_string(), v)?;
                }
                map.end()
            }
        }
        let mut st = serializer.serialize_struct("PlueckerVector", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("values", &Values(self))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVector {
    n: usize,
    d: usize,
    values: BTreeMap<String, Rat>,
}

impl<'de> Deserialize<'de> for PlueckerVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawVector::deserialize(deserializer)?;
        if raw.d > raw.n || raw.n > MAX_GROUND {
            return Err(D::Error::custom(format!("no {}-subsets of [{}]", raw.d, raw.n)));
        }
        let mut slots: Vec<Option<Rat>> = vec![None; binomial(raw.n, raw.d) as usize];
        for (key, value) in raw.values {
            let s: Subset = key.parse().map_err(|e: Error| D::Error::custom(e.to_string()))?;
            if s.len() != raw.d || !s.is_subset(Subset::full(raw.n)) {
                return Err(D::Error::custom(format!("key {key} is not a {}-subset of [{}]", raw.d, raw.n)));
            }
            let slot = &mut slots[s.colex_rank()];
            if slot.is_some() {
                return Err(D::Error::custom(format!("subset {s} given twice")));
            }
            *slot = Some(value);
        }
        let mut values = Vec::with_capacity(slots.len());
        for (s, v) in KSubsets::new(raw.n, raw.d).zip(slots) {
            values.push(v.ok_or_else(|| D::Error::custom(format!("missing value for {s}")))?);
        }
        Ok(PlueckerVector { n: raw.n, d: raw.d, values })
    }
}
