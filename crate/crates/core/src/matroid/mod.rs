//! Matroids given by explicit basis lists.

mod gamma;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{all_subsets_of, KSubsets, Subset, MAX_GROUND};

pub use gamma::{
    assemble_over_gamma, gamma_graph, graph_transversality, is_transverse, matroid_intersection,
    parallel_connection, parallel_connection_assembly, parallel_connection_by_contraction,
    perfect_matching_census, AssemblyVertex, BipartiteMultigraph, GammaEdge, Transversality,
};

/// A failure of the basis-exchange axiom: no `y` in `b2 \ b1` makes
/// `b1 - x + y` a basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeViolation {
    pub b1: Subset,
    pub b2: Subset,
    pub x: usize,
}

impl From<ExchangeViolation> for Error {
    fn from(v: ExchangeViolation) -> Self {
        Error::NotMatroid {
            b1: v.b1.to_string(),
            b2: v.b2.to_string(),
            x: v.x,
        }
    }
}

/// Membership test for a fixed family of subsets.
pub(crate) enum Lookup<'a> {
    Bitmap(Vec<u64>),
    Sorted(&'a [Subset]),
}

impl<'a> Lookup<'a> {
    /// `sorted` must be strictly increasing.
    pub(crate) fn new(n: usize, sorted: &'a [Subset]) -> Self {
        if n <= 16 {
            let mut bits = vec![0u64; (1usize << n).div_ceil(64)];
            for s in sorted {
                let k = s.bits() as usize;
                bits[k >> 6] |= 1 << (k & 63);
            }
            Lookup::Bitmap(bits)
        } else {
            Lookup::Sorted(sorted)
        }
    }

    pub(crate) fn contains(&self, s: Subset) -> bool {
        match self {
            Lookup::Bitmap(bits) => {
                let k = s.bits() as usize;
                bits.get(k >> 6).is_some_and(|w| w & (1 << (k & 63)) != 0)
            }
            Lookup::Sorted(v) => v.binary_search(&s).is_ok(),
        }
    }
}

/// Checks the basis-exchange axiom. Pairs are visited with `b1`, then `b2`,
/// in colex order and `x` increasing; the first failure is returned.
pub fn check_matroid(n: usize, bases: &[Subset]) -> Result<Option<ExchangeViolation>> {
    let sorted = normalize_family(n, bases)?;
    Ok(exchange_violation(n, &sorted))
}

fn normalize_family(n: usize, bases: &[Subset]) -> Result<Vec<Subset>> {
    if n > MAX_GROUND {
        return Err(Error::invalid(format!("ground size {n} exceeds {MAX_GROUND}")));
    }
    let first = bases
        .first()
        .ok_or_else(|| Error::invalid("empty basis list"))?;
    let d = first.len();
    let full = Subset::full(n);
    for b in bases {
        if b.len() != d {
            return Err(Error::invalid(format!("bases {first} and {b} differ in size")));
        }
        if !b.is_subset(full) {
            return Err(Error::invalid(format!("basis {b} leaves the ground set 1..{n}")));
        }
    }
    let mut sorted = bases.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(sorted)
}

fn exchange_violation(n: usize, sorted: &[Subset]) -> Option<ExchangeViolation> {
    let lookup = Lookup::new(n, sorted);
    for &b1 in sorted {
        for &b2 in sorted {
            let extra = b2.difference(b1);
            for x in b1.difference(b2).iter() {
                let base = b1.remove(x);
                if !extra.iter().any(|y| lookup.contains(base.insert(y))) {
                    return Some(ExchangeViolation { b1, b2, x });
                }
            }
        }
    }
    None
}

/// A matroid on `[n]`, stored by its bases in colex order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawMatroid", into = "RawMatroid")]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<Subset>,
}

#[derive(Serialize, Deserialize)]
struct RawMatroid {
    n: usize,
    rank: usize,
    bases: Vec<Subset>,
}

impl TryFrom<RawMatroid> for Matroid {
    type Error = Error;

    fn try_from(raw: RawMatroid) -> Result<Self> {
        let m = Matroid::new(raw.n, raw.bases)?;
        if m.rank != raw.rank {
            return Err(Error::invalid(format!(
                "declared rank {} but bases have size {}",
                raw.rank, m.rank
            )));
        }
        Ok(m)
    }
}

impl From<Matroid> for RawMatroid {
    fn from(m: Matroid) -> Self {
        RawMatroid {
            n: m.n,
            rank: m.rank,
            bases: m.bases,
        }
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M(n={}, d={}, {:?})", self.n, self.rank, self.bases)
    }
}

impl Matroid {
    /// Validating constructor.
    pub fn new(n: usize, bases: impl IntoIterator<Item = Subset>) -> Result<Self> {
        let bases: Vec<Subset> = bases.into_iter().collect();
        let sorted = normalize_family(n, &bases)?;
        if let Some(v) = exchange_violation(n, &sorted) {
            return Err(v.into());
        }
        Ok(Matroid {
            n,
            rank: sorted[0].len(),
            bases: sorted,
        })
    }

    /// Caller guarantees a nonempty family of equal-size subsets of `[n]`
    /// satisfying exchange.
    pub(crate) fn from_sorted_unchecked(n: usize, bases: Vec<Subset>) -> Self {
        debug_assert!(!bases.is_empty());
        debug_assert!(bases.windows(2).all(|w| w[0] < w[1]));
        Matroid {
            n,
            rank: bases[0].len(),
            bases,
        }
    }

    pub(crate) fn from_unsorted_unchecked(n: usize, mut bases: Vec<Subset>) -> Self {
        bases.sort_unstable();
        bases.dedup();
        Self::from_sorted_unchecked(n, bases)
    }

    pub fn uniform(d: usize, n: usize) -> Self {
        assert!(d <= n && n <= MAX_GROUND);
        Matroid {
            n,
            rank: d,
            bases: KSubsets::new(n, d).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    pub fn num_bases(&self) -> usize {
        self.bases.len()
    }

    pub fn is_basis(&self, s: Subset) -> bool {
        self.bases.binary_search(&s).is_ok()
    }

    pub(crate) fn lookup(&self) -> Lookup<'_> {
        Lookup::new(self.n, &self.bases)
    }

    /// Largest `|B ∩ Y|` over bases `B`.
    pub fn rank_of(&self, y: Subset) -> usize {
        let mut best = 0;
        for b in &self.bases {
            let k = b.intersection(y).len();
            if k > best {
                best = k;
                if best == y.len() || best == self.rank {
                    break;
                }
            }
        }
        best
    }

    pub fn is_independent(&self, y: Subset) -> bool {
        self.rank_of(y) == y.len()
    }

    /// Elements in no basis.
    pub fn loops(&self) -> Subset {
        let union = self.bases.iter().fold(Subset::EMPTY, |a, &b| a.union(b));
        union.complement(self.n)
    }

    /// Elements in every basis.
    pub fn coloops(&self) -> Subset {
        self.bases
            .iter()
            .fold(Subset::full(self.n), |a, &b| a.intersection(b))
    }

    pub fn loops_coloops(&self) -> (Subset, Subset) {
        (self.loops(), self.coloops())
    }

    pub fn is_loop_free(&self) -> bool {
        self.loops().is_empty()
    }

    /// Loop-free and coloop-free.
    pub fn is_interior(&self) -> bool {
        self.loops().is_empty() && self.coloops().is_empty()
    }

    pub fn dual(&self) -> Matroid {
        Matroid::from_unsorted_unchecked(
            self.n,
            self.bases.iter().map(|b| b.complement(self.n)).collect(),
        )
    }

    /// Apply an element permutation; `perm[i - 1]` is the image of `i`.
    pub fn relabel(&self, perm: &[usize]) -> Matroid {
        let map = |b: &Subset| b.iter().fold(Subset::EMPTY, |a, e| a.insert(perm[e - 1]));
        Matroid::from_unsorted_unchecked(self.n, self.bases.iter().map(map).collect())
    }

    /// `M \ delete / contract` on the remaining elements, re-indexed in order.
    /// `contract` must be independent.
    pub fn minor(&self, delete: Subset, contract: Subset) -> Result<Matroid> {
        let full = Subset::full(self.n);
        if !delete.is_subset(full) || !contract.is_subset(full) {
            return Err(Error::invalid("minor sets leave the ground set"));
        }
        if !delete.is_disjoint(contract) {
            return Err(Error::invalid(format!(
                "delete {delete} and contract {contract} overlap"
            )));
        }
        if !self.is_independent(contract) {
            return Err(Error::invalid(format!("contract set {contract} is dependent")));
        }
        let ground = full.difference(delete.union(contract));
        let bases: Vec<Subset> = self
            .bases
            .iter()
            .filter(|b| contract.is_subset(**b) && b.is_disjoint(delete))
            .map(|b| b.difference(contract).compress(ground))
            .collect();
        if bases.is_empty() {
            return Err(Error::DegenerateMinor(format!(
                "no basis contains {contract} and avoids {delete}"
            )));
        }
        let m = Matroid::from_unsorted_unchecked(ground.len(), bases);
        debug_assert!(exchange_violation(m.n, &m.bases).is_none());
        Ok(m)
    }

    /// `M|_Q`, on the elements of `q` re-indexed in order.
    pub fn restriction(&self, q: Subset) -> Matroid {
        let r = self.rank_of(q);
        let bases = self
            .bases
            .iter()
            .map(|b| b.intersection(q))
            .filter(|b| b.len() == r)
            .map(|b| b.compress(q))
            .collect();
        Matroid::from_unsorted_unchecked(q.len(), bases)
    }

    /// `M/Q`, on the complement of `q` re-indexed in order.
    pub fn contraction(&self, q: Subset) -> Matroid {
        let r = self.rank_of(q);
        let rest = q.complement(self.n);
        let bases = self
            .bases
            .iter()
            .filter(|b| b.intersection(q).len() == r)
            .map(|b| b.difference(q).compress(rest))
            .collect();
        Matroid::from_unsorted_unchecked(rest.len(), bases)
    }

    /// Direct sum of matroids placed on disjoint ground sets inside `[n]`.
    /// Each part's matroid lives on `|ground|` elements.
    pub fn direct_sum(n: usize, parts: &[(Subset, &Matroid)]) -> Result<Matroid> {
        let mut seen = Subset::EMPTY;
        let mut bases = vec![Subset::EMPTY];
        for (ground, m) in parts {
            if !ground.is_disjoint(seen) || ground.len() != m.n || !ground.is_subset(Subset::full(n)) {
                return Err(Error::invalid("direct sum parts must be disjoint and sized to their ground sets"));
            }
            seen = seen.union(*ground);
            let mut next = Vec::with_capacity(bases.len() * m.bases.len());
            for a in &bases {
                for b in &m.bases {
                    next.push(a.union(b.expand(*ground)));
                }
            }
            bases = next;
        }
        if seen != Subset::full(n) {
            return Err(Error::invalid("direct sum parts do not cover the ground set"));
        }
        Ok(Matroid::from_unsorted_unchecked(n, bases))
    }

    /// Connected components as ground sets, ordered by least element.
    ///
    /// Two elements share a component exactly when they are linked through
    /// fundamental circuits of a fixed basis.
    pub fn component_sets(&self) -> Vec<Subset> {
        let n = self.n;
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let nx = p[c];
                p[c] = r;
                c = nx;
            }
            r
        }
        let b0 = self.bases[0];
        let lookup = self.lookup();
        for e in b0.complement(n).iter() {
            for b in b0.iter() {
                if lookup.contains(b0.remove(b).insert(e)) {
                    let (x, y) = (find(&mut parent, e), find(&mut parent, b));
                    if x != y {
                        parent[x.max(y)] = x.min(y);
                    }
                }
            }
        }
        let mut blocks: Vec<Subset> = Vec::new();
        let mut root_index = vec![usize::MAX; n + 1];
        for e in 1..=n {
            let r = find(&mut parent, e);
            if root_index[r] == usize::MAX {
                root_index[r] = blocks.len();
                blocks.push(Subset::EMPTY);
            }
            blocks[root_index[r]] = blocks[root_index[r]].insert(e);
        }
        blocks
    }

    /// Components with their restrictions.
    pub fn connected_components(&self) -> Vec<(Subset, Matroid)> {
        self.component_sets()
            .into_iter()
            .map(|s| (s, self.restriction(s)))
            .collect()
    }

    pub fn num_components(&self) -> usize {
        self.component_sets().len()
    }

    /// A single component; the empty matroid is not connected.
    pub fn is_connected(&self) -> bool {
        self.n >= 1 && self.num_components() == 1
    }

    /// All closed sets, in increasing mask order.
    pub fn flats(&self) -> Vec<Subset> {
        let full = Subset::full(self.n);
        all_subsets_of(full)
            .filter(|&y| {
                let r = self.rank_of(y);
                y.complement(self.n)
                    .iter()
                    .all(|x| self.rank_of(y.insert(x)) > r)
            })
            .collect()
    }

    /// Flats `Q` with `M|_Q` and `M/Q` both connected.
    pub fn good_flats(&self) -> Vec<Subset> {
        self.flats()
            .into_iter()
            .filter(|&q| {
                !q.is_empty()
                    && q != Subset::full(self.n)
                    && self.restriction(q).is_connected()
                    && self.contraction(q).is_connected()
            })
            .collect()
    }

    /// Number of good flats containing `f` but not `g`.
    pub fn chain_length(&self, f: usize, g: usize) -> usize {
        self.good_flats()
            .into_iter()
            .filter(|q| q.contains(f) && !q.contains(g))
            .count()
    }

    /// Cycle matroid of a connected multigraph on vertices `0..vertices`;
    /// edge `k` (0-based) becomes ground element `k + 1`.
    pub fn graphical(vertices: usize, edges: &[(usize, usize)]) -> Result<Matroid> {
        if vertices == 0 {
            return Err(Error::invalid("graph has no vertices"));
        }
        let m = edges.len();
        if m > MAX_GROUND {
            return Err(Error::invalid(format!("more than {MAX_GROUND} edges")));
        }
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices || v >= vertices) {
            return Err(Error::invalid(format!("edge ({u},{v}) uses a missing vertex")));
        }
        let spans = |s: Subset| -> (bool, usize) {
            let mut parent: Vec<usize> = (0..vertices).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                if p[x] != x {
                    let r = find(p, p[x]);
                    p[x] = r;
                }
                p[x]
            }
            let mut merges = 0;
            let mut acyclic = true;
            for e in s.iter() {
                let (u, v) = edges[e - 1];
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                if a == b {
                    acyclic = false;
                } else {
                    parent[a] = b;
                    merges += 1;
                }
            }
            (acyclic, merges)
        };
        let (_, merges) = spans(Subset::full(m));
        if merges != vertices - 1 {
            return Err(Error::invalid("graph is disconnected"));
        }
        let bases: Vec<Subset> = KSubsets::new(m, vertices - 1)
            .filter(|&s| spans(s).0)
            .collect();
        Ok(Matroid::from_sorted_unchecked(m, bases))
    }
}
