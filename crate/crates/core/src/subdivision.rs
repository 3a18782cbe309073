//! The matroid subdivision `D_p` of the hypersimplex and its face counts.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::plucker::{argmin_of, stable_intersection, PlueckerVector};
use crate::rational::{Point, Rat};
use crate::subset::{KSubsets, Subset};

/// A face `P_M` of the subdivision.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub matroid: Matroid,
    /// Dimension of `P_M`.
    pub dim: usize,
    /// Number of connected components of the matroid.
    pub components: usize,
    /// Loop-free and coloop-free.
    pub interior: bool,
}

impl Cell {
    pub fn new(matroid: Matroid) -> Result<Self> {
        let components = matroid.num_components();
        let dim = affine_dimension(matroid.n(), matroid.bases());
        if dim + components != matroid.n() {
            return Err(Error::invariant(format!(
                "cell {matroid:?} has dimension {dim} but {components} components"
            )));
        }
        let interior = matroid.is_interior();
        Ok(Cell { matroid, dim, components, interior })
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Cell", 3)?;
        st.serialize_field("matroid", &self.matroid)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("components", &self.components)?;
        st.end()
    }
}

/// Dimension of the affine span of `{e_B}`, by exact elimination.
pub fn affine_dimension(n: usize, bases: &[Subset]) -> usize {
    let Some(&b0) = bases.first() else { return 0 };
    let rows: Vec<Vec<i128>> = bases[1..]
        .iter()
        .map(|b| {
            (1..=n)
                .map(|e| b.contains(e) as i128 - b0.contains(e) as i128)
                .collect()
        })
        .collect();
    integer_rank(rows, n)
}

/// Rank of an integer matrix by fraction-free elimination.
pub(crate) fn integer_rank(mut rows: Vec<Vec<i128>>, cols: usize) -> usize {
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in rank + 1..rows.len() {
            for c in col + 1..cols {
                rows[r][c] = (rows[rank][col] * rows[r][c] - rows[r][col] * rows[rank][c]) / prev;
            }
            rows[r][col] = 0;
        }
        prev = rows[rank][col];
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// A full-dimensional cell with the point of `R^n` dual to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub cell: Cell,
    /// Normalized so the last coordinate is zero.
    pub dual_vertex: Point,
}

/// `D_p`: facets, interior faces and their containments.
#[derive(Clone, Debug)]
pub struct Subdivision {
    p: PlueckerVector,
    facets: Vec<Facet>,
    interior: Vec<Cell>,
    /// `(i, j)` when interior face `i` is a proper face of interior face `j`.
    containment: Vec<(usize, usize)>,
}

impl Subdivision {
    pub fn new(p: &PlueckerVector) -> Result<Self> {
        p.require_valid()?;
        let facets = facets(p)?;
        let interior = interior_faces_of(p, &facets)?;
        let mut containment = Vec::new();
        for (i, a) in interior.iter().enumerate() {
            for (j, b) in interior.iter().enumerate() {
                if i != j
                    && a.matroid.num_bases() < b.matroid.num_bases()
                    && a.matroid.bases().iter().all(|x| b.matroid.is_basis(*x))
                {
                    containment.push((i, j));
                }
            }
        }
        Ok(Subdivision { p: p.clone(), facets, interior, containment })
    }

    pub fn plucker(&self) -> &PlueckerVector {
        &self.p
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet_matroids(&self) -> impl Iterator<Item = &Matroid> {
        self.facets.iter().map(|f| &f.cell.matroid)
    }

    /// Loop-free and coloop-free faces of every dimension, ordered by
    /// decreasing dimension, then by basis list.
    pub fn interior_faces(&self) -> &[Cell] {
        &self.interior
    }

    pub fn containment(&self) -> &[(usize, usize)] {
        &self.containment
    }

    /// `f[i - 1]` counts interior faces whose matroid has `i` components,
    /// for `i = 1..=min(d, n - d)`.
    pub fn bounded_f_vector(&self) -> Vec<u64> {
        let (n, d) = (self.p.n(), self.p.d());
        let len = d.min(n - d);
        let mut f = vec![0u64; len];
        for c in &self.interior {
            assert!(
                c.components >= 1 && c.components <= len,
                "interior face with {} components in rank {d} on {n}",
                c.components
            );
            f[c.components - 1] += 1;
        }
        f
    }

    /// Interior faces paired with their dimensions, as the Tutte
    /// decomposition check expects.
    pub fn interior_with_dims(&self) -> Vec<(Matroid, usize)> {
        self.interior.iter().map(|c| (c.matroid.clone(), c.dim)).collect()
    }
}

impl Serialize for Subdivision {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Vertices<'a>(&'a [Facet]);
        impl Serialize for Vertices<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (k, f) in self.0.iter().enumerate() {
                    map.serialize_entry(&k.to_string(), &f.dual_vertex)?;
                }
                map.end()
            }
        }
        let facets: Vec<&Matroid> = self.facet_matroids().collect();
        let mut st = serializer.serialize_struct("Subdivision", 4)?;
        st.serialize_field("facets", &facets)?;
        st.serialize_field("interior", &self.interior)?;
        st.serialize_field("f_bounded", &self.bounded_f_vector())?;
        st.serialize_field("dual_vertices", &Vertices(&self.facets))?;
        st.end()
    }
}

/// Working state of a point `w`: the heights `p_I - w·e_I` in colex order.
struct Probe {
    n: usize,
    d: usize,
    subsets: Vec<Subset>,
    w: Point,
    heights: Vec<Rat>,
}

impl Probe {
    fn new(p: &PlueckerVector, w: Point) -> Self {
        Probe {
            n: p.n(),
            d: p.d(),
            subsets: p.subsets().collect(),
            heights: p.heights(&w),
            w,
        }
    }

    fn argmin(&self) -> Vec<Subset> {
        argmin_of(self.n, self.d, &self.heights)
    }

    fn min(&self) -> Rat {
        self.heights.iter().min().unwrap().clone()
    }

    /// Move `w` by `t·e_a`.
    fn shift(&mut self, a: Subset, t: &Rat) {
        for e in a.iter() {
            self.w.0[e - 1] += t;
        }
        for (h, s) in self.heights.iter_mut().zip(&self.subsets) {
            let k = s.intersection(a).len();
            if k > 0 {
                *h -= &(t * Rat::from_integer(k as i64));
            }
        }
    }

    /// Smallest `t > 0` at which some subset with `|I ∩ a| > k` ties the
    /// current minimum when moving along `+e_a` (or along `-e_a` with
    /// `|I ∩ a| < k` when `up` is false).
    fn first_tie(&self, a: Subset, k: usize, up: bool) -> Option<Rat> {
        let min = self.min();
        let mut best: Option<Rat> = None;
        for (h, s) in self.heights.iter().zip(&self.subsets) {
            let ki = s.intersection(a).len();
            let slope = if up { ki as i64 - k as i64 } else { k as i64 - ki as i64 };
            if slope <= 0 {
                continue;
            }
            let t = (h - &min) / Rat::from_integer(slope);
            if best.as_ref().is_none_or(|b| t < *b) {
                best = Some(t);
            }
        }
        best
    }
}

/// Walk from `w` until the minimizing cell is full-dimensional.
fn climb_to_facet(p: &PlueckerVector, w: Point) -> Result<Probe> {
    let mut probe = Probe::new(p, w);
    loop {
        let bases = probe.argmin();
        let m = Matroid::from_sorted_unchecked(p.n(), bases);
        let comps = m.component_sets();
        if comps.len() == 1 {
            return Ok(probe);
        }
        let s = comps[0];
        let r = m.bases()[0].intersection(s).len();
        if let Some(t) = probe.first_tie(s, r, true) {
            probe.shift(s, &t);
        } else if let Some(t) = probe.first_tie(s, r, false) {
            probe.shift(s, &-t);
        } else {
            return Err(Error::invariant(format!("cannot leave the cell {m:?}")));
        }
    }
}

/// The full-dimensional cells of `D_p`, sorted by basis list.
pub fn facets(p: &PlueckerVector) -> Result<Vec<Facet>> {
    p.require_valid()?;
    let (n, d) = (p.n(), p.d());
    if d == 0 || d == n {
        let m = Matroid::uniform(d, n);
        return Ok(vec![Facet { cell: Cell::new(m)?, dual_vertex: Point::zero(n) }]);
    }
    let start = climb_to_facet(p, Point::zero(n))?;
    let mut seen: HashMap<Vec<Subset>, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    seen.insert(start.argmin(), ());
    queue.push_back(start);
    let full = Subset::full(n);
    while let Some(probe) = queue.pop_front() {
        let bases = probe.argmin();
        let mut ridges_seen: HashSet<Vec<Subset>> = HashSet::new();
        for a_bits in 1..full.bits() {
            let a = Subset::from_bits(a_bits);
            let k = bases.iter().map(|b| b.intersection(a).len()).max().unwrap();
            let ridge: Vec<Subset> = bases
                .iter()
                .copied()
                .filter(|b| b.intersection(a).len() == k)
                .collect();
            if ridge.len() == bases.len() {
                continue;
            }
            let union = ridge.iter().fold(Subset::EMPTY, |x, &b| x.union(b));
            let inter = ridge.iter().fold(full, |x, &b| x.intersection(b));
            if union != full || !inter.is_empty() {
                continue;
            }
            if !ridges_seen.insert(ridge.clone()) {
                continue;
            }
            let rm = Matroid::from_sorted_unchecked(n, ridge);
            if rm.num_components() != 2 {
                continue;
            }
            let t = probe
                .first_tie(a, k, true)
                .ok_or_else(|| Error::invariant("interior ridge with no neighbour"))?;
            let mut next = Probe { n, d, subsets: probe.subsets.clone(), w: probe.w.clone(), heights: probe.heights.clone() };
            next.shift(a, &t);
            let nb = next.argmin();
            if seen.contains_key(&nb) {
                continue;
            }
            if !Matroid::from_sorted_unchecked(n, nb.clone()).is_connected() {
                return Err(Error::invariant(format!("crossing ridge {rm:?} did not reach a facet")));
            }
            seen.insert(nb, ());
            queue.push_back(next);
        }
        out.push(Facet {
            cell: Cell::new(Matroid::new(n, bases).map_err(|e| Error::invariant(e.to_string()))?)?,
            dual_vertex: probe.w.normalized(),
        });
    }
    out.sort_by(|a, b| a.cell.matroid.bases().cmp(b.cell.matroid.bases()));
    let covered: HashSet<Subset> = out.iter().flat_map(|f| f.cell.matroid.bases().iter().copied()).collect();
    if covered.len() != p.values().len() {
        return Err(Error::invariant("facets do not cover every vertex of the hypersimplex"));
    }
    for f in &out {
        if f.cell.dim + 1 != n {
            return Err(Error::invariant("facet of the wrong dimension"));
        }
    }
    Ok(out)
}

fn sorted_intersection(a: &[Subset], b: &[Subset]) -> Vec<Subset> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn is_interior_family(n: usize, bases: &[Subset]) -> bool {
    let full = Subset::full(n);
    let union = bases.iter().fold(Subset::EMPTY, |x, &b| x.union(b));
    let inter = bases.iter().fold(full, |x, &b| x.intersection(b));
    union == full && inter.is_empty()
}

fn interior_faces_of(p: &PlueckerVector, facets: &[Facet]) -> Result<Vec<Cell>> {
    let n = p.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let facet_bases: Vec<&[Subset]> = facets.iter().map(|f| f.cell.matroid.bases()).collect();
    let mut known: HashSet<Vec<Subset>> = HashSet::new();
    let mut queue: VecDeque<Vec<Subset>> = VecDeque::new();
    for b in &facet_bases {
        if is_interior_family(n, b) && known.insert(b.to_vec()) {
            queue.push_back(b.to_vec());
        }
    }
    while let Some(face) = queue.pop_front() {
        for b in &facet_bases {
            let x = sorted_intersection(&face, b);
            if x.is_empty() || x.len() == face.len() || !is_interior_family(n, &x) {
                continue;
            }
            if known.insert(x.clone()) {
                queue.push_back(x);
            }
        }
    }
    let mut cells = known
        .into_iter()
        .map(|b| {
            let m = Matroid::new(n, b).map_err(|e| Error::invariant(format!("interior face is not a matroid: {e}")))?;
            Cell::new(m)
        })
        .collect::<Result<Vec<_>>>()?;
    cells.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.matroid.bases().cmp(b.matroid.bases())));
    Ok(cells)
}

/// Interior faces of `D_p`.
pub fn interior_faces(p: &PlueckerVector) -> Result<Vec<Cell>> {
    Ok(Subdivision::new(p)?.interior)
}

pub fn bounded_f_vector(p: &PlueckerVector) -> Result<Vec<u64>> {
    Ok(Subdivision::new(p)?.bounded_f_vector())
}

/// Every face of `D_p`, boundary faces included, as basis lists. Faces of a
/// cell are reached by maximizing `|B ∩ A|` over its bases.
pub fn all_faces(p: &PlueckerVector) -> Result<Vec<Matroid>> {
    let n = p.n();
    let fs = facets(p)?;
    let full = Subset::full(n);
    let mut known: HashSet<Vec<Subset>> = HashSet::new();
    let mut queue: VecDeque<Vec<Subset>> = VecDeque::new();
    for f in &fs {
        let b = f.cell.matroid.bases().to_vec();
        if known.insert(b.clone()) {
            queue.push_back(b);
        }
    }
    while let Some(face) = queue.pop_front() {
        if face.len() == 1 {
            continue;
        }
        for a_bits in 1..full.bits() {
            let a = Subset::from_bits(a_bits);
            let k = face.iter().map(|b| b.intersection(a).len()).max().unwrap();
            let sub: Vec<Subset> = face.iter().copied().filter(|b| b.intersection(a).len() == k).collect();
            if sub.len() < face.len() && known.insert(sub.clone()) {
                queue.push_back(sub);
            }
        }
    }
    let mut out: Vec<Matroid> = known
        .into_iter()
        .map(|b| Matroid::new(n, b).map_err(|e| Error::invariant(format!("face is not a matroid: {e}"))))
        .collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

/// All loop-free faces of `D_p`.
pub fn loop_free_faces(p: &PlueckerVector) -> Result<Vec<Matroid>> {
    Ok(all_faces(p)?.into_iter().filter(Matroid::is_loop_free).collect())
}

/// `g[i - 1]` = number of `i`-dimensional faces of the tropical linear space
/// (unbounded ones included), for `i = 1..=d`. Computed by summing the
/// interior face counts of the contractions `p / Λ`.
pub fn loop_free_face_count(p: &PlueckerVector) -> Result<Vec<u64>> {
    p.require_valid()?;
    let (n, d) = (p.n(), p.d());
    let mut g = vec![0u64; d];
    for k in 0..=d {
        for lambda in KSubsets::new(n, k) {
            let minor = p.minor(Subset::EMPTY, lambda)?;
            if minor.n() == 0 {
                continue;
            }
            for c in Subdivision::new(&minor)?.interior_faces() {
                let i = c.components + k;
                if i == 0 || i > d {
                    return Err(Error::invariant(format!("face of dimension {i} in rank {d}")));
                }
                g[i - 1] += 1;
            }
        }
    }
    Ok(g)
}

/// The same counts as [`loop_free_face_count`], by enumerating every face.
pub fn loop_free_face_count_direct(p: &PlueckerVector) -> Result<Vec<u64>> {
    let d = p.d();
    let mut g = vec![0u64; d];
    for m in loop_free_faces(p)? {
        let c = m.num_components();
        if c == 0 || c > d {
            return Err(Error::invariant(format!("loop-free face with {c} components in rank {d}")));
        }
        g[c - 1] += 1;
    }
    Ok(g)
}

/// The point `w` (last coordinate zero) at which exactly the bases of the
/// facet `m` minimize `p_I - w·e_I`.
pub fn dual_vertex(p: &PlueckerVector, m: &Matroid) -> Result<Point> {
    let n = p.n();
    if m.n() != n || m.rank() != p.d() {
        return Err(Error::invalid("matroid does not match the vector's shape"));
    }
    if n == 0 {
        return Ok(Point::zero(0));
    }
    if !m.is_connected() {
        if p.d() == 0 || p.d() == n {
            return Ok(Point::zero(n));
        }
        return Err(Error::invalid(format!("{m:?} is disconnected, so it is not a facet")));
    }
    // w_y - w_x = p_(B-x+y) - p_B along exchanges inside m
    let mut w: Vec<Option<Rat>> = vec![None; n];
    w[n - 1] = Some(Rat::zero());
    let lookup = m.lookup();
    let mut changed = true;
    while changed {
        changed = false;
        for &b in m.bases() {
            for x in b.iter() {
                for y in b.complement(n).iter() {
                    let b2 = b.remove(x).insert(y);
                    if !lookup.contains(b2) {
                        continue;
                    }
                    let diff = p.get(b2) - p.get(b);
                    match (&w[x - 1], &w[y - 1]) {
                        (Some(wx), None) => {
                            w[y - 1] = Some(wx + &diff);
                            changed = true;
                        }
                        (None, Some(wy)) => {
                            w[x - 1] = Some(wy - &diff);
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    let w = Point(
        w.into_iter()
            .map(|c| c.ok_or_else(|| Error::invariant("exchange graph of a connected matroid is disconnected")))
            .collect::<Result<_>>()?,
    );
    let heights = p.heights(&w);
    let level = heights[m.bases()[0].colex_rank()].clone();
    for (s, h) in p.subsets().zip(&heights) {
        let ok = if lookup.contains(s) { *h == level } else { *h > level };
        if !ok {
            return Err(Error::invalid(format!("{m:?} is not a facet of the subdivision")));
        }
    }
    Ok(w)
}

/// Every facet of `D_q` is `M ∧ M'` for faces `M`, `M'` of `D_p`, `D_p'`,
/// where `q` is the stable intersection of `p` and `p'`.
pub fn check_stable_cells(q: &PlueckerVector, p: &PlueckerVector, p2: &PlueckerVector) -> Result<bool> {
    p.require_valid()?;
    p2.require_valid()?;
    if stable_intersection(p, p2)? != *q {
        return Err(Error::invalid("q is not the stable intersection of the given vectors"));
    }
    let facets_q = facets(q)?;
    let mut fallback: Option<(Vec<Matroid>, Vec<Matroid>)> = None;
    for f in &facets_q {
        let target = &f.cell.matroid;
        let m = p.minimizing_matroid(&f.dual_vertex)?;
        let m2 = p2.minimizing_matroid(&f.dual_vertex)?;
        if m.is_loop_free() && m2.is_loop_free() {
            if let Ok(x) = crate::matroid::matroid_intersection(&m, &m2) {
                if x == *target {
                    continue;
                }
            }
        }
        if fallback.is_none() {
            fallback = Some((loop_free_faces(p)?, loop_free_faces(p2)?));
        }
        let (left, right) = fallback.as_ref().unwrap();
        let found = left.iter().any(|a| {
            right.iter().any(|b| {
                a.rank() + b.rank() >= a.n()
                    && matches!(crate::matroid::matroid_intersection(a, b), Ok(x) if x == *target)
            })
        });
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}
