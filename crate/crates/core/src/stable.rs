//! Generic translations: choosing `v` so that `L(p)` and `L(p') + v` meet
//! transversely, with a checkable certificate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::{is_transverse, Matroid, Transversality};
use crate::plucker::{stable_intersection, PlueckerVector};
use crate::rational::{Point, Rat};
use crate::subdivision::loop_free_faces;

/// Attempts made by [`generic_translation`] before giving up.
pub const TRANSLATION_BUDGET: usize = 64;

/// A pair of loop-free cells whose incidence graph is not a simple forest,
/// together with a negative cycle proving their closed dual cells are disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointPair {
    pub left: Matroid,
    pub right: Matroid,
    pub gamma: Transversality,
    /// Elements `x_0, x_1, .., x_k = x_0` such that the bounds on
    /// `w_(x_(j+1)) - w_(x_j)` add up to a negative number.
    pub cycle: Vec<usize>,
}

/// Why `L(p)` and `L(p')` fail to meet transversely.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub left: Matroid,
    pub right: Matroid,
    pub gamma: Transversality,
}

/// Outcome of checking one translate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum TransversalityCheck {
    Transverse { checked: Vec<DisjointPair> },
    NotTransverse(Obstruction),
}

impl TransversalityCheck {
    pub fn is_transverse(&self) -> bool {
        matches!(self, TransversalityCheck::Transverse { .. })
    }
}

/// An accepted translation vector with its evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranslationCertificate {
    pub v: Point,
    pub seed: u64,
    pub attempts: usize,
    pub checked: Vec<DisjointPair>,
}

/// `bound[x][y]` is the least `c` with `w_y - w_x <= c` on the closed dual cell.
type Bounds = Vec<Vec<Option<Rat>>>;

fn tighten(b: &mut Bounds, x: usize, y: usize, c: Rat) {
    let slot = &mut b[x - 1][y - 1];
    if slot.as_ref().is_none_or(|old| c < *old) {
        *slot = Some(c);
    }
}

/// Difference constraints describing `{w : every basis of m minimizes p_I - w·e_I}`.
fn dual_cell_bounds(p: &PlueckerVector, m: &Matroid) -> Bounds {
    let n = p.n();
    let mut b: Bounds = vec![vec![None; n]; n];
    let b0 = m.bases()[0];
    for x in b0.iter() {
        for y in b0.complement(n).iter() {
            tighten(&mut b, x, y, p.get(b0.remove(x).insert(y)) - p.get(b0));
        }
    }
    let lookup = m.lookup();
    for &base in m.bases() {
        for x in base.iter() {
            for y in base.complement(n).iter() {
                let other = base.remove(x).insert(y);
                if lookup.contains(other) {
                    let diff = p.get(other) - p.get(base);
                    tighten(&mut b, x, y, diff.clone());
                    tighten(&mut b, y, x, -diff);
                }
            }
        }
    }
    b
}

/// A negative cycle in the union of two constraint systems, if any.
fn negative_cycle(a: &Bounds, b: &Bounds) -> Option<Vec<usize>> {
    let n = a.len();
    let mut edges = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let c = match (&a[x][y], &b[x][y]) {
                (Some(s), Some(t)) => Some(s.min(t).clone()),
                (Some(s), None) | (None, Some(s)) => Some(s.clone()),
                (None, None) => None,
            };
            if let Some(c) = c {
                edges.push((x, y, c));
            }
        }
    }
    // Bellman-Ford from a virtual source joined to every vertex at cost 0
    let mut dist = vec![Rat::zero(); n];
    let mut parent = vec![usize::MAX; n];
    let mut last = None;
    for _ in 0..=n {
        last = None;
        for (x, y, c) in &edges {
            let cand = &dist[*x] + c;
            if cand < dist[*y] {
                dist[*y] = cand;
                parent[*y] = *x;
                last = Some(*y);
            }
        }
        last?;
    }
    let mut v = last?;
    for _ in 0..n {
        v = parent[v];
    }
    let mut cycle = vec![v];
    let mut u = parent[v];
    while u != v {
        cycle.push(u);
        u = parent[u];
    }
    cycle.push(v);
    cycle.reverse();
    Some(cycle.into_iter().map(|x| x + 1).collect())
}

/// Sum of the tighter bounds along a cycle of elements.
fn cycle_weight(a: &Bounds, b: &Bounds, cycle: &[usize]) -> Option<Rat> {
    let mut total = Rat::zero();
    for w in cycle.windows(2) {
        let (x, y) = (w[0] - 1, w[1] - 1);
        let c = match (&a[x][y], &b[x][y]) {
            (Some(s), Some(t)) => s.min(t).clone(),
            (Some(s), None) | (None, Some(s)) => s.clone(),
            (None, None) => return None,
        };
        total += c;
    }
    Some(total)
}

struct Cells {
    faces: Vec<Matroid>,
}

impl Cells {
    fn of(p: &PlueckerVector) -> Result<Self> {
        Ok(Cells { faces: loop_free_faces(p)? })
    }
}

fn check_cells(p: &PlueckerVector, left: &Cells, p2: &PlueckerVector, right: &Cells) -> Result<TransversalityCheck> {
    let lb: Vec<Bounds> = left.faces.iter().map(|m| dual_cell_bounds(p, m)).collect();
    let rb: Vec<Bounds> = right.faces.iter().map(|m| dual_cell_bounds(p2, m)).collect();
    let mut checked = Vec::new();
    for (m, a) in left.faces.iter().zip(&lb) {
        for (m2, b) in right.faces.iter().zip(&rb) {
            let gamma = is_transverse(m, m2)?;
            if gamma.is_transverse() {
                continue;
            }
            match negative_cycle(a, b) {
                Some(cycle) => checked.push(DisjointPair { left: m.clone(), right: m2.clone(), gamma, cycle }),
                None => {
                    return Ok(TransversalityCheck::NotTransverse(Obstruction {
                        left: m.clone(),
                        right: m2.clone(),
                        gamma,
                    }))
                }
            }
        }
    }
    Ok(TransversalityCheck::Transverse { checked })
}

fn check_shapes(p: &PlueckerVector, p2: &PlueckerVector) -> Result<()> {
    if p.n() != p2.n() {
        return Err(Error::invalid("vectors live in different ambient spaces"));
    }
    if p.d() + p2.d() < p.n() {
        return Err(Error::invalid(format!("ranks {} + {} fall short of {}", p.d(), p2.d(), p.n())));
    }
    p.require_valid()?;
    p2.require_valid()
}

/// Do `L(p)` and `L(p') + v` meet transversely? Every pair of loop-free cells
/// whose closed dual cells meet must have a simple forest as incidence graph.
pub fn transversality(p: &PlueckerVector, p2: &PlueckerVector, v: &Point) -> Result<TransversalityCheck> {
    check_shapes(p, p2)?;
    let shifted = p2.translate(v)?;
    check_cells(p, &Cells::of(p)?, &shifted, &Cells::of(p2)?)
}

/// Recheck a certificate: each listed cycle must be negative for the two cells.
pub fn verify_certificate(p: &PlueckerVector, p2: &PlueckerVector, cert: &TranslationCertificate) -> Result<bool> {
    check_shapes(p, p2)?;
    let shifted = p2.translate(&cert.v)?;
    let needed = match check_cells(p, &Cells::of(p)?, &shifted, &Cells::of(p2)?)? {
        TransversalityCheck::Transverse { checked } => checked.len(),
        TransversalityCheck::NotTransverse(_) => return Ok(false),
    };
    if needed != cert.checked.len() {
        return Ok(false);
    }
    for pair in &cert.checked {
        let a = dual_cell_bounds(p, &pair.left);
        let b = dual_cell_bounds(&shifted, &pair.right);
        if pair.cycle.first() != pair.cycle.last() || !cycle_weight(&a, &b, &pair.cycle).is_some_and(|w| w.is_negative()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Draw integer vectors with coordinates in `[-2^31, 2^31)` from a ChaCha
/// stream seeded with `seed` until `L(p)` and `L(p') + v` meet transversely.
pub fn generic_translation(p: &PlueckerVector, p2: &PlueckerVector, seed: u64) -> Result<TranslationCertificate> {
    check_shapes(p, p2)?;
    let left = Cells::of(p)?;
    let right = Cells::of(p2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=TRANSLATION_BUDGET {
        let v = Point((0..p.n()).map(|_| Rat::from_integer(rng.gen_range(-(1i64 << 31)..1i64 << 31))).collect());
        let shifted = p2.translate(&v)?;
        if let TransversalityCheck::Transverse { checked } = check_cells(p, &left, &shifted, &right)? {
            return Ok(TranslationCertificate { v, seed, attempts: attempt, checked });
        }
    }
    Err(Error::Resource { attempts: TRANSLATION_BUDGET, seed })
}

/// Stable intersection of `p` with a generic translate of `p'`.
pub fn generic_stable_intersection(
    p: &PlueckerVector,
    p2: &PlueckerVector,
    seed: u64,
) -> Result<(PlueckerVector, TranslationCertificate)> {
    let cert = generic_translation(p, p2, seed)?;
    let q = stable_intersection(p, &p2.translate(&cert.v)?)?;
    Ok((q, cert))
}
