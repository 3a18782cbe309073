//! Seeded generators for matroids and tropical Plücker vectors.

use rand::Rng;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::plucker::{corank_vector, hyperplane, PlueckerVector};
use crate::rational::Rat;
use crate::sptree::{tree_space, Tree, WeightedTree};
use crate::stable::generic_stable_intersection;
use crate::subset::{KSubsets, Subset};

/// Determinant of a small integer matrix by fraction-free elimination.
fn det(mut a: Vec<Vec<i128>>) -> i128 {
    let k = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| a[r][c] != 0) else { return 0 };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        for r in c + 1..k {
            for j in c + 1..k {
                a[r][j] = (a[c][c] * a[r][j] - a[r][c] * a[c][j]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[c][c];
    }
    sign * a[k - 1][k - 1]
}

/// Column matroid of a `d × n` integer matrix.
pub fn column_matroid(rows: &[Vec<i64>]) -> Result<Matroid> {
    let d = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::invalid("ragged matrix"));
    }
    let bases: Vec<Subset> = KSubsets::new(n, d)
        .filter(|s| {
            let cols = s.elements();
            let minor = rows.iter().map(|r| cols.iter().map(|&c| r[c - 1] as i128).collect()).collect();
            d == 0 || det(minor) != 0
        })
        .collect();
    if bases.is_empty() {
        return Err(Error::invalid("matrix does not have full row rank"));
    }
    Matroid::new(n, bases)
}

/// A loop-free rank `d` matroid represented by a random matrix with entries
/// in `-range..=range`.
pub fn random_linear_matroid<R: Rng + ?Sized>(d: usize, n: usize, range: i64, rng: &mut R) -> Result<Matroid> {
    if d == 0 || d > n {
        return Err(Error::invalid(format!("rank {d} on {n} elements has loops or is impossible")));
    }
    loop {
        let rows: Vec<Vec<i64>> = (0..d).map(|_| (0..n).map(|_| rng.gen_range(-range..=range)).collect()).collect();
        if (0..n).any(|c| rows.iter().all(|r| r[c] == 0)) {
            continue;
        }
        if let Ok(m) = column_matroid(&rows) {
            return Ok(m);
        }
    }
}

/// `p_I` is the tropical determinant (minimum over matchings) of the columns
/// `I` of a random `d × n` matrix with entries in `0..=range`.
pub fn random_stiefel<R: Rng + ?Sized>(d: usize, n: usize, range: i64, rng: &mut R) -> Result<PlueckerVector> {
    let a: Vec<Vec<i64>> = (0..d).map(|_| (0..n).map(|_| rng.gen_range(0..=range)).collect()).collect();
    let p = PlueckerVector::from_fn(n, d, |s| {
        let cols = s.elements();
        // best[mask] = min weight matching rows 0..|mask| to the columns in mask
        let mut best = vec![i64::MAX; 1 << d];
        best[0] = 0;
        for mask in 0usize..1 << d {
            if best[mask] == i64::MAX {
                continue;
            }
            let row = mask.count_ones() as usize;
            if row == d {
                continue;
            }
            for (k, &c) in cols.iter().enumerate() {
                if mask & (1 << k) == 0 {
                    let next = mask | (1 << k);
                    best[next] = best[next].min(best[mask] + a[row][c - 1]);
                }
            }
        }
        Rat::from_integer(best[(1 << d) - 1])
    })?;
    p.require_valid()?;
    Ok(p)
}

/// `τ^d` of a uniformly random trivalent tree with internal lengths in `1..=range`.
pub fn random_tree_space<R: Rng + ?Sized>(n: usize, d: usize, range: i64, rng: &mut R) -> Result<PlueckerVector> {
    let t = Tree::random_trivalent(n, rng)?;
    tree_space(&WeightedTree::random_lengths(t, range, rng), d)
}

/// A random tropical hyperplane with coefficients in `-range..=range`.
pub fn random_hyperplane<R: Rng + ?Sized>(n: usize, range: i64, rng: &mut R) -> Result<PlueckerVector> {
    let c: Vec<Rat> = (0..n).map(|_| Rat::from_integer(rng.gen_range(-range..=range))).collect();
    hyperplane(&c)
}

/// Stable intersection of `n - d` generically translated random hyperplanes.
pub fn random_constructible<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<PlueckerVector> {
    if d == 0 || d >= n {
        return Err(Error::invalid(format!("constructible spaces from hyperplanes need 1 <= d < n, got {d}")));
    }
    let mut p = random_hyperplane(n, 3, rng)?;
    for _ in d + 1..n {
        let h = random_hyperplane(n, 3, rng)?;
        let (q, _) = generic_stable_intersection(&p, &h, rng.gen())?;
        p = q;
    }
    Ok(p)
}

/// Corank vector of a random loop-free linear matroid.
pub fn random_corank<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<PlueckerVector> {
    corank_vector(&random_linear_matroid(d, n, 2, rng)?)
}
