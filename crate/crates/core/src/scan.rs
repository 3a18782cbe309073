//! Seeded scans comparing bounded f-vectors against the conjectured bounds.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generate::{random_constructible, random_corank, random_tree_space};
use crate::sptree::fvector_formula;
use crate::subdivision::Subdivision;
use crate::tutte::is_series_parallel;

/// Environment variable holding the worker count for scans.
pub const THREADS_VAR: &str = "TROPLS_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Tree,
    Constructible,
    Corank,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tree" => Ok(Family::Tree),
            "constructible" => Ok(Family::Constructible),
            "corank" => Ok(Family::Corank),
            other => Err(Error::invalid(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Tree => "tree",
            Family::Constructible => "constructible",
            Family::Corank => "corank",
        })
    }
}

/// One generated instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub index: u64,
    pub n: usize,
    pub d: usize,
    pub f: Vec<u64>,
    pub bound: Vec<u64>,
    pub tight: bool,
    /// Every facet matroid is series-parallel.
    pub series_parallel: bool,
    pub violated: bool,
}

impl fmt::Display for ScanRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:>5} n={} d={} f={:?} bound={:?} tight={} sp={}{}",
            self.index,
            self.n,
            self.d,
            self.f,
            self.bound,
            self.tight,
            self.series_parallel,
            if self.violated { " VIOLATION" } else { "" }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub family: Family,
    pub seed: u64,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| r.violated).count()
    }
}

/// Bounded f-vector of `p` against `f_{i,d,n}`; also used outside scans.
pub fn compare_with_bound(index: u64, sd: &Subdivision) -> ScanRow {
    let p = sd.plucker();
    let (n, d) = (p.n(), p.d());
    let f = sd.bounded_f_vector();
    let bound: Vec<u64> = (1..=f.len()).map(|i| fvector_formula(i, d, n)).collect();
    ScanRow {
        index,
        n,
        d,
        tight: f == bound,
        series_parallel: sd.facet_matroids().all(is_series_parallel),
        violated: f.iter().zip(&bound).any(|(a, b)| a > b),
        f,
        bound,
    }
}

fn instance(family: Family, n: usize, d: usize, seed: u64, index: u64) -> Result<ScanRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let p = match family {
        Family::Tree => random_tree_space(n, d, 5, &mut rng)?,
        Family::Constructible => random_constructible(n, d, &mut rng)?,
        Family::Corank => random_corank(n, d, &mut rng)?,
    };
    Ok(compare_with_bound(index, &Subdivision::new(&p)?))
}

/// Worker count from `TROPLS_THREADS`, defaulting to the machine's parallelism.
pub fn worker_count() -> Result<usize> {
    match std::env::var(THREADS_VAR) {
        Ok(v) => v
            .parse::<usize>()
            .ok()
            .filter(|&k| k > 0)
            .ok_or_else(|| Error::invalid(format!("{THREADS_VAR} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, usize::from)),
    }
}

/// Generate `count` instances for every `(n, d)` pair with `1 <= d < n` and
/// compare their bounded f-vectors with the bounds. Instance `k` draws from
/// ChaCha stream `k` of `seed`, so the report does not depend on `threads`.
pub fn conjecture_scan(
    family: Family,
    ns: &[usize],
    ds: &[usize],
    seed: u64,
    count: usize,
    threads: usize,
) -> Result<ScanReport> {
    let mut jobs = Vec::new();
    for &n in ns {
        for &d in ds {
            if d == 0 || d >= n {
                continue;
            }
            for _ in 0..count {
                jobs.push((n, d, jobs.len() as u64));
            }
        }
    }
    if jobs.is_empty() {
        return Err(Error::invalid("no (n, d) pair with 1 <= d < n"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::invalid(format!("cannot start workers: {e}")))?;
    let rows = pool.install(|| {
        jobs.par_iter()
            .map(|&(n, d, k)| instance(family, n, d, seed, k))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(ScanReport { family, seed, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scans_are_deterministic_and_within_bounds() {
        let a = conjecture_scan(Family::Tree, &[5, 6], &[2, 3], 9, 3, 1).unwrap();
        let b = conjecture_scan(Family::Tree, &[5, 6], &[2, 3], 9, 3, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows.len(), 12);
        assert_eq!(a.violations(), 0);
        assert!(a.rows.iter().all(|r| r.tight && r.series_parallel));
        let c = conjecture_scan(Family::Corank, &[5], &[2], 1, 4, 1).unwrap();
        assert_eq!(c.violations(), 0);
    }

    #[test]
    fn family_names() {
        for f in [Family::Tree, Family::Constructible, Family::Corank] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert!("paving".parse::<Family>().is_err());
    }
}
