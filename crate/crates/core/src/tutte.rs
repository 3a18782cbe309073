//! Rank generating function, Tutte polynomial and beta invariant.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::poly::BivariatePoly;
use crate::subset::{Subset, MAX_GROUND};

/// Ground sets up to this size get a dense rank table.
const TABLE_LIMIT: usize = 20;

/// `rank[Y]` for every `Y ⊆ [n]`, indexed by bitmask.
pub fn rank_table(m: &Matroid) -> Vec<u8> {
    let n = m.n();
    assert!(n <= TABLE_LIMIT, "rank table limited to n <= {TABLE_LIMIT}");
    let size = 1usize << n;
    let mut independent = vec![false; size];
    for b in m.bases() {
        let bits = b.bits() as usize;
        // every subset of a basis is independent
        let mut sub = bits;
        loop {
            independent[sub] = true;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & bits;
        }
    }
    let mut rank = vec![0u8; size];
    for y in 1..size {
        if independent[y] {
            rank[y] = y.count_ones() as u8;
        } else {
            let mut best = 0;
            let mut rest = y;
            while rest != 0 {
                let low = rest & rest.wrapping_neg();
                best = best.max(rank[y ^ low]);
                rest ^= low;
            }
            rank[y] = best;
        }
    }
    rank
}

fn for_each_rank(m: &Matroid, mut visit: impl FnMut(Subset, usize)) {
    let n = m.n();
    if n <= TABLE_LIMIT {
        let table = rank_table(m);
        for (y, &r) in table.iter().enumerate() {
            visit(Subset::from_bits(y as u32), r as usize);
        }
    } else {
        assert!(n <= MAX_GROUND);
        for y in 0..(1u64 << n) {
            let s = Subset::from_bits(y as u32);
            visit(s, m.rank_of(s));
        }
    }
}

/// `r_M(x, y) = sum_Y x^(|Y| - rank Y) y^(d - rank Y)`.
pub fn rank_generating(m: &Matroid) -> BivariatePoly {
    let d = m.rank();
    let n = m.n();
    let mut counts = vec![vec![0u64; d + 1]; n + 1];
    for_each_rank(m, |y, r| counts[y.len() - r][d - r] += 1);
    let mut out = BivariatePoly::zero();
    for (i, row) in counts.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            out.add_term(i as u32, j as u32, BigInt::from(c));
        }
    }
    out
}

/// `t_M(z, w) = r_M(z - 1, w - 1)`.
pub fn tutte(m: &Matroid) -> Result<BivariatePoly> {
    let one = BivariatePoly::constant(1);
    let t = rank_generating(m).substitute(
        &(&BivariatePoly::a() - &one),
        &(&BivariatePoly::b() - &one),
    );
    if t.has_negative_coefficient() {
        return Err(Error::invariant(format!("Tutte polynomial of {m:?} has a negative coefficient")));
    }
    Ok(t)
}

/// Coefficient of `z` in the Tutte polynomial.
pub fn beta(m: &Matroid) -> Result<u64> {
    if m.n() == 0 {
        return Err(Error::invalid("beta invariant needs a nonempty ground set"));
    }
    let t = tutte(m)?;
    let t10 = t.coeff(1, 0);
    if m.n() >= 2 && t10 != t.coeff(0, 1) {
        return Err(Error::invariant(format!("t10 = {t10} but t01 = {}", t.coeff(0, 1))));
    }
    t10.to_u64()
        .ok_or_else(|| Error::invariant("beta invariant out of range"))
}

/// `(-1)^rank(M) * sum_X (-1)^|X| rank(X)`, which equals the beta invariant.
pub fn beta_alternating(m: &Matroid) -> u64 {
    let mut acc: i64 = 0;
    for_each_rank(m, |y, r| {
        if y.len() % 2 == 0 {
            acc += r as i64;
        } else {
            acc -= r as i64;
        }
    });
    if m.rank() % 2 == 1 {
        acc = -acc;
    }
    u64::try_from(acc).expect("beta invariant is nonnegative")
}

/// Series-parallel test through the beta invariant. A single coloop and the
/// empty matroid count as series-parallel; anything with a loop does not.
pub fn is_series_parallel(m: &Matroid) -> bool {
    if !m.is_loop_free() {
        return false;
    }
    match m.n() {
        0 | 1 => true,
        _ => beta_alternating(m) == 1,
    }
}

/// `t_M - sum_γ (-1)^(dim P_M - dim P_γ) t_γ` over the interior faces of a
/// matroid subdivision of `P_M`. Zero when the decomposition identity holds.
pub fn tutte_decomposition_residual(m: &Matroid, interior_faces: &[(Matroid, usize)]) -> Result<BivariatePoly> {
    let dim_m = m.n() - m.num_components();
    let mut residual = tutte(m)?;
    for (gamma, dim) in interior_faces {
        if *dim > dim_m {
            return Err(Error::invalid("face dimension exceeds the polytope dimension"));
        }
        let t = tutte(gamma)?;
        residual = if (dim_m - dim).is_multiple_of(2) {
            &residual - &t
        } else {
            &residual + &t
        };
    }
    Ok(residual)
}

/// `true` with a zero residual when the decomposition identity holds.
pub fn tutte_decomposition_check(m: &Matroid, interior_faces: &[(Matroid, usize)]) -> Result<(bool, BivariatePoly)> {
    let r = tutte_decomposition_residual(m, interior_faces)?;
    Ok((r.is_zero(), r))
}

/// Evaluate at integers; handy for checks such as `t(1,1) = #bases`.
pub fn evaluate(t: &BivariatePoly, z: i64, w: i64) -> BigInt {
    t.eval(&BigInt::from(z), &BigInt::from(w))
}
