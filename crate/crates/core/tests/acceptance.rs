//! Acceptance criteria 1-10. Prints one PASS or FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropls::generate::{random_constructible, random_corank, random_hyperplane, random_stiefel};
use tropls::plucker::stable_intersection;
use tropls::sptree::{enumerate_forests, fvector_formula, total_face_bound, tree_space, Tree, WeightedTree};
use tropls::stable::generic_translation;
use tropls::subdivision::{check_stable_cells, loop_free_face_count, loop_free_face_count_direct};
use tropls::subset::KSubsets;
use tropls::tutte::{beta, is_series_parallel, tutte_decomposition_check};
use tropls::{binomial, Matroid, PlueckerVector, Rat, Subdivision, Subset};

type Outcome = Result<String, String>;

/// Independent oracle: the regular subdivision induced by `p` is found among
/// all full-dimensional matroid polytopes of `Δ(d, n)`, by solving for the
/// lifting hyperplane exactly and checking that it supports exactly that cell.
/// All cells are matroidal iff the matroidal cells close up, that is iff every
/// interior ridge of a matroidal cell lies in exactly two of them.
mod oracle {
    use super::*;

    pub struct Candidate {
        bases: u64,
        selected: Vec<usize>,
        adj: Vec<Vec<i128>>,
        det: i128,
        interior_ridges: Vec<u64>,
    }

    pub struct Catalog {
        n: usize,
        subsets: Vec<Subset>,
        pub candidates: Vec<Candidate>,
    }

    fn det(mut a: Vec<Vec<i128>>) -> i128 {
        let k = a.len();
        if k == 0 {
            return 1;
        }
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

    fn rank(rows: &[Vec<i128>]) -> usize {
        let mut m: Vec<Vec<i128>> = rows.to_vec();
        let cols = m.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, p);
            for i in r + 1..m.len() {
                let (a, b) = (m[r][c], m[i][c]);
                for j in 0..cols {
                    m[i][j] = m[i][j] * a - m[r][j] * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
            r += 1;
        }
        r
    }

    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    fn row(n: usize, s: Subset) -> Vec<i128> {
        let mut r: Vec<i128> = (1..n).map(|e| s.contains(e) as i128).collect();
        r.push(1);
        r
    }

    fn members(mask: u64, subsets: &[Subset]) -> Vec<Subset> {
        (0..subsets.len()).filter(|k| mask >> k & 1 == 1).map(|k| subsets[k]).collect()
    }

    /// Every basis family of a rank `d` matroid on `[n]`, by depth-first search
    /// over subsets with exchange constraints checked as soon as decided.
    fn basis_families(subsets: &[Subset]) -> Vec<u64> {
        let index: HashMap<Subset, usize> = subsets.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        let mut groups: Vec<Vec<(u64, u64)>> = vec![Vec::new(); subsets.len()];
        for (i, &b1) in subsets.iter().enumerate() {
            for (j, &b2) in subsets.iter().enumerate() {
                if i == j {
                    continue;
                }
                for x in b1.difference(b2).iter() {
                    let need = (1u64 << i) | (1u64 << j);
                    let opts = b2
                        .difference(b1)
                        .iter()
                        .fold(0u64, |o, y| o | 1u64 << index[&b1.remove(x).insert(y)]);
                    let top = 63 - (need | opts).leading_zeros() as usize;
                    groups[top].push((need, opts));
                }
            }
        }
        let mut out = Vec::new();
        let mut stack = vec![(0usize, 0u64)];
        while let Some((k, fam)) = stack.pop() {
            if k == subsets.len() {
                if fam != 0 {
                    out.push(fam);
                }
                continue;
            }
            for bit in [0u64, 1] {
                let f = fam | bit << k;
                if groups[k].iter().all(|&(need, opts)| f & need != need || f & opts != 0) {
                    stack.push((k + 1, f));
                }
            }
        }
        out
    }

    impl Catalog {
        pub fn new(n: usize, d: usize) -> Catalog {
            let subsets: Vec<Subset> = KSubsets::new(n, d).collect();
            assert!(subsets.len() <= 64);
            let rows: Vec<Vec<i128>> = subsets.iter().map(|&s| row(n, s)).collect();
            let mut candidates = Vec::new();
            for fam in basis_families(&subsets) {
                let idx: Vec<usize> = (0..subsets.len()).filter(|k| fam >> k & 1 == 1).collect();
                let mut selected: Vec<usize> = Vec::new();
                for &k in &idx {
                    let mut trial: Vec<Vec<i128>> = selected.iter().map(|&s| rows[s].clone()).collect();
                    trial.push(rows[k].clone());
                    if rank(&trial) == trial.len() {
                        selected.push(k);
                    }
                }
                if selected.len() < n {
                    continue;
                }
                let a: Vec<Vec<i128>> = selected.iter().map(|&s| rows[s].clone()).collect();
                let dt = det(a.clone());
                let adj = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                let minor: Vec<Vec<i128>> = (0..n)
                                    .filter(|&r| r != j)
                                    .map(|r| (0..n).filter(|&c| c != i).map(|c| a[r][c]).collect())
                                    .collect();
                                let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                                s * det(minor)
                            })
                            .collect()
                    })
                    .collect();
                let mut interior_ridges = Vec::new();
                let bases = members(fam, &subsets);
                for amask in 1u32..(1u32 << n) - 1 {
                    let a = Subset::from_bits(amask);
                    let best = bases.iter().map(|b| b.intersection(a).len()).max().unwrap();
                    let face: u64 = idx
                        .iter()
                        .filter(|&&k| subsets[k].intersection(a).len() == best)
                        .fold(0, |m, &k| m | 1u64 << k);
                    let face_rows: Vec<Vec<i128>> = members(face, &subsets).iter().map(|&s| row(n, s)).collect();
                    if rank(&face_rows) != n - 1 {
                        continue;
                    }
                    let fs = members(face, &subsets);
                    let union = fs.iter().fold(Subset::EMPTY, |u, b| u.union(*b));
                    let meet = fs.iter().fold(Subset::full(n), |u, b| u.intersection(*b));
                    if union == Subset::full(n) && meet.is_empty() && !interior_ridges.contains(&face) {
                        interior_ridges.push(face);
                    }
                }
                candidates.push(Candidate { bases: fam, selected, adj, det: dt, interior_ridges });
            }
            Catalog { n, subsets, candidates }
        }

        /// `true` when every cell of the regular subdivision of `p` is a matroid polytope.
        pub fn all_cells_matroidal(&self, values: &[i128]) -> bool {
            let n = self.n;
            let rows: Vec<Vec<i128>> = self.subsets.iter().map(|&s| row(n, s)).collect();
            let mut found = Vec::new();
            'cand: for c in &self.candidates {
                let u: Vec<i128> = (0..n)
                    .map(|i| (0..n).map(|j| c.adj[i][j] * values[c.selected[j]]).sum())
                    .collect();
                let sign = c.det.signum();
                for (k, r) in rows.iter().enumerate() {
                    let value = c.det * values[k] - r.iter().zip(&u).map(|(a, b)| a * b).sum::<i128>();
                    let on = c.bases >> k & 1 == 1;
                    if (on && value != 0) || (!on && sign * value <= 0) {
                        continue 'cand;
                    }
                }
                found.push(c);
            }
            if found.is_empty() {
                return false;
            }
            let mut count: HashMap<u64, usize> = HashMap::new();
            for c in &found {
                for &r in &c.interior_ridges {
                    *count.entry(r).or_default() += 1;
                }
            }
            count.values().all(|&k| k == 2)
        }
    }
}

fn integer_values(p: &PlueckerVector) -> Vec<i128> {
    let lcm = p.values().iter().fold(1i128, |l, v| {
        let (_, den) = v.to_small().expect("small test values");
        let den = den as i128;
        let g = {
            let (mut a, mut b) = (l, den);
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        l / g * den
    });
    p.values()
        .iter()
        .map(|v| {
            let (num, den) = v.to_small().unwrap();
            num as i128 * (lcm / den as i128)
        })
        .collect()
}

fn random_rational<R: Rng>(rng: &mut R) -> Rat {
    let den = [1, 1, 2, 3][rng.gen_range(0..4)];
    Rat::new(rng.gen_range(-3 * den..=3 * den), den).unwrap()
}

fn sample_vector<R: Rng>(n: usize, d: usize, rng: &mut R) -> PlueckerVector {
    let valid = |rng: &mut R| match rng.gen_range(0..3) {
        0 => random_stiefel(d, n, 3, rng).unwrap(),
        1 => random_corank(n, d, rng).unwrap(),
        _ => {
            let t = Tree::random_trivalent(n, rng).unwrap();
            tree_space(&WeightedTree::random_lengths(t, 3, rng), d).unwrap()
        }
    };
    match rng.gen_range(0..10) {
        0..=3 => PlueckerVector::from_fn(n, d, |_| Rat::from_integer(rng.gen_range(-1..=1))).unwrap(),
        4..=5 => PlueckerVector::from_fn(n, d, |_| random_rational(rng)).unwrap(),
        6..=7 => valid(rng),
        _ => {
            let p = valid(rng);
            let k = rng.gen_range(0..p.values().len());
            let bump = random_rational(rng);
            let values = p.values().iter().enumerate().map(|(i, v)| if i == k { v + &bump } else { v.clone() }).collect();
            PlueckerVector::new(n, d, values).unwrap()
        }
    }
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut total = 0;
    let mut valid = 0;
    let mut disagreements = Vec::new();
    for (d, n, count) in [(2, 4, 4000), (2, 5, 3000), (3, 6, 3000)] {
        let catalog = oracle::Catalog::new(n, d);
        for _ in 0..count {
            let p = sample_vector(n, d, &mut rng);
            let ours = p.validate().is_valid();
            let theirs = catalog.all_cells_matroidal(&integer_values(&p));
            total += 1;
            valid += ours as usize;
            if ours != theirs {
                disagreements.push(format!("{p:?}: validate {ours}, oracle {theirs}"));
            }
        }
    }
    if disagreements.is_empty() {
        Ok(format!("{total} vectors, {valid} valid, exact agreement"))
    } else {
        Err(format!("{} disagreements, first {}", disagreements.len(), disagreements[0]))
    }
}

/// Every subdivision computed by the suite, for the identities of criteria 3, 5 and 8.
struct Pool {
    items: Vec<(String, Subdivision)>,
}

impl Pool {
    fn add(&mut self, tag: impl Into<String>, p: &PlueckerVector) {
        if p.d() == 0 || p.d() == p.n() {
            return;
        }
        self.items.push((tag.into(), Subdivision::new(p).expect("generated vectors are valid")));
    }
}

fn shapes_with_ranks(ns: std::ops::RangeInclusive<usize>) -> Vec<(Tree, usize)> {
    let mut out = Vec::new();
    for n in ns {
        for t in Tree::all_shapes(n).unwrap() {
            for d in 2..=n - 2 {
                out.push((t.clone(), d));
            }
        }
    }
    out
}

fn criterion_2(pool: &mut Pool) -> Outcome {
    let mut checked = 0;
    for (t, d) in shapes_with_ranks(4..=7) {
        let n = t.num_leaves();
        let p = tree_space(&WeightedTree::unit(t.clone()), d).unwrap();
        let sd = Subdivision::new(&p).unwrap();
        let expected: Vec<u64> = (1..=d.min(n - d)).map(|i| fvector_formula(i, d, n)).collect();
        if sd.bounded_f_vector() != expected {
            return Err(format!("shape {} d={d}: f={:?}, expected {expected:?}", t.shape(), sd.bounded_f_vector()));
        }
        checked += 1;
        pool.items.push((format!("tree n={n} d={d}"), sd));
    }
    Ok(format!("{checked} (shape, d) pairs with n in 4..=7, e.g. (3,6) -> [6,6,1], (3,7) -> [10,12,3]"))
}

fn build_pool(pool: &mut Pool) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut base = Vec::new();
    for n in 4..=7 {
        for d in 2..=n - 2 {
            for _ in 0..10 {
                base.push((format!("corank n={n} d={d}"), random_corank(n, d, &mut rng).unwrap()));
                base.push((format!("stiefel n={n} d={d}"), random_stiefel(d, n, 4, &mut rng).unwrap()));
            }
            for _ in 0..3 {
                let t = Tree::random_trivalent(n, &mut rng).unwrap();
                let w = WeightedTree::random_lengths(t, 5, &mut rng);
                base.push((format!("weighted tree n={n} d={d}"), tree_space(&w, d).unwrap()));
                base.push((format!("constructible n={n} d={d}"), random_constructible(n, d, &mut rng).unwrap()));
            }
        }
    }
    for (tag, p) in &base {
        pool.add(tag.clone(), p);
        pool.add(format!("dual of {tag}"), &p.dualize());
        let n = p.n();
        let contract = Subset::singleton(n);
        let delete = Subset::singleton(1);
        if let Ok(m) = p.minor(delete, contract) {
            pool.add(format!("minor of {tag}"), &m);
        }
        if let Ok(m) = p.minor(Subset::EMPTY, contract) {
            pool.add(format!("contraction of {tag}"), &m);
        }
    }
}

fn criterion_3(pool: &Pool) -> Outcome {
    for (tag, sd) in &pool.items {
        let (n, d) = (sd.plucker().n(), sd.plucker().d());
        let sum: u64 = sd.facet_matroids().map(|m| beta(m).unwrap()).sum();
        if sum != binomial(n - 2, d - 1) {
            return Err(format!("{tag}: beta sum {sum}, expected {}", binomial(n - 2, d - 1)));
        }
    }
    let mut residuals = 0;
    let quartet = PlueckerVector::from_fn(4, 2, |i| {
        if i == Subset::of(&[1, 2]) || i == Subset::of(&[3, 4]) {
            Rat::zero()
        } else {
            Rat::from_integer(-1)
        }
    })
    .unwrap();
    let mut targets: Vec<(String, Subdivision)> = vec![("quartet".into(), Subdivision::new(&quartet).unwrap())];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (t, d) in shapes_with_ranks(4..=6) {
        for w in [WeightedTree::unit(t.clone()), WeightedTree::random_lengths(t.clone(), 4, &mut rng)] {
            targets.push((format!("tree {} d={d}", t.shape()), Subdivision::new(&tree_space(&w, d).unwrap()).unwrap()));
        }
    }
    for (tag, sd) in &targets {
        let (n, d) = (sd.plucker().n(), sd.plucker().d());
        let (zero, r) = tutte_decomposition_check(&Matroid::uniform(d, n), &sd.interior_with_dims()).unwrap();
        if !zero {
            return Err(format!("{tag}: residual {r:?}"));
        }
        residuals += 1;
    }
    Ok(format!("beta sums on {} subdivisions, zero residual on {residuals}", pool.items.len()))
}

fn criterion_4(pool: &Pool) -> Outcome {
    let mut equal = 0;
    for (tag, sd) in &pool.items {
        let (n, d) = (sd.plucker().n(), sd.plucker().d());
        let f1 = sd.bounded_f_vector()[0];
        let bound = binomial(n - 2, d - 1);
        let sp = sd.facet_matroids().all(is_series_parallel);
        if f1 > bound || (f1 == bound) != sp {
            return Err(format!("{tag}: f1={f1}, bound {bound}, series-parallel {sp}"));
        }
        equal += (f1 == bound) as usize;
    }
    if pool.items.len() < 500 {
        return Err(format!("only {} subdivisions generated", pool.items.len()));
    }
    Ok(format!("{} subdivisions, {equal} attain the vertex bound", pool.items.len()))
}

fn criterion_5(pool: &Pool) -> Outcome {
    let mut relevant = 0;
    for (tag, sd) in &pool.items {
        let (n, d) = (sd.plucker().n(), sd.plucker().d());
        let f = sd.bounded_f_vector();
        let limit = if n == 2 * d {
            1
        } else if n == 2 * d + 1 {
            d as u64
        } else {
            continue;
        };
        relevant += 1;
        if f[d - 1] > limit {
            return Err(format!("{tag}: f[{d}] = {} exceeds {limit}", f[d - 1]));
        }
    }
    Ok(format!("{relevant} subdivisions with n = 2d or 2d + 1"))
}

fn sp_vector<R: Rng>(n: usize, d: usize, rng: &mut R) -> PlueckerVector {
    if d == n - 1 {
        return random_hyperplane(n, 4, rng).unwrap();
    }
    if d == 1 {
        return random_hyperplane(n, 4, rng).unwrap().dualize();
    }
    match rng.gen_range(0..3) {
        0 => {
            let t = Tree::random_trivalent(n, rng).unwrap();
            tree_space(&WeightedTree::random_lengths(t, 4, rng), d).unwrap()
        }
        1 => {
            let t = Tree::random_trivalent(n, rng).unwrap();
            tree_space(&WeightedTree::random_lengths(t, 4, rng), n - d).unwrap().dualize()
        }
        _ => random_constructible(n, d, rng).unwrap(),
    }
}

fn criterion_6(pool: &mut Pool) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut pairs = 0;
    while pairs < 200 {
        let n = rng.gen_range(4..=6);
        let d = rng.gen_range(2..n);
        let d2 = rng.gen_range(n - d + 1..n);
        let p = sp_vector(n, d, &mut rng);
        let p2 = sp_vector(n, d2, &mut rng);
        for v in [&p, &p2] {
            if !Subdivision::new(v).unwrap().facet_matroids().all(is_series_parallel) {
                return Err(format!("generator produced a non series-parallel space {v:?}"));
            }
        }
        let a = generic_translation(&p, &p2, rng.gen()).map_err(|e| e.to_string())?;
        let b = generic_translation(&p, &p2, rng.gen()).map_err(|e| e.to_string())?;
        let shifted = p2.translate(&a.v).unwrap();
        let q = stable_intersection(&p, &shifted).unwrap();
        let q2 = stable_intersection(&p, &p2.translate(&b.v).unwrap()).unwrap();
        if !q.is_valid() || !q2.is_valid() {
            return Err(format!("invalid stable intersection of {p:?} and {p2:?}"));
        }
        if !check_stable_cells(&q, &p, &shifted).unwrap() {
            return Err(format!("cells of {q:?} are not intersections"));
        }
        let (s1, s2) = (Subdivision::new(&q).unwrap(), Subdivision::new(&q2).unwrap());
        if s1.bounded_f_vector() != s2.bounded_f_vector() {
            return Err(format!(
                "f-vectors {:?} and {:?} differ for {p:?}, {p2:?}",
                s1.bounded_f_vector(),
                s2.bounded_f_vector()
            ));
        }
        if q.d() >= 1 && q.d() < n {
            pool.items.push((format!("stable n={n} d={}", q.d()), s1));
        }
        pairs += 1;
    }
    Ok(format!("{pairs} transverse pairs with n in 4..=6"))
}

fn criterion_7(pool: &mut Pool) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut spaces = 0;
    for n in 3..=7 {
        for d in 1..n {
            for _ in 0..2 {
                let p = random_constructible(n, d, &mut rng).map_err(|e| e.to_string())?;
                let sd = Subdivision::new(&p).unwrap();
                let expected: Vec<u64> = (1..=d.min(n - d)).map(|i| fvector_formula(i, d, n)).collect();
                if sd.bounded_f_vector() != expected {
                    return Err(format!("n={n} d={d}: f={:?}, expected {expected:?}", sd.bounded_f_vector()));
                }
                if let Some(m) = sd.facet_matroids().find(|m| beta(m).unwrap() != 1) {
                    return Err(format!("n={n} d={d}: facet {m:?} is not series-parallel"));
                }
                spaces += 1;
                pool.items.push((format!("constructible n={n} d={d}"), sd));
            }
        }
    }
    Ok(format!("{spaces} constructible spaces with n in 3..=7, every d"))
}

fn criterion_8(pool: &Pool) -> Outcome {
    for (tag, sd) in &pool.items {
        let dual = Subdivision::new(&sd.plucker().dualize()).unwrap();
        if dual.bounded_f_vector() != sd.bounded_f_vector() {
            return Err(format!("{tag}: {:?} vs dual {:?}", sd.bounded_f_vector(), dual.bounded_f_vector()));
        }
    }
    Ok(format!("{} vectors", pool.items.len()))
}

fn criterion_9() -> Outcome {
    let mut cases = 0;
    for n in 2..=9 {
        for t in Tree::all_shapes(n).unwrap() {
            for i in 1..=n {
                let got = enumerate_forests(&t, i).len() as u64;
                let expected = if n > i && i >= 1 && n - i > i - 1 {
                    binomial(n - i - 1, i - 1)
                } else {
                    0
                };
                if got != expected {
                    return Err(format!("shape {} i={i}: {got} forests, expected {expected}", t.shape()));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (shape, i) cases with n <= 9"))
}

fn criterion_10() -> Outcome {
    let mut cases = 0;
    for (t, d) in shapes_with_ranks(4..=6) {
        let n = t.num_leaves();
        let p = tree_space(&WeightedTree::unit(t.clone()), d).unwrap();
        let g = loop_free_face_count(&p).unwrap();
        let expected: Vec<u64> = (1..=d).map(|i| total_face_bound(i, d, n)).collect();
        if g != expected {
            return Err(format!("shape {} d={d}: {g:?}, expected {expected:?}", t.shape()));
        }
        if n <= 5 {
            let direct = loop_free_face_count_direct(&p).unwrap();
            if direct != g {
                return Err(format!("shape {} d={d}: recursion {g:?}, brute force {direct:?}", t.shape()));
            }
        }
        cases += 1;
    }
    Ok(format!("{cases} tree spaces with n <= 6"))
}

fn report(k: usize, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let secs = start.elapsed().as_secs_f64();
    match result {
        Ok(detail) => {
            println!("criterion {k:>2} PASS {name}: {detail} ({secs:.1}s)");
            true
        }
        Err(detail) => {
            println!("criterion {k:>2} FAIL {name}: {detail} ({secs:.1}s)");
            false
        }
    }
}

fn main() {
    let mut pool = Pool { items: Vec::new() };
    let mut ok = true;
    ok &= report(1, "plucker validator agrees with the subdivision oracle", criterion_1);
    ok &= report(2, "tree space f-vectors", || criterion_2(&mut pool));
    build_pool(&mut pool);
    ok &= report(6, "stable intersection soundness", || criterion_6(&mut pool));
    ok &= report(7, "constructible spaces are maximal", || criterion_7(&mut pool));
    ok &= report(3, "beta sums and Tutte decomposition", || criterion_3(&pool));
    ok &= report(4, "vertex bound and equality", || criterion_4(&pool));
    ok &= report(5, "facet bounds", || criterion_5(&pool));
    ok &= report(8, "duality preserves f-vectors", || criterion_8(&pool));
    ok &= report(9, "forest counts", criterion_9);
    ok &= report(10, "total face counts", criterion_10);
    if !ok {
        std::process::exit(1);
    }
}
