//! The component-incidence graph of two matroids, transversality, matroid
//! intersection and parallel connections.

use std::collections::VecDeque;

use serde::Serialize;

use super::Matroid;
use crate::error::{Error, Result};
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GammaEdge {
    pub left: usize,
    pub right: usize,
    pub label: usize,
}

/// Left vertices are components of the first matroid, right vertices those
/// of the second; every ground element labels one edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteMultigraph {
    pub left: Vec<Subset>,
    pub right: Vec<Subset>,
    pub edges: Vec<GammaEdge>,
}

impl BipartiteMultigraph {
    /// Build from explicit endpoint lists; edges are labelled `1..` in order.
    pub fn from_edges(left: usize, right: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut ls = vec![Subset::EMPTY; left];
        let mut rs = vec![Subset::EMPTY; right];
        let mut out = Vec::with_capacity(edges.len());
        for (k, &(u, v)) in edges.iter().enumerate() {
            if u >= left || v >= right {
                return Err(Error::invalid(format!("edge ({u},{v}) uses a missing vertex")));
            }
            ls[u] = ls[u].insert(k + 1);
            rs[v] = rs[v].insert(k + 1);
            out.push(GammaEdge { left: u, right: v, label: k + 1 });
        }
        Ok(BipartiteMultigraph { left: ls, right: rs, edges: out })
    }
}

/// Outcome of the transversality test, with a certificate when it fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Transversality {
    Transverse,
    /// Two elements label parallel edges.
    MultiEdge { left: usize, right: usize, labels: (usize, usize) },
    /// Edge labels along a cycle.
    Cycle { labels: Vec<usize> },
}

impl Transversality {
    pub fn is_transverse(&self) -> bool {
        matches!(self, Transversality::Transverse)
    }
}

pub fn gamma_graph(m: &Matroid, m2: &Matroid) -> Result<BipartiteMultigraph> {
    if m.n() != m2.n() {
        return Err(Error::invalid("matroids live on different ground sets"));
    }
    if !m.is_loop_free() || !m2.is_loop_free() {
        return Err(Error::invalid("incidence graph needs loop-free matroids"));
    }
    let left = m.component_sets();
    let right = m2.component_sets();
    let side = |parts: &[Subset], e: usize| parts.iter().position(|s| s.contains(e)).unwrap();
    let edges = (1..=m.n())
        .map(|e| GammaEdge {
            left: side(&left, e),
            right: side(&right, e),
            label: e,
        })
        .collect();
    Ok(BipartiteMultigraph { left, right, edges })
}

/// Checks that a bipartite multigraph is a forest without multiple edges.
pub fn graph_transversality(g: &BipartiteMultigraph) -> Transversality {
    let nl = g.left.len();
    let nv = nl + g.right.len();
    for (a, ea) in g.edges.iter().enumerate() {
        for eb in &g.edges[a + 1..] {
            if ea.left == eb.left && ea.right == eb.right {
                return Transversality::MultiEdge {
                    left: ea.left,
                    right: ea.right,
                    labels: (ea.label, eb.label),
                };
            }
        }
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for e in &g.edges {
        let (u, v) = (e.left, nl + e.right);
        if let Some(path) = path_labels(&adj, u, v) {
            let mut labels = path;
            labels.push(e.label);
            return Transversality::Cycle { labels };
        }
        adj[u].push((v, e.label));
        adj[v].push((u, e.label));
    }
    Transversality::Transverse
}

fn path_labels(adj: &[Vec<(usize, usize)>], from: usize, to: usize) -> Option<Vec<usize>> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut labels = Vec::new();
            let mut c = to;
            while let Some((p, l)) = prev[c] {
                labels.push(l);
                c = p;
            }
            labels.reverse();
            return Some(labels);
        }
        for &(y, l) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, l));
                queue.push_back(y);
            }
        }
    }
    None
}

pub fn is_transverse(m: &Matroid, m2: &Matroid) -> Result<Transversality> {
    Ok(graph_transversality(&gamma_graph(m, m2)?))
}

/// `M ∧ M'`: bases `B ∩ B'` over basis pairs covering the ground set.
pub fn matroid_intersection(m: &Matroid, m2: &Matroid) -> Result<Matroid> {
    let n = m.n();
    if m2.n() != n {
        return Err(Error::invalid("matroids live on different ground sets"));
    }
    if m.rank() + m2.rank() < n {
        return Err(Error::invalid(format!(
            "ranks {} + {} fall short of {n}",
            m.rank(),
            m2.rank()
        )));
    }
    if !m.is_loop_free() || !m2.is_loop_free() {
        return Err(Error::invalid("matroid intersection needs loop-free matroids"));
    }
    let full = Subset::full(n);
    let mut bases = Vec::new();
    for b in m.bases() {
        for b2 in m2.bases() {
            if b.union(*b2) == full {
                bases.push(b.intersection(*b2));
            }
        }
    }
    if bases.is_empty() {
        return Err(Error::RankExcess);
    }
    Matroid::new(n, bases)
}

/// A vertex of a parallel-connection forest: a connected loop-free matroid
/// placed on `ground` (its elements re-indexed in increasing order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssemblyVertex {
    pub ground: Subset,
    pub matroid: Matroid,
}

impl AssemblyVertex {
    fn expanded_bases(&self) -> Vec<Subset> {
        self.matroid.bases().iter().map(|b| b.expand(self.ground)).collect()
    }
}

/// Glue matroids along a labelled forest by parallel connections.
///
/// `edges` holds `(v, w, e)`: vertices `v`, `w` share exactly element `e`.
/// A set `U` is a basis when bases `B(v)` exist such that each edge element
/// lies in `U` iff it is in both `B(v)` and `B(w)` (and in at least one), and
/// every other element lies in `U` iff it is in the basis of its vertex.
pub fn parallel_connection_assembly(
    n: usize,
    vertices: &[AssemblyVertex],
    edges: &[(usize, usize, usize)],
) -> Result<Matroid> {
    check_forest_layout(n, vertices, edges)?;
    let full = Subset::full(n);
    let edge_elems = edges.iter().fold(Subset::EMPTY, |a, &(_, _, e)| a.insert(e));
    let choices: Vec<Vec<Subset>> = vertices.iter().map(AssemblyVertex::expanded_bases).collect();
    let mut out = Vec::new();
    let mut pick = vec![Subset::EMPTY; vertices.len()];
    assemble_rec(0, &choices, &mut pick, &mut |pick| {
        let mut u = Subset::EMPTY;
        for &(v, w, e) in edges {
            match (pick[v].contains(e), pick[w].contains(e)) {
                (true, true) => u = u.insert(e),
                (false, false) => return,
                _ => {}
            }
        }
        for (k, b) in pick.iter().enumerate() {
            u = u.union(b.intersection(vertices[k].ground).difference(edge_elems));
        }
        debug_assert!(u.is_subset(full));
        out.push(u);
    });
    if out.is_empty() {
        return Err(Error::invariant("parallel connection produced no bases"));
    }
    let m = Matroid::new(n, out)?;
    Ok(m)
}

fn assemble_rec(
    k: usize,
    choices: &[Vec<Subset>],
    pick: &mut Vec<Subset>,
    visit: &mut dyn FnMut(&[Subset]),
) {
    if k == choices.len() {
        visit(pick);
        return;
    }
    for &b in &choices[k] {
        pick[k] = b;
        assemble_rec(k + 1, choices, pick, visit);
    }
}

fn check_forest_layout(
    n: usize,
    vertices: &[AssemblyVertex],
    edges: &[(usize, usize, usize)],
) -> Result<()> {
    let full = Subset::full(n);
    let mut cover = Subset::EMPTY;
    for v in vertices {
        if v.ground.len() != v.matroid.n() || !v.ground.is_subset(full) {
            return Err(Error::invalid(format!("vertex matroid does not fit its ground set {}", v.ground)));
        }
        if !v.matroid.is_loop_free() || !v.matroid.is_connected() {
            return Err(Error::invalid(format!("vertex matroid on {} must be connected and loop-free", v.ground)));
        }
        cover = cover.union(v.ground);
    }
    if cover != full {
        return Err(Error::invalid("vertex ground sets do not cover the ground set"));
    }
    let mut labels = Subset::EMPTY;
    for &(v, w, e) in edges {
        if v >= vertices.len() || w >= vertices.len() || v == w {
            return Err(Error::invalid(format!("bad edge ({v},{w})")));
        }
        if labels.contains(e) {
            return Err(Error::invalid(format!("label {e} used twice")));
        }
        labels = labels.insert(e);
    }
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            let shared = vertices[a].ground.intersection(vertices[b].ground);
            let edge = edges
                .iter()
                .find(|&&(v, w, _)| (v, w) == (a, b) || (v, w) == (b, a));
            let ok = match edge {
                Some(&(_, _, e)) => shared == Subset::singleton(e),
                None => shared.is_empty(),
            };
            if !ok {
                return Err(Error::invalid(format!(
                    "ground sets {} and {} overlap in {shared}",
                    vertices[a].ground, vertices[b].ground
                )));
            }
        }
    }
    let g = BipartiteLike::new(vertices.len(), edges);
    if g.has_cycle() {
        return Err(Error::invalid("assembly graph is not a forest"));
    }
    Ok(())
}

struct BipartiteLike {
    parent: Vec<usize>,
    cycle: bool,
}

impl BipartiteLike {
    fn new(nv: usize, edges: &[(usize, usize, usize)]) -> Self {
        let mut me = BipartiteLike { parent: (0..nv).collect(), cycle: false };
        for &(v, w, _) in edges {
            let (a, b) = (me.find(v), me.find(w));
            if a == b {
                me.cycle = true;
            } else {
                me.parent[a] = b;
            }
        }
        me
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    fn has_cycle(&self) -> bool {
        self.cycle
    }
}

/// Parallel connection of two vertices sharing exactly the element `e`.
pub fn parallel_connection(a: &AssemblyVertex, b: &AssemblyVertex, e: usize) -> Result<AssemblyVertex> {
    if a.ground.intersection(b.ground) != Subset::singleton(e) {
        return Err(Error::invalid(format!("{} and {} do not meet in {{{e}}}", a.ground, b.ground)));
    }
    let ground = a.ground.union(b.ground);
    let mut bases = Vec::new();
    for ba in a.expanded_bases() {
        for bb in b.expanded_bases() {
            match (ba.contains(e), bb.contains(e)) {
                (true, true) => bases.push(ba.union(bb)),
                (false, false) => {}
                _ => bases.push(ba.union(bb).remove(e)),
            }
        }
    }
    if bases.is_empty() {
        return Err(Error::invalid(format!("element {e} is a loop")));
    }
    let local: Vec<Subset> = bases.into_iter().map(|s| s.compress(ground)).collect();
    Ok(AssemblyVertex {
        ground,
        matroid: Matroid::new(ground.len(), local)?,
    })
}

/// Same matroid as [`parallel_connection_assembly`], built by contracting the
/// forest's edges one at a time in the given order and then taking the
/// direct sum of what remains.
pub fn parallel_connection_by_contraction(
    n: usize,
    vertices: &[AssemblyVertex],
    edges: &[(usize, usize, usize)],
    order: &[usize],
) -> Result<Matroid> {
    check_forest_layout(n, vertices, edges)?;
    if order.len() != edges.len() {
        return Err(Error::invalid("contraction order must list every edge once"));
    }
    let mut slot: Vec<usize> = (0..vertices.len()).collect();
    let mut current: Vec<Option<AssemblyVertex>> = vertices.iter().cloned().map(Some).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &k in order {
        let (v, w, e) = *edges
            .get(k)
            .ok_or_else(|| Error::invalid(format!("no edge {k}")))?;
        let (rv, rw) = (find(&mut slot, v), find(&mut slot, w));
        let a = current[rv].take().ok_or_else(|| Error::invalid("edge listed twice"))?;
        let b = current[rw].take().ok_or_else(|| Error::invalid("edge listed twice"))?;
        current[rv] = Some(parallel_connection(&a, &b, e)?);
        slot[rw] = rv;
    }
    let parts: Vec<AssemblyVertex> = current.into_iter().flatten().collect();
    let refs: Vec<(Subset, &Matroid)> = parts.iter().map(|p| (p.ground, &p.matroid)).collect();
    Matroid::direct_sum(n, &refs)
}

/// Assemble `M ∧ M'` over `Γ(M, M')` for a transverse pair.
pub fn assemble_over_gamma(m: &Matroid, m2: &Matroid) -> Result<Matroid> {
    let g = gamma_graph(m, m2)?;
    if !graph_transversality(&g).is_transverse() {
        return Err(Error::invalid("matroids are not transverse"));
    }
    let nl = g.left.len();
    let mut vertices: Vec<AssemblyVertex> = g
        .left
        .iter()
        .map(|&s| AssemblyVertex { ground: s, matroid: m.restriction(s) })
        .collect();
    vertices.extend(
        g.right
            .iter()
            .map(|&s| AssemblyVertex { ground: s, matroid: m2.restriction(s) }),
    );
    let edges: Vec<(usize, usize, usize)> = g
        .edges
        .iter()
        .map(|e| (e.left, nl + e.right, e.label))
        .collect();
    parallel_connection_assembly(m.n(), &vertices, &edges)
}

/// Perfect matchings of `g` counted with edge multiplicity, and of its
/// simple collapse.
pub fn perfect_matching_census(g: &BipartiteMultigraph) -> (u128, u128) {
    let (l, r) = (g.left.len(), g.right.len());
    if l != r {
        return (0, 0);
    }
    let mut mult = vec![vec![0u128; r]; l];
    for e in &g.edges {
        mult[e.left][e.right] += 1;
    }
    let simple: Vec<Vec<u128>> = mult
        .iter()
        .map(|row| row.iter().map(|&c| u128::from(c > 0)).collect())
        .collect();
    (count_matchings(&mult), count_matchings(&simple))
}

fn count_matchings(weights: &[Vec<u128>]) -> u128 {
    let r = weights.len();
    if r == 0 {
        return 1;
    }
    let mut dp = vec![0u128; 1 << r];
    dp[0] = 1;
    for mask in 0usize..(1 << r) {
        if dp[mask] == 0 {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == r {
            continue;
        }
        for (col, &w) in weights[row].iter().enumerate() {
            if w > 0 && mask & (1 << col) == 0 {
                dp[mask | (1 << col)] += dp[mask] * w;
            }
        }
    }
    dp[(1 << r) - 1]
}
