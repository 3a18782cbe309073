//! Trivalent trees, the series-parallel matroids of their black and white
//! colourings, forests obtained by splitting, and tree spaces.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::plucker::{tau, PlueckerVector};
use crate::rational::Rat;
use crate::subset::{binomial, binomial_i, KSubsets, Subset, MAX_GROUND};
use crate::tutte::is_series_parallel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

/// A tree whose leaves carry distinct labels in `1..=31`. Internal vertices
/// have no label and degree at least 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    label: Vec<Option<usize>>,
    adj: Vec<Vec<usize>>,
}

impl Tree {
    pub fn new(label: Vec<Option<usize>>, edges: &[(usize, usize)]) -> Result<Tree> {
        let v = label.len();
        if v < 2 {
            return Err(Error::invalid("a tree needs at least two leaves"));
        }
        if edges.len() + 1 != v {
            return Err(Error::invalid(format!("{} edges on {v} vertices", edges.len())));
        }
        let mut adj = vec![Vec::new(); v];
        for &(a, b) in edges {
            if a >= v || b >= v || a == b {
                return Err(Error::invalid(format!("bad edge ({a},{b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let mut seen = Subset::EMPTY;
        for (x, l) in label.iter().enumerate() {
            match *l {
                Some(k) => {
                    if k == 0 || k > MAX_GROUND || seen.contains(k) {
                        return Err(Error::invalid(format!("leaf label {k} is out of range or repeated")));
                    }
                    seen = seen.insert(k);
                    if adj[x].len() != 1 {
                        return Err(Error::invalid(format!("leaf {k} has degree {}", adj[x].len())));
                    }
                }
                None if adj[x].len() < 3 => {
                    return Err(Error::invalid(format!("internal vertex {x} has degree {}", adj[x].len())));
                }
                None => {}
            }
        }
        let t = Tree { label, adj };
        if t.reach(0, usize::MAX).len() != v {
            return Err(Error::invalid("tree is disconnected"));
        }
        Ok(t)
    }

    /// The tree with one edge joining leaves `a` and `b`.
    pub fn edge(a: usize, b: usize) -> Result<Tree> {
        Tree::new(vec![Some(a), Some(b)], &[(0, 1)])
    }

    /// `((1,2),(3,4))`.
    pub fn quartet() -> Tree {
        let label = vec![Some(1), Some(2), Some(3), Some(4), None, None];
        Tree::new(label, &[(0, 4), (1, 4), (4, 5), (2, 5), (3, 5)]).expect("valid quartet")
    }

    /// The trivalent tree whose internal vertices form a path, with leaves
    /// `1, 2` at one end and `n - 1, n` at the other.
    pub fn caterpillar(n: usize) -> Result<Tree> {
        if !(2..=MAX_GROUND).contains(&n) {
            return Err(Error::invalid(format!("caterpillar needs 2 <= n <= {MAX_GROUND}")));
        }
        let mut t = Tree::edge(1, 2)?;
        for k in 3..=n {
            let last = t.leaf_of(k - 1).expect("previous leaf");
            let stem = t.adj[last][0];
            t = t.insert_leaf((last, stem), k)?;
        }
        Ok(t)
    }

    /// Uniform over labelled trivalent trees on `[n]`, by inserting leaves
    /// `3..=n` on uniformly chosen edges.
    pub fn random_trivalent<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Tree> {
        if !(2..=MAX_GROUND).contains(&n) {
            return Err(Error::invalid(format!("random tree needs 2 <= n <= {MAX_GROUND}")));
        }
        let mut t = Tree::edge(1, 2)?;
        for k in 3..=n {
            let edges = t.edges();
            let e = edges[rng.gen_range(0..edges.len())];
            t = t.insert_leaf(e, k)?;
        }
        Ok(t)
    }

    /// All `(2n - 5)!!` labelled trivalent trees on `[n]`.
    pub fn all_labelled(n: usize) -> Result<Vec<Tree>> {
        if !(2..=12).contains(&n) {
            return Err(Error::invalid("labelled enumeration supports 2 <= n <= 12"));
        }
        let mut level = vec![Tree::edge(1, 2)?];
        for k in 3..=n {
            let mut next = Vec::new();
            for t in &level {
                for e in t.edges() {
                    next.push(t.insert_leaf(e, k)?);
                }
            }
            level = next;
        }
        Ok(level)
    }

    /// One representative per unlabelled trivalent shape with `n` leaves,
    /// labelled `1..=n`.
    pub fn all_shapes(n: usize) -> Result<Vec<Tree>> {
        if !(2..=16).contains(&n) {
            return Err(Error::invalid("shape enumeration supports 2 <= n <= 16"));
        }
        let mut level = vec![Tree::edge(1, 2)?];
        for k in 3..=n {
            let mut next: BTreeMap<String, Tree> = BTreeMap::new();
            for t in &level {
                for e in t.edges() {
                    let u = t.insert_leaf(e, k)?;
                    next.entry(u.shape()).or_insert(u);
                }
            }
            level = next.into_values().collect();
        }
        Ok(level)
    }

    /// Subdivide edge `e` with a new internal vertex and hang leaf `label` on it.
    pub fn insert_leaf(&self, e: (usize, usize), label: usize) -> Result<Tree> {
        let (a, b) = e;
        if a >= self.adj.len() || !self.adj[a].contains(&b) {
            return Err(Error::invalid(format!("({a},{b}) is not an edge")));
        }
        let mut labels = self.label.clone();
        let mid = labels.len();
        labels.push(None);
        labels.push(Some(label));
        let mut edges: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .filter(|&(x, y)| !((x, y) == (a, b) || (y, x) == (a, b)))
            .collect();
        edges.extend([(a, mid), (mid, b), (mid, mid + 1)]);
        Tree::new(labels, &edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_leaves(&self) -> usize {
        self.label.iter().filter(|l| l.is_some()).count()
    }

    pub fn label(&self, v: usize) -> Option<usize> {
        self.label[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.label[v].is_some()
    }

    pub fn leaf_of(&self, label: usize) -> Option<usize> {
        self.label.iter().position(|&l| l == Some(label))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn internal_vertices(&self) -> Vec<usize> {
        (0..self.adj.len()).filter(|&v| !self.is_leaf(v)).collect()
    }

    /// Leaf labels.
    pub fn ground(&self) -> Subset {
        self.label.iter().flatten().fold(Subset::EMPTY, |s, &k| s.insert(k))
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.adj.len())
            .flat_map(|u| self.adj[u].iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect()
    }

    /// Edges with no leaf endpoint.
    pub fn internal_edges(&self) -> Vec<(usize, usize)> {
        self.edges()
            .into_iter()
            .filter(|&(u, v)| !self.is_leaf(u) && !self.is_leaf(v))
            .collect()
    }

    pub fn is_trivalent(&self) -> bool {
        (0..self.adj.len()).all(|v| self.is_leaf(v) || self.adj[v].len() == 3)
    }

    /// Vertices reachable from `from` without passing through `avoid`.
    fn reach(&self, from: usize, avoid: usize) -> Vec<usize> {
        let mut out = vec![from];
        let mut stack = vec![(from, avoid)];
        while let Some((x, parent)) = stack.pop() {
            for &y in &self.adj[x] {
                if y != parent {
                    out.push(y);
                    stack.push((y, x));
                }
            }
        }
        out
    }

    /// Leaves on the `u` side of the edge `u`–`v`.
    pub fn side(&self, u: usize, v: usize) -> Subset {
        self.reach(u, v)
            .into_iter()
            .filter_map(|x| self.label[x])
            .fold(Subset::EMPTY, |s, k| s.insert(k))
    }

    /// For every internal edge, the side not containing the smallest label.
    pub fn splits(&self) -> BTreeSet<Subset> {
        let low = self.ground().min().expect("nonempty");
        self.internal_edges()
            .into_iter()
            .map(|(u, v)| {
                let a = self.side(u, v);
                if a.contains(low) {
                    self.side(v, u)
                } else {
                    a
                }
            })
            .collect()
    }

    /// Canonical string of the unlabelled shape.
    pub fn shape(&self) -> String {
        fn encode(t: &Tree, v: usize, parent: usize) -> String {
            let mut kids: Vec<String> = t.adj[v]
                .iter()
                .filter(|&&w| w != parent)
                .map(|&w| encode(t, w, v))
                .collect();
            kids.sort();
            format!("({})", kids.concat())
        }
        (0..self.adj.len())
            .map(|r| encode(self, r, usize::MAX))
            .min()
            .expect("nonempty")
    }

    /// Leaf-to-leaf distances for the given edge lengths (aligned with `edges()`).
    fn distances(&self, lengths: &[Rat]) -> BTreeMap<(usize, usize), Rat> {
        let mut len_of = HashMap::new();
        for ((u, v), l) in self.edges().into_iter().zip(lengths) {
            len_of.insert((u, v), l.clone());
            len_of.insert((v, u), l.clone());
        }
        let mut out = BTreeMap::new();
        for s in 0..self.adj.len() {
            let Some(ls) = self.label[s] else { continue };
            let mut stack = vec![(s, usize::MAX, Rat::zero())];
            while let Some((x, parent, acc)) = stack.pop() {
                if let Some(lx) = self.label[x] {
                    if lx > ls {
                        out.insert((ls, lx), acc.clone());
                    }
                }
                for &y in &self.adj[x] {
                    if y != parent {
                        stack.push((y, x, &acc + &len_of[&(x, y)]));
                    }
                }
            }
        }
        out
    }

    /// The component spanned by `block`: vertices of the smallest subtree
    /// containing those leaves, with degree 2 vertices suppressed. Returns the
    /// component and, per component vertex, its index in `self`.
    fn reduce(&self, block: Subset) -> Result<(Tree, Vec<usize>)> {
        if !block.is_subset(self.ground()) || block.len() < 2 {
            return Err(Error::invalid(format!("block {block} is not a set of at least two leaves")));
        }
        let active = |x: usize, y: usize| !self.side(y, x).is_disjoint(block);
        let kept: Vec<usize> = (0..self.adj.len())
            .filter(|&x| match self.label[x] {
                Some(k) => block.contains(k),
                None => self.adj[x].iter().filter(|&&y| active(x, y)).count() >= 3,
            })
            .collect();
        let local: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut edges = Vec::new();
        for &x in &kept {
            for &y in &self.adj[x] {
                if !active(x, y) {
                    continue;
                }
                let (mut prev, mut cur) = (x, y);
                while !local.contains_key(&cur) {
                    let next = self.adj[cur]
                        .iter()
                        .copied()
                        .filter(|&z| z != prev && active(cur, z))
                        .exactly_one()
                        .map_err(|_| Error::invariant("suppressed vertex is not on a path"))?;
                    prev = cur;
                    cur = next;
                }
                if local[&x] < local[&cur] {
                    edges.push((local[&x], local[&cur]));
                }
            }
        }
        let labels = kept.iter().map(|&x| self.label[x]).collect();
        Ok((Tree::new(labels, &edges)?, kept))
    }
}

/// A trivalent tree with every internal vertex black or white.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredTree {
    tree: Tree,
    colors: Vec<Option<Color>>,
}

impl ColoredTree {
    /// `colors[v]` must be `Some` exactly on internal vertices.
    pub fn new(tree: Tree, colors: Vec<Option<Color>>) -> Result<Self> {
        if !tree.is_trivalent() {
            return Err(Error::invalid("coloured trees must be trivalent"));
        }
        if colors.len() != tree.num_vertices()
            || colors.iter().enumerate().any(|(v, c)| c.is_some() == tree.is_leaf(v))
        {
            return Err(Error::invalid("colours must cover exactly the internal vertices"));
        }
        Ok(ColoredTree { tree, colors })
    }

    /// Colour the listed internal vertices black and the others white.
    pub fn from_black(tree: Tree, black: &[usize]) -> Result<Self> {
        if let Some(&v) = black.iter().find(|&&v| v >= tree.num_vertices() || tree.is_leaf(v)) {
            return Err(Error::invalid(format!("vertex {v} is not internal")));
        }
        let colors = (0..tree.num_vertices())
            .map(|v| {
                (!tree.is_leaf(v)).then(|| if black.contains(&v) { Color::Black } else { Color::White })
            })
            .collect();
        ColoredTree::new(tree, colors)
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn color(&self, v: usize) -> Option<Color> {
        self.colors[v]
    }

    pub fn num_black(&self) -> usize {
        self.colors.iter().filter(|&&c| c == Some(Color::Black)).count()
    }

    pub fn num_white(&self) -> usize {
        self.colors.iter().filter(|&&c| c == Some(Color::White)).count()
    }

    /// `1 + #black`, the rank of `mu`.
    pub fn rank(&self) -> usize {
        self.num_black() + 1
    }

    /// `(A_e, a_e)` for every edge `e = (u, v)`: the leaves on the `u` side and
    /// the number of black vertices there.
    pub fn edge_constraints(&self) -> Vec<(Subset, usize)> {
        self.tree
            .edges()
            .into_iter()
            .map(|(u, v)| {
                let black = self
                    .tree
                    .reach(u, v)
                    .into_iter()
                    .filter(|&x| self.colors[x] == Some(Color::Black))
                    .count();
                (self.tree.side(u, v), black)
            })
            .collect()
    }

    /// Internal edges whose endpoints have different colours.
    pub fn bicolored_edges(&self) -> Vec<(usize, usize)> {
        self.tree
            .internal_edges()
            .into_iter()
            .filter(|&(u, v)| self.colors[u] != self.colors[v])
            .collect()
    }

    /// Leaf labels attached to a vertex of the given colour.
    pub fn leaves_at(&self, color: Color) -> Subset {
        (0..self.tree.num_vertices())
            .filter(|&x| self.tree.is_leaf(x))
            .filter(|&x| self.tree.num_leaves() > 2 && self.colors[self.tree.adj[x][0]] == Some(color))
            .fold(Subset::EMPTY, |s, x| s.insert(self.tree.label[x].unwrap()))
    }
}

/// Every colouring of the internal vertices with `d - 1` black.
pub fn colorings(tree: &Tree, d: usize) -> Result<Vec<ColoredTree>> {
    let internal = tree.internal_vertices();
    if d == 0 || d - 1 > internal.len() {
        return Err(Error::invalid(format!(
            "rank {d} needs {} black vertices but the tree has {} internal vertices",
            d.saturating_sub(1),
            internal.len()
        )));
    }
    internal
        .iter()
        .copied()
        .combinations(d - 1)
        .map(|black| ColoredTree::from_black(tree.clone(), &black))
        .collect()
}

/// The matroid whose polytope is cut out of `Δ(d, n)` by
/// `a_e <= |A_e ∩ I| <= a_e + 1`. Element `k` is the `k`-th smallest leaf label.
pub fn mu(ct: &ColoredTree, d: usize) -> Result<Matroid> {
    if ct.rank() != d {
        return Err(Error::invalid(format!(
            "a rank {d} colouring needs {} black vertices, found {}",
            d.saturating_sub(1),
            ct.num_black()
        )));
    }
    let ground = ct.tree.ground();
    let k = ground.len();
    let constraints: Vec<(Subset, usize)> = ct
        .edge_constraints()
        .into_iter()
        .map(|(a, black)| (a.compress(ground), black))
        .collect();
    let bases: Vec<Subset> = KSubsets::new(k, d)
        .filter(|i| {
            constraints.iter().all(|&(a, black)| {
                let x = i.intersection(a).len();
                black <= x && x <= black + 1
            })
        })
        .collect();
    let m = Matroid::new(k, bases)?;
    if !is_series_parallel(&m) {
        return Err(Error::invariant(format!("coloured tree produced {m:?}, which is not series-parallel")));
    }
    Ok(m)
}

/// A forest of trivalent trees reached from a base tree by splitting along
/// internal edges, with a colouring of its internal vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredForest {
    base: Tree,
    blocks: Vec<Subset>,
    black: BTreeSet<usize>,
    components: Vec<ColoredTree>,
    origin: Vec<Vec<usize>>,
}

impl ColoredForest {
    /// `blocks` partitions the leaves of `base`; `black` lists base vertices
    /// that survive in the forest and are coloured black.
    pub fn new(base: &Tree, mut blocks: Vec<Subset>, black: BTreeSet<usize>) -> Result<Self> {
        if !base.is_trivalent() {
            return Err(Error::invalid("forests are split from trivalent trees"));
        }
        blocks.sort();
        let union = blocks.iter().fold(Subset::EMPTY, |s, &b| {
            if s.is_disjoint(b) {
                s.union(b)
            } else {
                Subset::full(MAX_GROUND)
            }
        });
        if union != base.ground() {
            return Err(Error::invalid("blocks must partition the leaves"));
        }
        let mut used = BTreeSet::new();
        let mut components = Vec::new();
        let mut origin = Vec::new();
        for &b in &blocks {
            let (t, from) = base.reduce(b)?;
            for &x in &from {
                if !used.insert(x) {
                    return Err(Error::invalid("blocks are not reachable by splitting"));
                }
            }
            let black_here: Vec<usize> = (0..t.num_vertices())
                .filter(|&x| black.contains(&from[x]) && !t.is_leaf(x))
                .collect();
            components.push(ColoredTree::from_black(t, &black_here)?);
            origin.push(from);
        }
        if black.iter().any(|v| !used.contains(v) || base.is_leaf(*v)) {
            return Err(Error::invalid("black vertices must survive in the forest"));
        }
        Ok(ColoredForest { base: base.clone(), blocks, black, components, origin })
    }

    pub fn from_tree(ct: &ColoredTree) -> Self {
        let black = (0..ct.tree.num_vertices())
            .filter(|&v| ct.colors[v] == Some(Color::Black))
            .collect();
        ColoredForest::new(&ct.tree, vec![ct.tree.ground()], black).expect("a coloured tree is a forest")
    }

    pub fn base(&self) -> &Tree {
        &self.base
    }

    /// Leaf sets of the components, sorted.
    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn components(&self) -> &[ColoredTree] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.blocks.len()
    }

    /// Black vertices, as vertices of the base tree.
    pub fn black(&self) -> &BTreeSet<usize> {
        &self.black
    }

    pub fn num_black(&self) -> usize {
        self.black.len()
    }

    pub fn num_white(&self) -> usize {
        self.components.iter().map(ColoredTree::num_white).sum()
    }

    /// Split component `c` along its internal edge `(u, v)` (component
    /// indices). The endpoints disappear and their colours with them.
    pub fn split(&self, c: usize, u: usize, v: usize) -> Result<ColoredForest> {
        let t = &self
            .components
            .get(c)
            .ok_or_else(|| Error::invalid(format!("no component {c}")))?
            .tree;
        if u >= t.num_vertices() || !t.adj[u].contains(&v) || t.is_leaf(u) || t.is_leaf(v) {
            return Err(Error::invalid(format!("({u},{v}) is not an internal edge of component {c}")));
        }
        let mut blocks = self.blocks.clone();
        blocks[c] = t.side(u, v);
        blocks.push(t.side(v, u));
        let mut black = self.black.clone();
        black.remove(&self.origin[c][u]);
        black.remove(&self.origin[c][v]);
        ColoredForest::new(&self.base, blocks, black)
    }

    /// Splits along internal edges joining a black and a white vertex.
    pub fn bicolored_splits(&self) -> Vec<ColoredForest> {
        let mut out = Vec::new();
        for (c, comp) in self.components.iter().enumerate() {
            for (u, v) in comp.bicolored_edges() {
                out.push(self.split(c, u, v).expect("bicoloured edges are internal"));
            }
        }
        out
    }

    /// `⊕ mu(component)` on the leaves of the base tree.
    pub fn matroid(&self) -> Result<Matroid> {
        let n = self.base.ground().max().expect("nonempty");
        if self.base.ground() != Subset::full(n) {
            return Err(Error::invalid("leaf labels must be 1..=n"));
        }
        let parts: Vec<(Subset, Matroid)> = self
            .blocks
            .iter()
            .zip(&self.components)
            .map(|(&b, ct)| Ok((b, mu(ct, ct.rank())?)))
            .collect::<Result<_>>()?;
        let refs: Vec<(Subset, &Matroid)> = parts.iter().map(|(b, m)| (*b, m)).collect();
        Matroid::direct_sum(n, &refs)
    }

    fn key(&self) -> (Vec<Subset>, Vec<usize>) {
        (self.blocks.clone(), self.black.iter().copied().collect())
    }
}

/// Split `ct` along its internal edge `(u, v)`.
pub fn split(ct: &ColoredTree, u: usize, v: usize) -> Result<ColoredForest> {
    ColoredForest::from_tree(ct).split(0, u, v)
}

/// Leaf partitions of the `i`-tree forests reachable from a trivalent `t` by
/// splitting along internal edges. There are `C(n - i - 1, i - 1)` of them.
///
/// # Panics
/// If `t` is not trivalent or the count disagrees with the formula.
pub fn enumerate_forests(t: &Tree, i: usize) -> Vec<Vec<Subset>> {
    assert!(t.is_trivalent(), "forest enumeration needs a trivalent tree");
    let n = t.num_leaves();
    let mut level: BTreeSet<Vec<Subset>> = BTreeSet::from([vec![t.ground()]]);
    for _ in 1..i {
        let mut next = BTreeSet::new();
        for blocks in &level {
            for (c, &b) in blocks.iter().enumerate() {
                let (comp, _) = t.reduce(b).expect("reachable block");
                for (u, v) in comp.internal_edges() {
                    let mut nb = blocks.clone();
                    nb[c] = comp.side(u, v);
                    nb.push(comp.side(v, u));
                    nb.sort();
                    next.insert(nb);
                }
            }
        }
        level = next;
    }
    if i == 0 {
        level.clear();
    }
    let expected = if i == 0 { 0 } else { binomial_i(n as i64 - i as i64 - 1, i as i64 - 1) };
    assert_eq!(level.len() as u64, expected, "forest count for i = {i}, n = {n}");
    level.into_iter().collect()
}

/// `f_{i,d,n} = C(n - 2i, d - i) C(n - i - 1, i - 1)`; zero outside
/// `1 <= i <= min(d, n - d)`.
pub fn fvector_formula(i: usize, d: usize, n: usize) -> u64 {
    if i == 0 || d > n || i > d.min(n - d) {
        return 0;
    }
    binomial(n - 2 * i, d - i) * binomial(n - i - 1, i - 1)
}

/// `C(n - i - 1, d - i) C(2n - d - 1, i - 1)`, the bound on all faces of
/// dimension `i`; zero outside `1 <= i <= d < n`.
pub fn total_face_bound(i: usize, d: usize, n: usize) -> u64 {
    if i == 0 || i > d || d >= n {
        return 0;
    }
    binomial(n - i - 1, d - i) * binomial(2 * n - d - 1, i - 1)
}

/// One face `(F, c)` of a tree space with its predicted cell matroid.
#[derive(Clone, Debug)]
pub struct CatalogFace {
    pub forest: ColoredForest,
    pub matroid: Matroid,
}

/// The faces of the bounded part of `τ^d` predicted from the tree alone.
#[derive(Clone, Debug)]
pub struct FaceCatalog {
    pub faces: Vec<CatalogFace>,
    /// `(i, j)` when the cell of face `i` lies inside the cell of face `j`,
    /// that is when `i` arises from `j` by bicoloured splits.
    pub containment: Vec<(usize, usize)>,
}

impl FaceCatalog {
    /// Counts by number of components.
    pub fn f_vector(&self, d: usize, n: usize) -> Vec<u64> {
        let mut f = vec![0; d.min(n - d)];
        for face in &self.faces {
            f[face.forest.num_components() - 1] += 1;
        }
        f
    }

    pub fn matroids(&self) -> BTreeSet<Matroid> {
        self.faces.iter().map(|f| f.matroid.clone()).collect()
    }
}

/// All pairs `(F, c)` with `F` an `i`-tree forest split from `t` and `c` a
/// colouring of its internal vertices with `d - i` black, for every `i`.
pub fn tree_space_face_catalog(t: &Tree, d: usize) -> Result<FaceCatalog> {
    let n = t.num_leaves();
    if !t.is_trivalent() || t.ground() != Subset::full(n) {
        return Err(Error::invalid("catalog needs a trivalent tree with leaves 1..=n"));
    }
    if d == 0 || d >= n {
        return Err(Error::invalid(format!("rank {d} outside 1..{n}")));
    }
    let mut faces = Vec::new();
    for i in 1..=d.min(n - d) {
        for blocks in enumerate_forests(t, i) {
            let plain = ColoredForest::new(t, blocks.clone(), BTreeSet::new())?;
            let survivors: Vec<usize> = plain
                .origin
                .iter()
                .flatten()
                .copied()
                .filter(|&x| !t.is_leaf(x))
                .sorted()
                .collect();
            for black in survivors.into_iter().combinations(d - i) {
                let forest = ColoredForest::new(t, blocks.clone(), black.into_iter().collect())?;
                let matroid = forest.matroid()?;
                faces.push(CatalogFace { forest, matroid });
            }
        }
    }
    let index: HashMap<_, usize> = faces.iter().enumerate().map(|(k, f)| (f.forest.key(), k)).collect();
    let mut below: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); faces.len()];
    // faces are grouped by increasing component count, so walk backwards
    for j in (0..faces.len()).rev() {
        for child in faces[j].forest.bicolored_splits() {
            let i = *index
                .get(&child.key())
                .ok_or_else(|| Error::invariant("split produced a face outside the catalog"))?;
            let deeper = below[i].clone();
            below[j].insert(i);
            below[j].extend(deeper);
        }
    }
    let containment = below
        .iter()
        .enumerate()
        .flat_map(|(j, s)| s.iter().map(move |&i| (i, j)))
        .sorted()
        .collect();
    Ok(FaceCatalog { faces, containment })
}

/// A tree without degree 2 vertices and with edge lengths aligned to
/// `tree.edges()`. Internal edges have positive length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedTree {
    tree: Tree,
    lengths: Vec<Rat>,
}

impl WeightedTree {
    pub fn new(tree: Tree, lengths: Vec<Rat>) -> Result<Self> {
        let edges = tree.edges();
        if lengths.len() != edges.len() {
            return Err(Error::invalid(format!("{} lengths for {} edges", lengths.len(), edges.len())));
        }
        for (&(u, v), l) in edges.iter().zip(&lengths) {
            if !tree.is_leaf(u) && !tree.is_leaf(v) && !l.is_positive() {
                return Err(Error::invalid(format!("internal edge ({u},{v}) has length {l}")));
            }
        }
        Ok(WeightedTree { tree, lengths })
    }

    /// Internal edges of length 1, leaf edges of length 0.
    pub fn unit(tree: Tree) -> Self {
        let lengths = tree
            .edges()
            .into_iter()
            .map(|(u, v)| Rat::from_integer((!tree.is_leaf(u) && !tree.is_leaf(v)) as i64))
            .collect();
        WeightedTree { tree, lengths }
    }

    /// Internal lengths drawn from `1..=max`, leaf edges 0.
    pub fn random_lengths<R: Rng + ?Sized>(tree: Tree, max: i64, rng: &mut R) -> Self {
        let lengths = tree
            .edges()
            .into_iter()
            .map(|(u, v)| {
                if tree.is_leaf(u) || tree.is_leaf(v) {
                    Rat::zero()
                } else {
                    Rat::from_integer(rng.gen_range(1..=max.max(1)))
                }
            })
            .collect();
        WeightedTree { tree, lengths }
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn lengths(&self) -> &[Rat] {
        &self.lengths
    }

    /// Sum of lengths on the path between leaves `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> Option<Rat> {
        if i == j {
            return self.tree.leaf_of(i).map(|_| Rat::zero());
        }
        self.tree.distances(&self.lengths).remove(&(i.min(j), i.max(j)))
    }
}

/// The rank 2 vector `p_ij = -d(i, j) / 2`. Leaves must be labelled `1..=n`.
pub fn tree_plucker(w: &WeightedTree) -> Result<PlueckerVector> {
    let n = w.tree.num_leaves();
    if w.tree.ground() != Subset::full(n) {
        return Err(Error::invalid("leaf labels must be 1..=n"));
    }
    let dist = w.tree.distances(&w.lengths);
    let half = Rat::new(-1, 2)?;
    PlueckerVector::from_fn(n, 2, |s| {
        let e = s.elements();
        &dist[&(e[0], e[1])] * &half
    })
}

/// `τ^d` of the tree metric of `w`.
pub fn tree_space(w: &WeightedTree, d: usize) -> Result<PlueckerVector> {
    tau(&tree_plucker(w)?, d)
}

/// Tree JSON: leaves are `"L1"`..`"Ln"`, any other name is an internal
/// vertex. Missing lengths default to 1 on internal edges and 0 on leaf edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDoc {
    pub n: usize,
    pub edges: Vec<TreeDocEdge>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub colors: BTreeMap<String, Color>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDocEdge {
    pub u: String,
    pub v: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub len: Option<Rat>,
}

impl TreeDoc {
    fn build(&self) -> Result<(Tree, Vec<String>, Vec<Option<Rat>>)> {
        let mut names: Vec<String> = (1..=self.n).map(|k| format!("L{k}")).collect();
        let mut index: HashMap<String, usize> = names.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
        let mut edge_list = Vec::new();
        for e in &self.edges {
            let mut id = |s: &String| -> Result<usize> {
                if let Some(&k) = index.get(s) {
                    return Ok(k);
                }
                if s.starts_with('L') && s[1..].parse::<usize>().is_ok() {
                    return Err(Error::invalid(format!("leaf {s} outside L1..L{}", self.n)));
                }
                names.push(s.clone());
                index.insert(s.clone(), names.len() - 1);
                Ok(names.len() - 1)
            };
            let (a, b) = (id(&e.u)?, id(&e.v)?);
            edge_list.push((a, b, e.len.clone()));
        }
        let labels = (0..names.len()).map(|k| (k < self.n).then_some(k + 1)).collect();
        let plain: Vec<(usize, usize)> = edge_list.iter().map(|&(a, b, _)| (a, b)).collect();
        let tree = Tree::new(labels, &plain)?;
        let mut given = HashMap::new();
        for (a, b, l) in edge_list {
            given.insert((a.min(b), a.max(b)), l);
        }
        let lengths = tree.edges().iter().map(|e| given[e].clone()).collect();
        Ok((tree, names, lengths))
    }

    pub fn to_weighted(&self) -> Result<WeightedTree> {
        let (tree, _, lengths) = self.build()?;
        let lengths = tree
            .edges()
            .into_iter()
            .zip(lengths)
            .map(|((u, v), l)| l.unwrap_or_else(|| Rat::from_integer((!tree.is_leaf(u) && !tree.is_leaf(v)) as i64)))
            .collect();
        WeightedTree::new(tree, lengths)
    }

    pub fn to_colored(&self) -> Result<ColoredTree> {
        let (tree, names, _) = self.build()?;
        if let Some(name) = self.colors.keys().find(|k| !names.contains(k)) {
            return Err(Error::invalid(format!("colour given for unknown vertex {name}")));
        }
        let colors = names
            .iter()
            .enumerate()
            .map(|(k, name)| match (tree.is_leaf(k), self.colors.get(name)) {
                (true, None) => Ok(None),
                (true, Some(_)) => Err(Error::invalid(format!("leaf {name} cannot be coloured"))),
                (false, Some(&c)) => Ok(Some(c)),
                (false, None) => Err(Error::invalid(format!("internal vertex {name} has no colour"))),
            })
            .collect::<Result<_>>()?;
        ColoredTree::new(tree, colors)
    }

    /// Document for a weighted tree with leaves `1..=n`; internal vertices
    /// are named `v1, v2, ..` in index order.
    pub fn from_weighted(w: &WeightedTree, colors: Option<&ColoredTree>) -> Self {
        let t = &w.tree;
        let mut names = vec![String::new(); t.num_vertices()];
        let mut next = 0;
        for (x, name) in names.iter_mut().enumerate() {
            *name = match t.label(x) {
                Some(k) => format!("L{k}"),
                None => {
                    next += 1;
                    format!("v{next}")
                }
            };
        }
        let edges = t
            .edges()
            .into_iter()
            .zip(&w.lengths)
            .map(|((u, v), l)| TreeDocEdge { u: names[u].clone(), v: names[v].clone(), len: Some(l.clone()) })
            .collect();
        let colors = colors
            .map(|ct| {
                (0..t.num_vertices())
                    .filter_map(|x| ct.color(x).map(|c| (names[x].clone(), c)))
                    .collect()
            })
            .unwrap_or_default();
        TreeDoc { n: t.num_leaves(), edges, colors }
    }
}

/// One step of a series-parallel construction; edges are numbered from 1 in
/// creation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpStep {
    /// Replace edge `e` by a path of two edges; the new edge gets the next number.
    Series(usize),
    /// Add an edge parallel to `e`.
    Parallel(usize),
}

/// Cycle matroid of the graph grown from a single edge by `program`.
///
/// A series step on a bridge would disconnect the matroid, so it is rejected.
pub fn sp_graph_build(program: &[SpStep]) -> Result<Matroid> {
    let mut vertices = 2;
    let mut edges = vec![(0usize, 1usize)];
    for (k, step) in program.iter().enumerate() {
        let e = match *step {
            SpStep::Series(e) | SpStep::Parallel(e) => e,
        };
        if e == 0 || e > edges.len() {
            return Err(Error::invalid(format!("step {k} refers to missing edge {e}")));
        }
        if edges.len() == MAX_GROUND {
            return Err(Error::invalid(format!("more than {MAX_GROUND} edges")));
        }
        let (u, v) = edges[e - 1];
        match step {
            SpStep::Parallel(_) => edges.push((u, v)),
            SpStep::Series(_) => {
                if edges.len() + 1 == vertices {
                    return Err(Error::invalid(format!("step {k} extends the bridge {e} in series")));
                }
                edges[e - 1] = (u, vertices);
                edges.push((vertices, v));
                vertices += 1;
            }
        }
    }
    let m = Matroid::graphical(vertices, &edges)?;
    if !is_series_parallel(&m) {
        return Err(Error::invariant(format!("program built {m:?}, which is not series-parallel")));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subdivision::Subdivision;
    use crate::tutte::beta;
    use proptest::prelude::{any, prop_assert, prop_assert_eq, proptest, Strategy};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn quartet_colored(black_near_12: bool) -> ColoredTree {
        // vertex 4 is next to leaves 1, 2 and vertex 5 next to 3, 4
        ColoredTree::from_black(Tree::quartet(), &[if black_near_12 { 4 } else { 5 }]).unwrap()
    }

    #[test]
    fn quartet_mu() {
        let all: Vec<Subset> = KSubsets::new(4, 2).collect();
        let m = mu(&quartet_colored(true), 2).unwrap();
        let expected: Vec<Subset> = all.iter().copied().filter(|&s| s != Subset::of(&[3, 4])).collect();
        assert_eq!(m.bases(), &expected[..]);
        let m = mu(&quartet_colored(false), 2).unwrap();
        assert!(!m.is_basis(Subset::of(&[1, 2])));
        assert_eq!(m.num_bases(), 5);
        assert!(mu(&quartet_colored(true), 3).is_err());
    }

    #[test]
    fn caterpillar_colorings_are_series_parallel() {
        let t = Tree::caterpillar(5).unwrap();
        let cs = colorings(&t, 2).unwrap();
        assert_eq!(cs.len(), 3);
        for c in cs {
            assert_eq!(beta(&mu(&c, 2).unwrap()).unwrap(), 1);
        }
    }

    #[test]
    fn facet_kinds_match_the_tree() {
        for t in Tree::all_shapes(6).unwrap() {
            for d in 2..=4 {
                for ct in colorings(&t, d).unwrap() {
                    let m = mu(&ct, d).unwrap();
                    let (mut interior, mut with_loop, mut with_coloop) = (0, 0, 0);
                    let mut seen = BTreeSet::new();
                    let mut classify = |face: Matroid| {
                        if seen.insert(face.bases().to_vec()) {
                            let (l, c) = face.loops_coloops();
                            match (l.is_empty(), c.is_empty()) {
                                (true, true) => interior += 1,
                                (false, _) => with_loop += 1,
                                (true, false) => with_coloop += 1,
                            }
                        }
                    };
                    for f in m.good_flats() {
                        let r = m.rank_of(f);
                        let bases = m.bases().iter().copied().filter(|b| b.intersection(f).len() == r);
                        classify(Matroid::new(6, bases).unwrap());
                    }
                    for i in 1..=6 {
                        let face = Matroid::new(6, m.bases().iter().copied().filter(|b| !b.contains(i))).unwrap();
                        let del = face.restriction(Subset::full(6).remove(i));
                        if del.is_connected() {
                            classify(face);
                        }
                    }
                    assert_eq!(interior, ct.bicolored_edges().len());
                    assert_eq!(with_loop, ct.leaves_at(Color::White).len());
                    assert_eq!(with_coloop, ct.leaves_at(Color::Black).len());
                }
            }
        }
    }

    #[test]
    fn splitting_the_quartet() {
        let f = split(&quartet_colored(true), 4, 5).unwrap();
        assert_eq!(f.blocks(), &[Subset::of(&[1, 2]), Subset::of(&[3, 4])]);
        for c in f.components() {
            assert_eq!(c.tree().num_vertices(), 2);
        }
        assert_eq!(f.num_black(), 0);
        let u12 = Matroid::uniform(1, 2);
        let expected = Matroid::direct_sum(4, &[(Subset::of(&[1, 2]), &u12), (Subset::of(&[3, 4]), &u12)]).unwrap();
        assert_eq!(f.matroid().unwrap(), expected);
        assert!(split(&quartet_colored(true), 0, 4).is_err());
    }

    #[test]
    fn caterpillar_six_splits() {
        let t = Tree::caterpillar(6).unwrap();
        assert_eq!(t.internal_edges().len(), 3);
        assert_eq!(enumerate_forests(&t, 2).len(), 3);
        assert_eq!(enumerate_forests(&t, 3).len(), 1);
        assert_eq!(enumerate_forests(&t, 1).len(), 1);
        assert_eq!(enumerate_forests(&Tree::quartet(), 2).len(), 1);
    }

    #[test]
    fn shape_counts() {
        let counts: Vec<usize> = (4..=9).map(|n| Tree::all_shapes(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 2, 4, 6]);
        assert_eq!(Tree::all_labelled(6).unwrap().len(), 105);
    }

    #[test]
    fn formulas() {
        for d in 1..6 {
            for n in d + 1..10 {
                assert_eq!(fvector_formula(1, d, n), binomial(n - 2, d - 1));
            }
            assert_eq!(fvector_formula(d, d, 2 * d), 1);
        }
        assert_eq!(fvector_formula(3, 3, 7), 3);
        assert_eq!((1..=3).map(|i| fvector_formula(i, 3, 7)).collect::<Vec<_>>(), vec![10, 12, 3]);
        assert_eq!(fvector_formula(4, 3, 7), 0);
        assert_eq!(total_face_bound(1, 2, 4), 2);
        assert_eq!(total_face_bound(2, 2, 4), 5);
    }

    #[test]
    fn catalog_matches_the_subdivision() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, d) in [(4, 2), (5, 2), (6, 3), (6, 2)] {
            for t in Tree::all_shapes(n).unwrap() {
                let cat = tree_space_face_catalog(&t, d).unwrap();
                let expected: Vec<u64> = (1..=d.min(n - d)).map(|i| fvector_formula(i, d, n)).collect();
                assert_eq!(cat.f_vector(d, n), expected);
                for w in [WeightedTree::unit(t.clone()), WeightedTree::random_lengths(t.clone(), 5, &mut rng)] {
                    let sd = Subdivision::new(&tree_space(&w, d).unwrap()).unwrap();
                    let got: BTreeSet<Matroid> = sd.interior_faces().iter().map(|c| c.matroid.clone()).collect();
                    assert_eq!(got, cat.matroids());
                    let pos: HashMap<&Matroid, usize> =
                        sd.interior_faces().iter().enumerate().map(|(k, c)| (&c.matroid, k)).collect();
                    let mut mapped: Vec<(usize, usize)> = cat
                        .containment
                        .iter()
                        .map(|&(i, j)| (pos[&cat.faces[i].matroid], pos[&cat.faces[j].matroid]))
                        .collect();
                    mapped.sort();
                    let mut theirs = sd.containment().to_vec();
                    theirs.sort();
                    assert_eq!(mapped, theirs);
                }
            }
        }
    }

    #[test]
    fn quartet_tree_metric() {
        let w = WeightedTree::unit(Tree::quartet());
        assert_eq!(w.distance(1, 3), Some(Rat::one()));
        assert_eq!(w.distance(1, 2), Some(Rat::zero()));
        let p = tree_plucker(&w).unwrap();
        assert_eq!(p.get(Subset::of(&[1, 3])), &Rat::new(-1, 2).unwrap());
        assert!(p.is_valid());
    }

    #[test]
    fn tree_json_round_trip() {
        let text = r#"{"n":4,"edges":[{"u":"v1","v":"L1","len":"0"},{"u":"v1","v":"L2"},
            {"u":"v1","v":"v2","len":"3/2"},{"u":"v2","v":"L3"},{"u":"v2","v":"L4"}],
            "colors":{"v1":"black","v2":"white"}}"#;
        let doc: TreeDoc = crate::json::from_json(text).unwrap();
        let w = doc.to_weighted().unwrap();
        assert_eq!(w.distance(2, 4), Some(Rat::new(3, 2).unwrap()));
        let ct = doc.to_colored().unwrap();
        assert_eq!(ct.num_black(), 1);
        assert!(!mu(&ct, 2).unwrap().is_basis(Subset::of(&[3, 4])));
        let again = TreeDoc::from_weighted(&w, Some(&ct));
        assert_eq!(again.to_weighted().unwrap(), w);
        let bad = r#"{"n":4,"edges":[{"u":"v1","v":"L1"},{"u":"v1","v":"L2"},
            {"u":"v1","v":"v2","len":"0"},{"u":"v2","v":"L3"},{"u":"v2","v":"L4"}]}"#;
        let doc: TreeDoc = crate::json::from_json(bad).unwrap();
        assert!(doc.to_weighted().is_err());
    }

    #[test]
    fn sp_programs() {
        assert_eq!(sp_graph_build(&[]).unwrap(), Matroid::uniform(1, 1));
        assert_eq!(sp_graph_build(&[SpStep::Parallel(1)]).unwrap(), Matroid::uniform(1, 2));
        let m = sp_graph_build(&[SpStep::Parallel(1), SpStep::Series(2)]).unwrap();
        assert_eq!(m, Matroid::uniform(2, 3));
        assert!(sp_graph_build(&[SpStep::Series(1)]).is_err());
        assert!(sp_graph_build(&[SpStep::Parallel(2)]).is_err());
    }

    fn program() -> impl Strategy<Value = Vec<SpStep>> {
        proptest::collection::vec((any::<bool>(), 0usize..64), 0..6).prop_map(|raw| {
            let mut steps = vec![SpStep::Parallel(1)];
            for (series, k) in raw {
                let e = k % (steps.len() + 1) + 1;
                steps.push(if series { SpStep::Series(e) } else { SpStep::Parallel(e) });
            }
            steps
        })
    }

    proptest! {
        #[test]
        fn random_programs_are_series_parallel(steps in program()) {
            let m = sp_graph_build(&steps).unwrap();
            prop_assert!(is_series_parallel(&m));
            prop_assert_eq!(m.n(), steps.len() + 1);
        }

        #[test]
        fn random_trees_split_by_formula(seed in any::<u64>(), n in 4usize..10) {
            let t = Tree::random_trivalent(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            prop_assert!(t.is_trivalent());
            prop_assert_eq!(t.splits().len(), n - 3);
            for i in 1..=n / 2 {
                enumerate_forests(&t, i);
            }
        }

        #[test]
        fn random_colorings_give_series_parallel(seed in any::<u64>(), n in 4usize..8) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = Tree::random_trivalent(n, &mut rng).unwrap();
            let d = rng.gen_range(2..=n - 2);
            let cs = colorings(&t, d).unwrap();
            let ct = &cs[rng.gen_range(0..cs.len())];
            let m = mu(ct, d).unwrap();
            prop_assert!(m.is_connected());
            prop_assert_eq!(beta(&m).unwrap(), 1);
        }
    }
}
