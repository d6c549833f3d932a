//! The randomized layout of a rooted tree and the exact separation
//! probability of each pair as a polynomial in the bias `beta`.
//!
//! Children of the root go to either side with probability 1/2. Children of
//! any other vertex go between it and its parent with probability `1 - beta`
//! and to the far side with probability `beta`. On each side the children
//! are placed next to their parent in uniformly random order, so every
//! subtree occupies a contiguous interval.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgePair, Graph};
use crate::ordering::{Mode, Ordering};
use crate::rational::{rat, ser_rational, Rational};
use crate::separation::separated_linear;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootedTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
}

impl RootedTree {
    /// Roots a tree at `root`, or at its smallest-label centroid when `None`.
    pub fn new(g: &Graph, root: Option<usize>) -> Result<Self> {
        if !g.is_tree() {
            return Err(Error::NotATree(format!(
                "{} vertices, {} edges, {} components",
                g.n(),
                g.edges().len(),
                g.components().len()
            )));
        }
        let root = match root {
            Some(r) if r < g.n() => r,
            Some(r) => return Err(Error::InvalidArgument(format!("root {r} out of range"))),
            None => centroid(g),
        };
        let n = g.n();
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut stack = vec![root];
        let mut seen = vec![false; n];
        seen[root] = true;
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    children[u].push(v);
                    stack.push(v);
                }
            }
        }
        for c in &mut children {
            c.sort_unstable();
        }
        Ok(RootedTree {
            root,
            parent,
            children,
        })
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Whether `a` is `b` or an ancestor of `b`.
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let mut x = Some(b);
        while let Some(v) = x {
            if v == a {
                return true;
            }
            x = self.parent[v];
        }
        false
    }

    pub fn lca(&self, a: usize, b: usize) -> usize {
        let mut x = a;
        loop {
            if self.is_ancestor(x, b) {
                return x;
            }
            x = self.parent[x].expect("root is a common ancestor");
        }
    }

    /// Orients an edge as (parent, child).
    fn orient(&self, (u, v): (usize, usize)) -> (usize, usize) {
        if self.parent[v] == Some(u) {
            (u, v)
        } else {
            (v, u)
        }
    }
}

/// Smallest-label vertex minimizing the largest remaining component.
pub fn centroid(g: &Graph) -> usize {
    let n = g.n();
    (0..n)
        .min_by_key(|&v| {
            let rest: Vec<usize> = (0..n).filter(|&u| u != v).collect();
            let sub = g.induced(&rest);
            let largest = sub.components().iter().map(|c| c.len()).max().unwrap_or(0);
            (largest, v)
        })
        .unwrap_or(0)
}

/// A polynomial in `beta` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaPoly(pub Vec<Rational>);

impl BetaPoly {
    pub fn eval(&self, beta: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::from_integer(0.into()), |acc, c| acc * beta + c)
    }

    pub fn eval_f64(&self, beta: f64) -> f64 {
        self.0
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * beta + crate::rational::to_f64(c))
    }
}

impl fmt::Display for BetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zero = Rational::from_integer(0.into());
        let one = Rational::from_integer(1.into());
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().filter(|(_, c)| **c != zero) {
            let neg = *c < zero;
            let abs = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let coef = if i > 0 && abs == one { String::new() } else { abs.to_string() };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}b")?,
                _ => write!(f, "{coef}b^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for BetaPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(crate::rational::fmt_pq).collect();
        v.serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PairType {
    /// Neither edge holds an ancestor of the other.
    One,
    /// One edge lies below the lower endpoint of the other.
    Two,
    /// One edge lies below the upper endpoint, but not the lower endpoint, of the other.
    Three,
}

impl PairType {
    pub fn number(self) -> u8 {
        match self {
            PairType::One => 1,
            PairType::Two => 2,
            PairType::Three => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TreePairClass {
    pub pair: EdgePair,
    pub kind: PairType,
    /// Type 3 with the shared ancestor at the root.
    pub root_involved: bool,
    pub probability: BetaPoly,
}

/// Separation probability of a pair type under the layout process.
pub fn type_probability(kind: PairType, root_involved: bool) -> BetaPoly {
    let r = |p, q| rat(p, q);
    BetaPoly(match (kind, root_involved) {
        (PairType::One, _) => vec![r(1, 1)],
        (PairType::Two, _) => vec![r(0, 1), r(1, 1)],
        (PairType::Three, true) => vec![r(3, 4)],
        // 1 - (1-b)^2/2 - b^2/2
        (PairType::Three, false) => vec![r(1, 2), r(1, 1), r(-1, 1)],
    })
}

/// Classifies every nonincident pair of the tree.
pub fn tree_pair_classify(g: &Graph, t: &RootedTree) -> Vec<TreePairClass> {
    g.nonincident_pairs()
        .into_iter()
        .map(|pair| {
            let (mut a, mut b) = t.orient(pair.e1);
            let (mut c, mut d) = t.orient(pair.e2);
            let w = t.lca(a, c);
            let (kind, root_involved) = if w != a && w != c {
                (PairType::One, false)
            } else {
                if w == a {
                    std::mem::swap(&mut a, &mut c);
                    std::mem::swap(&mut b, &mut d);
                }
                let _ = b;
                if t.is_ancestor(d, a) {
                    (PairType::Two, false)
                } else {
                    (PairType::Three, c == t.root)
                }
            };
            TreePairClass {
                pair,
                kind,
                root_involved,
                probability: type_probability(kind, root_involved),
            }
        })
        .collect()
}

/// Smallest per-pair probability at `beta`; `None` without pairs.
pub fn tree_guarantee(classes: &[TreePairClass], beta: &Rational) -> Option<Rational> {
    classes.iter().map(|c| c.probability.eval(beta)).min()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

fn layout<R: Rng>(t: &RootedTree, u: usize, parent_side: Option<Side>, beta: f64, rng: &mut R, out: &mut Vec<usize>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &c in &t.children[u] {
        let side = match parent_side {
            None => {
                if rng.gen_bool(0.5) {
                    Side::Left
                } else {
                    Side::Right
                }
            }
            Some(ps) => {
                let far = rng.gen_bool(beta);
                match (ps, far) {
                    (Side::Left, false) | (Side::Right, true) => Side::Left,
                    _ => Side::Right,
                }
            }
        };
        match side {
            Side::Left => left.push(c),
            Side::Right => right.push(c),
        }
    }
    // index 0 of each side sits next to u
    left.shuffle(rng);
    right.shuffle(rng);
    for &c in left.iter().rev() {
        layout(t, c, Some(Side::Right), beta, rng, out);
    }
    out.push(u);
    for &c in &right {
        layout(t, c, Some(Side::Left), beta, rng, out);
    }
}

/// Draws one linear ordering from the layout process.
pub fn tree_strategy_sample<R: Rng>(t: &RootedTree, beta: f64, rng: &mut R) -> Result<Ordering> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidArgument(format!("beta = {beta} is not a probability")));
    }
    let mut out = Vec::with_capacity(t.n());
    layout(t, t.root, None, beta, rng, &mut out);
    Ordering::linear(out)
}

/// Every vertex strictly between a vertex and one of its children is a descendant of that vertex.
pub fn has_descendant_property(t: &RootedTree, o: &Ordering) -> bool {
    let pos = o.positions();
    let perm = o.perm();
    (0..t.n()).all(|u| {
        t.children[u].iter().all(|&c| {
            let (lo, hi) = (pos[u].min(pos[c]), pos[u].max(pos[c]));
            perm[lo + 1..hi].iter().all(|&x| t.is_ancestor(u, x))
        })
    })
}

/// Monte Carlo tallies of the layout process.
#[derive(Clone, Debug, Serialize)]
pub struct MonteCarlo {
    pub samples: u64,
    pub seed: u64,
    pub beta: f64,
    /// Times each pair (in `nonincident_pairs` order) was separated.
    pub separated: Vec<u64>,
    /// Samples violating the descendant property (expected 0).
    pub property_failures: u64,
}

impl MonteCarlo {
    pub fn frequency(&self, i: usize) -> f64 {
        self.separated[i] as f64 / self.samples as f64
    }

    /// Lowest frequency with the standard error at that frequency.
    pub fn min_frequency(&self) -> Option<(usize, f64, f64)> {
        (0..self.separated.len())
            .min_by_key(|&i| (self.separated[i], i))
            .map(|i| {
                let p = self.frequency(i);
                (i, p, (p * (1.0 - p) / self.samples as f64).sqrt())
            })
    }
}

const CHUNK: u64 = 4096;

/// Samples in fixed-size chunks, each with its own ChaCha stream, so totals
/// depend only on the seed and not on the thread count.
pub fn monte_carlo(g: &Graph, t: &RootedTree, beta: f64, samples: u64, seed: u64) -> Result<MonteCarlo> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidArgument(format!("beta = {beta} is not a probability")));
    }
    let pairs = g.nonincident_pairs();
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<(Vec<u64>, u64)> = (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(ci);
            let count = CHUNK.min(samples - ci * CHUNK);
            let mut sep = vec![0u64; pairs.len()];
            let mut bad = 0;
            let mut out = Vec::with_capacity(t.n());
            let mut pos = vec![0usize; t.n()];
            for _ in 0..count {
                out.clear();
                layout(t, t.root, None, beta, &mut rng, &mut out);
                for (i, &v) in out.iter().enumerate() {
                    pos[v] = i;
                }
                let o = Ordering::new_unchecked(Mode::Linear, out.clone());
                if !has_descendant_property(t, &o) {
                    bad += 1;
                }
                for (k, p) in pairs.iter().enumerate() {
                    if separated_linear(pos[p.e1.0], pos[p.e1.1], pos[p.e2.0], pos[p.e2.1]) {
                        sep[k] += 1;
                    }
                }
            }
            (sep, bad)
        })
        .collect();
    let mut separated = vec![0u64; pairs.len()];
    let mut property_failures = 0;
    for (s, b) in parts {
        for (a, x) in separated.iter_mut().zip(s) {
            *a += x;
        }
        property_failures += b;
    }
    Ok(MonteCarlo {
        samples,
        seed,
        beta,
        separated,
        property_failures,
    })
}

/// Uniform random labeled tree on `n` vertices (Pruefer decoding).
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    if n <= 1 {
        return Graph::from_edges(n.max(1), []).expect("single vertex");
    }
    if n == 2 {
        return Graph::from_edges(2, [(0, 1)]).expect("edge");
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, edges).expect("Pruefer decoding yields a tree")
}

/// Exact summary of the layout strategy on a tree at a rational `beta`.
#[derive(Clone, Debug, Serialize)]
pub struct TreeReport {
    pub root: usize,
    pub classes: Vec<TreePairClass>,
    #[serde(serialize_with = "crate::rational::ser_opt_rational")]
    pub guarantee: Option<Rational>,
    #[serde(serialize_with = "ser_rational")]
    pub beta: Rational,
}

pub fn tree_report(g: &Graph, root: Option<usize>, beta: &Rational) -> Result<TreeReport> {
    let t = RootedTree::new(g, root)?;
    let classes = tree_pair_classify(g, &t);
    Ok(TreeReport {
        root: t.root,
        guarantee: tree_guarantee(&classes, beta),
        classes,
        beta: beta.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};
    use num_traits::{One, Zero};
    use std::collections::HashMap;

    #[test]
    fn polynomial_display() {
        assert_eq!(type_probability(PairType::Three, false).to_string(), "1/2 + b - b^2");
        assert_eq!(type_probability(PairType::Two, false).to_string(), "b");
        assert_eq!(BetaPoly(vec![rat(0, 1), rat(-2, 3)]).to_string(), "-2/3b");
        assert_eq!(BetaPoly(vec![]).to_string(), "0");
    }

    /// All layouts of the subtree of `u` with exact probabilities.
    fn exact_layouts(t: &RootedTree, u: usize, parent_side: Option<Side>, beta: &Rational) -> Vec<(Vec<usize>, Rational)> {
        let kids = &t.children[u];
        let k = kids.len();
        let mut out = Vec::new();
        for mask in 0..1u32 << k {
            let mut left = Vec::new();
            let mut right = Vec::new();
            let mut p = Rational::one();
            for (i, &c) in kids.iter().enumerate() {
                let is_left = mask >> i & 1 == 1;
                p *= match parent_side {
                    None => rat(1, 2),
                    Some(Side::Left) => if is_left { Rational::one() - beta } else { beta.clone() },
                    Some(Side::Right) => if is_left { beta.clone() } else { Rational::one() - beta },
                };
                if is_left {
                    left.push(c);
                } else {
                    right.push(c);
                }
            }
            let fact = |n: usize| (1..=n as i64).product::<i64>();
            p /= rat(fact(left.len()) * fact(right.len()), 1);
            for lp in permutations(&left) {
                for rp in permutations(&right) {
                    let mut blocks: Vec<Vec<(Vec<usize>, Rational)>> = Vec::new();
                    for &c in lp.iter().rev() {
                        blocks.push(exact_layouts(t, c, Some(Side::Right), beta));
                    }
                    blocks.push(vec![(vec![u], Rational::one())]);
                    for &c in &rp {
                        blocks.push(exact_layouts(t, c, Some(Side::Left), beta));
                    }
                    let mut acc = vec![(Vec::new(), p.clone())];
                    for b in blocks {
                        let mut next = Vec::new();
                        for (s, q) in &acc {
                            for (s2, q2) in &b {
                                let mut v = s.clone();
                                v.extend(s2);
                                next.push((v, q * q2));
                            }
                        }
                        acc = next;
                    }
                    out.extend(acc);
                }
            }
        }
        out
    }

    fn permutations(v: &[usize]) -> Vec<Vec<usize>> {
        let mut s = v.to_vec();
        s.sort_unstable();
        let mut out = vec![s.clone()];
        while crate::enumerate::next_permutation(&mut s) {
            out.push(s.clone());
        }
        out
    }

    fn check_exact(g: &Graph, root: Option<usize>, beta: Rational) {
        let t = RootedTree::new(g, root).unwrap();
        let dist = exact_layouts(&t, t.root, None, &beta);
        let total: Rational = dist.iter().map(|d| d.1.clone()).sum();
        assert_eq!(total, Rational::one());
        let pairs = g.nonincident_pairs();
        let classes = tree_pair_classify(g, &t);
        for (i, p) in pairs.iter().enumerate() {
            let mut prob = Rational::zero();
            for (perm, q) in &dist {
                let o = Ordering::linear(perm.clone()).unwrap();
                assert!(has_descendant_property(&t, &o));
                let pos = o.positions();
                if separated_linear(pos[p.e1.0], pos[p.e1.1], pos[p.e2.0], pos[p.e2.1]) {
                    prob += q;
                }
            }
            assert_eq!(prob, classes[i].probability.eval(&beta), "{p} {:?}", classes[i].kind);
        }
    }

    #[test]
    fn classification_matches_exact_process() {
        let spider = generate(&FamilySpec::SubdividedStar(3)).unwrap();
        check_exact(&spider, Some(0), rat(3, 4));
        check_exact(&spider, Some(1), rat(2, 3));
        let path = generate(&FamilySpec::Path(6)).unwrap();
        check_exact(&path, None, rat(3, 4));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 4..=7 {
            let tr = random_tree(n, &mut rng);
            for root in 0..n {
                check_exact(&tr, Some(root), rat(3, 4));
            }
        }
    }

    #[test]
    fn type_polynomials() {
        let p3 = type_probability(PairType::Three, false);
        assert_eq!(p3.eval(&rat(3, 4)), rat(11, 16));
        let b = std::f64::consts::FRAC_1_SQRT_2;
        assert!((p3.eval_f64(b) - b).abs() < 1e-12);
        assert_eq!(type_probability(PairType::Two, false).eval(&rat(3, 4)), rat(3, 4));
        assert_eq!(type_probability(PairType::Three, true).eval(&rat(1, 5)), rat(3, 4));
    }

    #[test]
    fn spider_rooted_at_centre() {
        let g = generate(&FamilySpec::SubdividedStar(4)).unwrap();
        let r = tree_report(&g, Some(0), &rat(3, 4)).unwrap();
        assert_eq!(r.guarantee, Some(rat(3, 4)));
        let counts = r.classes.iter().fold(HashMap::new(), |mut m, c| {
            *m.entry((c.kind, c.root_involved)).or_insert(0) += 1;
            m
        });
        assert!(!counts.contains_key(&(PairType::Three, false)));
    }

    #[test]
    fn samples_keep_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = random_tree(12, &mut rng);
            let t = RootedTree::new(&g, None).unwrap();
            for _ in 0..20 {
                let o = tree_strategy_sample(&t, 0.7, &mut rng).unwrap();
                assert!(has_descendant_property(&t, &o));
            }
        }
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let g = generate(&FamilySpec::SubdividedStar(3)).unwrap();
        let t = RootedTree::new(&g, Some(0)).unwrap();
        let a = monte_carlo(&g, &t, 0.75, 10_000, 5).unwrap();
        let b = monte_carlo(&g, &t, 0.75, 10_000, 5).unwrap();
        assert_eq!(a.separated, b.separated);
        assert_eq!(a.property_failures, 0);
    }

    #[test]
    fn rejects_non_trees() {
        let c = generate(&FamilySpec::Cycle(5)).unwrap();
        assert!(matches!(RootedTree::new(&c, None), Err(Error::NotATree(_))));
    }
}
