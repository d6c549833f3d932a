//! Explicit mixed strategies for both players of the separation game.
//!
//! An ordering-player [`Strategy`] is a rational-weighted multiset of
//! orderings, optionally composed with a uniformly random relabeling inside
//! each part of a complete multipartite graph. Its exact per-pair separation
//! probabilities give a lower bound on the game value. A [`PairStrategy`]
//! gives an upper bound through the best response of the ordering player.

pub mod identities;
pub mod swaps;
pub mod tree;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::enumerate::{for_each_ordering, Caps};
use crate::error::{Error, Result};
use crate::graph::{EdgePair, FamilySpec, Graph};
use crate::ordering::{Mode, Ordering};
use crate::rational::{common_denominator, from_u64, rat, ser_opt_rational, ser_rational, ser_weighted, Rational};
use crate::search::{max_separation, SearchMethod};
use crate::separation::{separated_at, ClassPartition};
use crate::symmetry::{automorphisms, pattern_ordering};

/// Largest n for strategies whose support has n! or (n-1)!/2 orderings.
pub const STRATEGY_CAP: usize = 8;
pub const K4FREE_CAP: usize = 7;

#[derive(Clone, Debug, Serialize)]
pub struct Strategy {
    pub mode: Mode,
    pub n: usize,
    #[serde(serialize_with = "ser_weighted")]
    pub support: Vec<(Ordering, Rational)>,
    /// Vertices inside each listed part are permuted uniformly at random
    /// after an ordering is drawn.
    pub shuffle_parts: Option<Vec<Vec<usize>>>,
    /// Claimed lower bound on every pair's separation probability.
    #[serde(serialize_with = "ser_opt_rational")]
    pub guarantee: Option<Rational>,
    pub provenance: String,
}

impl Strategy {
    /// Validates and merges repeated orderings.
    pub fn new(
        mode: Mode,
        n: usize,
        support: Vec<(Ordering, Rational)>,
        shuffle_parts: Option<Vec<Vec<usize>>>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidArgument("strategy has empty support".into()));
        }
        let mut merged: BTreeMap<Ordering, Rational> = BTreeMap::new();
        for (o, w) in support {
            if o.mode() != mode || o.len() != n {
                return Err(Error::InvalidOrdering(format!("{o} does not match {mode} on {n} vertices")));
            }
            if !w.is_positive() {
                return Err(Error::InvalidArgument("strategy weights must be positive".into()));
            }
            *merged.entry(o).or_insert_with(Rational::zero) += w;
        }
        let total: Rational = merged.values().sum();
        if total != Rational::one() {
            return Err(Error::InvalidArgument(format!("strategy weights sum to {total}")));
        }
        Ok(Strategy {
            mode,
            n,
            support: merged.into_iter().collect(),
            shuffle_parts,
            guarantee: None,
            provenance: provenance.into(),
        })
    }

    /// Uniform over a list of orderings, counting repeats.
    pub fn uniform_over(
        mode: Mode,
        n: usize,
        orderings: Vec<Ordering>,
        shuffle_parts: Option<Vec<Vec<usize>>>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let total = orderings.len() as u64;
        if total == 0 {
            return Err(Error::InvalidArgument("strategy has empty support".into()));
        }
        let mut counts: BTreeMap<Ordering, u64> = BTreeMap::new();
        for o in orderings {
            *counts.entry(o).or_insert(0) += 1;
        }
        let support = counts
            .into_iter()
            .map(|(o, c)| (o, Rational::new(c.into(), total.into())))
            .collect();
        Strategy::new(mode, n, support, shuffle_parts, provenance)
    }

    fn with_guarantee(mut self, g: Rational) -> Self {
        self.guarantee = Some(g);
        self
    }

    /// Exact separation probability of every nonincident pair of `g`.
    pub fn evaluate(&self, g: &Graph) -> Result<Evaluation> {
        if g.n() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "strategy on {} vertices, graph on {}",
                self.n,
                g.n()
            )));
        }
        let pairs = g.nonincident_pairs();
        // Pairs in one shuffle orbit share a probability: the average over the orbit.
        let orbit = match &self.shuffle_parts {
            Some(parts) => shuffle_orbits(&pairs, parts),
            None => ClassPartition::singletons(pairs.len()),
        };
        let den = common_denominator(self.support.iter().map(|(_, w)| w));
        let mut acc = vec![BigInt::zero(); orbit.num_classes()];
        let mut counts = vec![0u64; orbit.num_classes()];
        for (o, w) in &self.support {
            let wi = (w * Rational::from_integer(den.clone())).to_integer();
            let pos = o.positions();
            counts.iter_mut().for_each(|c| *c = 0);
            for (i, p) in pairs.iter().enumerate() {
                if separated_at(self.mode, pos[p.e1.0], pos[p.e1.1], pos[p.e2.0], pos[p.e2.1]) {
                    counts[orbit.class_of(i)] += 1;
                }
            }
            for (a, &c) in acc.iter_mut().zip(&counts) {
                if c > 0 {
                    *a += &wi * BigInt::from(c);
                }
            }
        }
        let probs: Vec<Rational> = acc
            .into_iter()
            .zip(orbit.sizes())
            .map(|(a, &s)| Rational::new(a, &den * BigInt::from(s)))
            .collect();
        let per_pair: Vec<(EdgePair, Rational)> = pairs
            .iter()
            .enumerate()
            .map(|(i, p)| (*p, probs[orbit.class_of(i)].clone()))
            .collect();
        Ok(Evaluation::from_pairs(per_pair))
    }

    /// Guarantee check: the claimed bound does not exceed the exact minimum.
    pub fn verify(&self, g: &Graph) -> Result<(Evaluation, bool)> {
        let ev = self.evaluate(g)?;
        let ok = match (&self.guarantee, &ev.min) {
            (Some(c), Some(m)) => c <= m,
            _ => true,
        };
        Ok((ev, ok))
    }
}

/// Orbits of pairs under independent relabeling inside each part.
fn shuffle_orbits(pairs: &[EdgePair], parts: &[Vec<usize>]) -> ClassPartition {
    let index: HashMap<EdgePair, usize> = pairs.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let n = parts.iter().flatten().copied().max().map_or(0, |m| m + 1);
    let mut parent: Vec<usize> = (0..pairs.len()).collect();
    fn root(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for part in parts {
        for w in part.windows(2) {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(w[0], w[1]);
            for (i, p) in pairs.iter().enumerate() {
                if let Some(&j) = index.get(&p.map(&perm)) {
                    let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    let mut label: HashMap<usize, usize> = HashMap::new();
    let labels: Vec<usize> = (0..pairs.len())
        .map(|i| {
            let r = root(&mut parent, i);
            let next = label.len();
            *label.entry(r).or_insert(next)
        })
        .collect();
    ClassPartition::from_labels(labels).expect("contiguous labels")
}

/// Exact per-pair separation probabilities of a strategy.
#[derive(Clone, Debug, Serialize)]
pub struct Evaluation {
    #[serde(serialize_with = "ser_weighted")]
    pub per_pair: Vec<(EdgePair, Rational)>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub min: Option<Rational>,
    pub argmin: Option<EdgePair>,
    /// `1 / min`: an upper bound on the fractional separation dimension.
    #[serde(serialize_with = "ser_opt_rational")]
    pub bound: Option<Rational>,
}

impl Evaluation {
    fn from_pairs(per_pair: Vec<(EdgePair, Rational)>) -> Self {
        let best = per_pair.iter().min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        let min = best.map(|b| b.1.clone());
        let argmin = best.map(|b| b.0);
        let bound = min.as_ref().filter(|m| m.is_positive()).map(|m| Rational::one() / m);
        Evaluation {
            per_pair,
            min,
            argmin,
            bound,
        }
    }

    /// Average probability over each class.
    pub fn class_fractions(&self, classes: &ClassPartition) -> Vec<Rational> {
        let mut sums = vec![Rational::zero(); classes.num_classes()];
        for (i, (_, p)) in self.per_pair.iter().enumerate() {
            sums[classes.class_of(i)] += p;
        }
        sums.into_iter()
            .zip(classes.sizes())
            .map(|(s, &k)| s / from_u64(k as u64))
            .collect()
    }
}

fn family_graph(spec: FamilySpec) -> Result<Graph> {
    crate::graph::generate(&spec)
}

/// Uniform over all orderings: n! linear or (n-1)!/2 circular.
pub fn uniform_strategy(g: &Graph, mode: Mode, cap: Option<usize>) -> Result<Strategy> {
    let n = g.n();
    let cap = cap.unwrap_or(STRATEGY_CAP);
    if n > cap {
        return Err(Error::cap("uniform strategy", n, cap, ""));
    }
    let mut all = Vec::new();
    for_each_ordering(n, mode, false, |p| {
        all.push(Ordering::new_unchecked(mode, p.iter().map(|&v| v as usize).collect()));
    });
    let s = Strategy::uniform_over(mode, n, all, None, "uniform over all orderings")?;
    Ok(if n >= 4 {
        s.with_guarantee(match mode {
            Mode::Linear => rat(1, 3),
            Mode::Circular => rat(2, 3),
        })
    } else {
        s
    })
}

/// The 24 orderings of a 4-set `{a,b,c,d}` (with `ac` a non-edge) replacing
/// the uniform 24, as index sequences into `[a,b,c,d]` with multiplicities.
fn k4free_block(mode: Mode) -> Vec<([usize; 4], u64)> {
    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const D: usize = 3;
    match mode {
        Mode::Linear => vec![
            ([A, B, C, D], 4),
            ([B, C, A, D], 4),
            ([C, D, B, A], 8),
            ([A, D, B, C], 8),
        ],
        Mode::Circular => vec![
            ([A, B, D, C], 2),
            ([B, A, D, C], 2),
            ([D, C, B, A], 2),
            ([C, B, A, D], 2),
            ([A, D, B, C], 2),
            ([A, D, C, B], 2),
            ([A, C, B, D], 2),
            ([D, B, A, C], 2),
            ([C, D, A, B], 4),
            ([B, C, D, A], 4),
        ],
    }
}

/// The modified uniform distribution for K4-free graphs: for every 4-set S
/// and every ordering of the rest, the 24 orderings that begin with S are
/// replaced by a fixed multiset that favors the pairs inside S.
pub fn k4free_strategy(g: &Graph, mode: Mode, cap: Option<usize>) -> Result<Strategy> {
    if let Some(k) = g.find_k4() {
        return Err(Error::ContainsK4(k));
    }
    let n = g.n();
    let cap = cap.unwrap_or(K4FREE_CAP);
    if n > cap {
        return Err(Error::cap("K4-free strategy", n, cap, ""));
    }
    if n < 4 {
        return Err(Error::InvalidArgument("K4-free strategy needs n >= 4".into()));
    }
    let block = k4free_block(mode);
    let total = crate::rational::factorial(n as u64);
    let mut support: Vec<(Ordering, Rational)> = Vec::new();
    for s in combinations(n, 4) {
        let (a, c) = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .map(|(i, j)| (s[i], s[j]))
            .find(|&(u, v)| !g.has_edge(u, v))
            .expect("K4-free 4-set has a non-edge");
        let rest4: Vec<usize> = s.iter().copied().filter(|&v| v != a && v != c).collect();
        let labels = [a, rest4[0], c, rest4[1]];
        let mut others: Vec<usize> = (0..n).filter(|v| !s.contains(v)).collect();
        loop {
            for (idx, mult) in &block {
                let mut perm: Vec<usize> = idx.iter().map(|&i| labels[i]).collect();
                perm.extend(&others);
                support.push((
                    Ordering::new_unchecked(mode, perm),
                    Rational::new(BigInt::from(*mult), total.clone()),
                ));
            }
            if !crate::enumerate::next_permutation(&mut others) {
                break;
            }
        }
    }
    let base = match mode {
        Mode::Linear => rat(1, 3),
        Mode::Circular => rat(2, 3),
    };
    let extra = Rational::new(
        BigInt::from(4) * crate::rational::factorial(n as u64 - 4),
        total,
    );
    Ok(Strategy::new(mode, n, support, None, "K4-free modification of the uniform distribution")?
        .with_guarantee(base + extra))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Strategy from part-label patterns on the canonical multipartite labeling.
fn pattern_strategy(
    sizes: &[usize],
    mode: Mode,
    patterns: Vec<(Vec<usize>, u64)>,
    provenance: &str,
) -> Result<Strategy> {
    let g = family_graph(FamilySpec::Multipartite(sizes.to_vec()))?;
    let parts = g.parts().expect("generated with parts").to_vec();
    let total: u64 = patterns.iter().map(|(_, c)| c).sum();
    let support = patterns
        .into_iter()
        .map(|(p, c)| {
            (
                Ordering::new_unchecked(mode, pattern_ordering(&parts, &p)),
                Rational::new(c.into(), total.into()),
            )
        })
        .collect();
    Strategy::new(mode, g.n(), support, Some(parts), provenance)
}

/// Shape of a complete bipartite strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BipartiteShape {
    /// K_{m,m}, interleaved XY/YX blocks.
    Balanced(usize),
    /// K_{m+1,qm}: position i (from 0) holds X iff i is a multiple of q+1.
    Blocks { m: usize, q: usize },
}

pub fn bipartite_interleaved_strategy(shape: BipartiteShape) -> Result<Strategy> {
    match shape {
        BipartiteShape::Balanced(m) => {
            if m < 2 {
                return Err(Error::ShapeMismatch(format!("K_{{m,m}} strategy needs m >= 2, got {m}")));
            }
            let mut patterns = Vec::new();
            for mask in 0..1u64 << m {
                let p: Vec<usize> = (0..m)
                    .flat_map(|i| if mask >> i & 1 == 0 { [0, 1] } else { [1, 0] })
                    .collect();
                patterns.push((p, 1));
            }
            Ok(pattern_strategy(&[m, m], Mode::Linear, patterns, "interleaved orderings of K_{m,m}")?
                .with_guarantee(rat(m as i64 + 1, 3 * m as i64)))
        }
        BipartiteShape::Blocks { m, q } => {
            if m < 1 || q < 1 || m * q < 2 {
                return Err(Error::ShapeMismatch(format!("K_{{m+1,qm}} strategy needs mq > 1, got m={m} q={q}")));
            }
            let mut p = vec![0];
            for _ in 0..m {
                p.extend(std::iter::repeat_n(1, q));
                p.push(0);
            }
            let (m, q) = (m as i64, q as i64);
            Ok(pattern_strategy(&[(m + 1) as usize, (q * m) as usize], Mode::Linear, vec![(p, 1)], "block orderings of K_{m+1,qm}")?
                .with_guarantee(rat((2 * m + 1) * m * q - m - 2, 6 * m * (m * q - 1))))
        }
    }
}

/// Shape of a complete tripartite strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripartiteShape {
    /// K_{m,m,m}: every consecutive triple has one vertex of each part.
    Balanced(usize),
    /// K_{m+1,m,m}: blocks (x_i, y_i, z_i), extra x last, and the Y/Z switch.
    PlusOne(usize),
    /// K_{1,m,m}: interleaved YZ pairs with x after `k` pairs (default ceil(m/2)).
    OneMM { m: usize, k: Option<usize> },
}

pub const TRIPARTITE_BALANCED_CAP: usize = 5;

/// `f(k)`: T-pairs of K_{1,m,m} separated with x after k of the YZ pairs.
pub fn k1mm_separated(m: u64, k: u64) -> BigInt {
    let s = |k: u64| -> BigInt { (1..=k).map(|j| crate::rational::binom(2 * j - 1, 2)).sum() };
    BigInt::from(2 * m * k * (m - k)) + s(k) + s(m - k)
}

pub fn tripartite_block_strategy(shape: TripartiteShape) -> Result<Strategy> {
    match shape {
        TripartiteShape::Balanced(m) => {
            if m < 2 {
                return Err(Error::ShapeMismatch(format!("K_{{m,m,m}} strategy needs m >= 2, got {m}")));
            }
            if m > TRIPARTITE_BALANCED_CAP {
                return Err(Error::cap("triple-block strategy (6^m patterns), m", m, TRIPARTITE_BALANCED_CAP, ""));
            }
            const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            let mut patterns = Vec::new();
            let mut digits = vec![0usize; m];
            loop {
                let p: Vec<usize> = digits.iter().flat_map(|&d| PERMS[d]).collect();
                patterns.push((p, 1));
                let mut i = 0;
                while i < m && digits[i] == 5 {
                    digits[i] = 0;
                    i += 1;
                }
                if i == m {
                    break;
                }
                digits[i] += 1;
            }
            let m = m as i64;
            Ok(pattern_strategy(&[m as usize; 3], Mode::Linear, patterns, "triple-block orderings of K_{m,m,m}")?
                .with_guarantee(rat(2 * m + 1, 6 * m)))
        }
        TripartiteShape::PlusOne(m) => {
            if m < 2 {
                return Err(Error::ShapeMismatch(format!("K_{{m+1,m,m}} strategy needs m >= 2, got {m}")));
            }
            let block = |order: [usize; 3]| {
                let mut p: Vec<usize> = (0..m).flat_map(|_| order).collect();
                p.push(0);
                p
            };
            let patterns = vec![(block([0, 1, 2]), 1), (block([0, 2, 1]), 1)];
            let m = m as i64;
            Ok(pattern_strategy(
                &[m as usize + 1, m as usize, m as usize],
                Mode::Linear,
                patterns,
                "ordered triple blocks of K_{m+1,m,m} with the extra vertex last",
            )?
            .with_guarantee(rat(2 * m + 1, 6 * m)))
        }
        TripartiteShape::OneMM { m, k } => {
            if m < 2 {
                return Err(Error::ShapeMismatch(format!("K_{{1,m,m}} strategy needs m >= 2, got {m}")));
            }
            let k = k.unwrap_or(m.div_ceil(2));
            if k > m {
                return Err(Error::ShapeMismatch(format!("split k = {k} exceeds m = {m}")));
            }
            let mut patterns = Vec::new();
            for mask in 0..1u64 << m {
                let mut p: Vec<usize> = Vec::with_capacity(2 * m + 1);
                for i in 0..m {
                    if i == k {
                        p.push(0);
                    }
                    p.extend(if mask >> i & 1 == 0 { [1, 2] } else { [2, 1] });
                }
                if k == m {
                    p.push(0);
                }
                patterns.push((p, 1));
            }
            let (mu, ku) = (m as u64, k as u64);
            let t = Rational::new(k1mm_separated(mu, ku), BigInt::from(2 * mu * mu * (mu - 1)));
            let d = rat(m as i64 + 1, 3 * m as i64);
            Ok(pattern_strategy(&[1, m, m], Mode::Linear, patterns, "paired YZ orderings of K_{1,m,m}")?
                .with_guarantee(t.min(d)))
        }
    }
}

/// Circular orderings of K_{m,qm} with X equally spaced and q vertices of Y between.
pub fn circular_spaced_strategy(m: usize, q: usize) -> Result<Strategy> {
    if m < 2 || q < 1 {
        return Err(Error::ShapeMismatch(format!("spaced circular strategy needs m >= 2, q >= 1; got m={m} q={q}")));
    }
    let mut p = Vec::new();
    for _ in 0..m {
        p.push(0);
        p.extend(std::iter::repeat_n(1, q));
    }
    let (mi, qi) = (m as i64, q as i64);
    Ok(pattern_strategy(&[m, q * m], Mode::Circular, vec![(p, 1)], "equally spaced circular orderings of K_{m,qm}")?
        .with_guarantee(rat(4 * mi * qi + qi - 3, 6 * (qi * mi - 1))))
}

/// The n paths obtained by deleting one edge of C_n, uniformly.
pub fn cycle_rotation_strategy(n: usize) -> Result<Strategy> {
    if n < 4 {
        return Err(Error::ShapeMismatch(format!("cycle strategy needs n >= 4, got {n}")));
    }
    let orders = (0..n)
        .map(|i| Ordering::new_unchecked(Mode::Linear, (0..n).map(|j| (i + j) % n).collect()))
        .collect();
    Ok(Strategy::uniform_over(Mode::Linear, n, orders, None, "rotations of the path around C_n")?
        .with_guarantee(rat(n as i64 - 2, n as i64)))
}

/// K'_{1,n} (centre 0, x_i = i, y_i = n + i): floor(n/2) blocks y_i x_i left of
/// the centre and the rest as x_i y_i on the right, over all n! slot assignments.
pub fn subdivided_star_strategy(n: usize) -> Result<Strategy> {
    if n < 2 {
        return Err(Error::ShapeMismatch(format!("subdivided star strategy needs n >= 2, got {n}")));
    }
    if n > STRATEGY_CAP {
        return Err(Error::cap("subdivided star strategy, n", n, STRATEGY_CAP, ""));
    }
    let left = n / 2;
    let mut idx: Vec<usize> = (1..=n).collect();
    let mut orders = Vec::new();
    loop {
        let mut perm = Vec::with_capacity(2 * n + 1);
        for &i in &idx[..left] {
            perm.push(n + i);
            perm.push(i);
        }
        perm.push(0);
        for &i in &idx[left..] {
            perm.push(i);
            perm.push(n + i);
        }
        orders.push(Ordering::new_unchecked(Mode::Linear, perm));
        if !crate::enumerate::next_permutation(&mut idx) {
            break;
        }
    }
    let m = n.div_ceil(2) as i64;
    Ok(Strategy::uniform_over(Mode::Linear, 2 * n + 1, orders, None, "balanced leg split of a subdivided star")?
        .with_guarantee(rat(3 * m - 1, 4 * m - 2)))
}

/// Uniform over the images of `witness` under all automorphisms of `g`.
pub fn orbit_strategy(g: &Graph, witness: &Ordering) -> Result<Strategy> {
    if witness.len() != g.n() {
        return Err(Error::InvalidOrdering("witness does not cover V(G)".into()));
    }
    let aut = automorphisms(g)?;
    let elems = aut
        .elements()
        .ok_or_else(|| Error::InvalidArgument(format!("automorphism group of order {} is too large to list", aut.order)))?;
    let orders = elems.iter().map(|a| witness.relabel(a)).collect();
    Strategy::uniform_over(witness.mode(), g.n(), orders, None, "automorphism images of one ordering")
}

/// A probability distribution over nonincident pairs.
#[derive(Clone, Debug, Serialize)]
pub struct PairStrategy {
    #[serde(serialize_with = "ser_weighted")]
    pub pairs: Vec<(EdgePair, Rational)>,
    pub provenance: String,
}

/// Best response of the ordering player to a pair strategy.
#[derive(Clone, Debug, Serialize)]
pub struct PairBound {
    /// Largest separation probability any ordering achieves; an upper bound on the game value.
    #[serde(serialize_with = "ser_rational")]
    pub max_probability: Rational,
    pub witness: Ordering,
    pub proven_optimal: bool,
    /// `1 / max_probability`, a lower bound on the fractional separation dimension.
    #[serde(serialize_with = "ser_opt_rational")]
    pub bound: Option<Rational>,
}

impl PairStrategy {
    pub fn new(pairs: Vec<(EdgePair, Rational)>, provenance: impl Into<String>) -> Result<Self> {
        if pairs.is_empty() || pairs.iter().any(|(_, w)| !w.is_positive()) {
            return Err(Error::InvalidArgument("pair strategy needs positive weights".into()));
        }
        let total: Rational = pairs.iter().map(|(_, w)| w).sum();
        if total != Rational::one() {
            return Err(Error::InvalidArgument(format!("pair weights sum to {total}")));
        }
        Ok(PairStrategy {
            pairs,
            provenance: provenance.into(),
        })
    }

    pub fn uniform(pairs: Vec<EdgePair>, provenance: impl Into<String>) -> Result<Self> {
        let k = pairs.len() as i64;
        if k == 0 {
            return Err(Error::InvalidArgument("pair strategy needs at least one pair".into()));
        }
        PairStrategy::new(pairs.into_iter().map(|p| (p, rat(1, k))).collect(), provenance)
    }

    /// Exact best response over all orderings (or by branch and bound).
    pub fn best_response(&self, g: &Graph, mode: Mode, method: &SearchMethod) -> Result<PairBound> {
        let all = g.nonincident_pairs();
        let index: HashMap<EdgePair, usize> = all.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut weights = vec![Rational::zero(); all.len()];
        for (p, w) in &self.pairs {
            let i = *index
                .get(p)
                .ok_or_else(|| Error::InvalidArgument(format!("{p} is not a nonincident pair of the graph")))?;
            weights[i] += w;
        }
        let classes = ClassPartition::singletons(all.len());
        let r = max_separation(g, mode, &classes, &weights, method)?;
        let bound = if r.value.is_positive() {
            Some(Rational::one() / &r.value)
        } else {
            None
        };
        Ok(PairBound {
            max_probability: r.value,
            witness: r.witness,
            proven_optimal: r.proven_optimal,
            bound,
        })
    }
}

/// The three pairs of the first K4, equally likely.
pub fn k4_pair_strategy(g: &Graph) -> Result<PairStrategy> {
    let [a, b, c, d] = g.find_k4().ok_or(Error::NoK4)?;
    PairStrategy::uniform(
        vec![
            EdgePair::new((a, b), (c, d)),
            EdgePair::new((a, c), (b, d)),
            EdgePair::new((a, d), (b, c)),
        ],
        "the three pairs of one K4",
    )
}

/// Uniform over the pairs of one class.
pub fn class_pair_strategy(pairs: &[EdgePair], classes: &ClassPartition, class: usize) -> Result<PairStrategy> {
    if class >= classes.num_classes() {
        return Err(Error::InvalidArgument(format!("no class {class}")));
    }
    PairStrategy::uniform(classes.members(class).into_iter().map(|i| pairs[i]).collect(), format!("uniform on class {class}"))
}

/// The n pairs {v_{i-1}v_i, v_{i+1}v_{i+2}} of C_n.
pub fn cycle_pair_strategy(n: usize) -> Result<PairStrategy> {
    if n < 4 {
        return Err(Error::ShapeMismatch(format!("cycle pair strategy needs n >= 4, got {n}")));
    }
    let mut pairs: Vec<EdgePair> = (0..n)
        .map(|i| EdgePair::new(((i + n - 1) % n, i), ((i + 1) % n, (i + 2) % n)))
        .collect();
    pairs.sort();
    pairs.dedup();
    PairStrategy::uniform(pairs, "consecutive pairs around C_n")
}

/// Uniform over pairs whose edges are joined by an edge of `g`.
pub fn joined_pair_strategy(g: &Graph) -> Result<PairStrategy> {
    let pairs: Vec<EdgePair> = g
        .nonincident_pairs()
        .into_iter()
        .filter(|p| crate::symmetry::joined_by_edge(g, p))
        .collect();
    PairStrategy::uniform(pairs, "pairs joined by an edge")
}

/// Default best-response method: enumeration within caps, else branch and bound.
pub fn default_method(g: &Graph, mode: Mode, caps: &Caps, budget: std::time::Duration) -> SearchMethod {
    if g.n() <= caps.for_mode(mode) {
        SearchMethod::Exhaustive(*caps)
    } else {
        SearchMethod::branch_and_bound(budget)
    }
}

/// One row of the strategy suite.
#[derive(Clone, Debug, Serialize)]
pub struct StrategyCheck {
    pub name: String,
    pub mode: Mode,
    #[serde(serialize_with = "ser_opt_rational")]
    pub min: Option<Rational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub guarantee: Option<Rational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub bound: Option<Rational>,
    pub ok: bool,
}

fn check_row(name: String, s: &Strategy, g: &Graph) -> Result<StrategyCheck> {
    let (ev, ok) = s.verify(g)?;
    Ok(StrategyCheck {
        name,
        mode: s.mode,
        min: ev.min,
        guarantee: s.guarantee.clone(),
        bound: ev.bound,
        ok: ok && s.guarantee.is_some(),
    })
}

fn pair_row(name: String, ps: &PairStrategy, g: &Graph, mode: Mode, want: Rational) -> Result<StrategyCheck> {
    let r = ps.best_response(g, mode, &SearchMethod::Exhaustive(Caps::default()))?;
    Ok(StrategyCheck {
        name,
        mode,
        min: None,
        ok: r.proven_optimal && r.max_probability <= want,
        guarantee: Some(want),
        bound: r.bound,
    })
}

/// Every constructive strategy checked exactly against its stated guarantee.
/// Pair-player rows report the best response, which must not exceed the claim.
pub fn strategy_suite() -> Result<Vec<StrategyCheck>> {
    let mut rows = Vec::new();
    let shaped = |s: &Strategy| -> Result<Graph> {
        let sizes = s.shuffle_parts.as_ref().expect("multipartite strategy").iter().map(Vec::len).collect();
        family_graph(FamilySpec::Multipartite(sizes))
    };
    for n in 4..=8 {
        let s = cycle_rotation_strategy(n)?;
        rows.push(check_row(format!("cycle rotations C_{n}"), &s, &family_graph(FamilySpec::Cycle(n))?)?);
        let ps = cycle_pair_strategy(n)?;
        rows.push(pair_row(format!("cycle pairs C_{n}"), &ps, &family_graph(FamilySpec::Cycle(n))?, Mode::Linear, rat(n as i64 - 2, n as i64))?);
    }
    let k4 = family_graph(FamilySpec::Complete(4))?;
    for mode in [Mode::Linear, Mode::Circular] {
        rows.push(check_row("uniform K_4".into(), &uniform_strategy(&k4, mode, None)?, &k4)?);
        let want = if mode == Mode::Linear { rat(1, 3) } else { rat(2, 3) };
        rows.push(pair_row("K4 triple".into(), &k4_pair_strategy(&k4)?, &k4, mode, want)?);
        for spec in [FamilySpec::Cycle(5), FamilySpec::complete_bipartite(2, 3), FamilySpec::complete_tripartite(2, 2, 2)] {
            let g = family_graph(spec.clone())?;
            rows.push(check_row(format!("K4-free {spec}"), &k4free_strategy(&g, mode, None)?, &g)?);
        }
    }
    for m in 2..=6 {
        let s = bipartite_interleaved_strategy(BipartiteShape::Balanced(m))?;
        rows.push(check_row(format!("interleaved K_{{{m},{m}}}"), &s, &shaped(&s)?)?);
    }
    for (m, q) in [(2, 1), (3, 1), (1, 2), (2, 2), (2, 3), (3, 2)] {
        let s = bipartite_interleaved_strategy(BipartiteShape::Blocks { m, q })?;
        rows.push(check_row(format!("blocks K_{{{},{}}}", m + 1, q * m), &s, &shaped(&s)?)?);
    }
    for m in 2..=3 {
        let s = tripartite_block_strategy(TripartiteShape::Balanced(m))?;
        rows.push(check_row(format!("triple blocks K_{{{m},{m},{m}}}"), &s, &shaped(&s)?)?);
        let s = tripartite_block_strategy(TripartiteShape::PlusOne(m))?;
        rows.push(check_row(format!("triple blocks K_{{{},{m},{m}}}", m + 1), &s, &shaped(&s)?)?);
    }
    for m in 2..=5 {
        let s = tripartite_block_strategy(TripartiteShape::OneMM { m, k: None })?;
        rows.push(check_row(format!("paired YZ K_{{1,{m},{m}}}"), &s, &shaped(&s)?)?);
    }
    for n in 2..=5 {
        let s = subdivided_star_strategy(n)?;
        rows.push(check_row(format!("leg split K'_{{1,{n}}}"), &s, &family_graph(FamilySpec::SubdividedStar(n))?)?);
    }
    for (m, q) in [(2, 1), (3, 1), (4, 1), (2, 2), (2, 3), (3, 2)] {
        let s = circular_spaced_strategy(m, q)?;
        rows.push(check_row(format!("spaced K_{{{m},{}}}", q * m), &s, &shaped(&s)?)?);
    }
    Ok(rows)
}

/// Floating value of a rational, for reporting.
pub fn approx(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;
    use crate::rational::int;

    fn g(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap()
    }

    #[test]
    fn uniform_on_four_vertices() {
        let k4 = g(FamilySpec::Complete(4));
        let ev = uniform_strategy(&k4, Mode::Linear, None).unwrap().evaluate(&k4).unwrap();
        assert!(ev.per_pair.iter().all(|(_, p)| *p == rat(1, 3)));
        let ev = uniform_strategy(&k4, Mode::Circular, None).unwrap().evaluate(&k4).unwrap();
        assert!(ev.per_pair.iter().all(|(_, p)| *p == rat(2, 3)));
        let c5 = g(FamilySpec::Cycle(5));
        let (ev, ok) = uniform_strategy(&c5, Mode::Linear, None).unwrap().verify(&c5).unwrap();
        assert!(ok);
        assert_eq!(ev.min, Some(rat(1, 3)));
    }

    #[test]
    fn k4free_block_separations() {
        // pairs {ab,cd} and {ad,bc} each separated 12 times out of 24 (linear)
        let count = |mode: Mode, e: [(usize, usize); 2]| -> u64 {
            k4free_block(mode)
                .iter()
                .filter(|(p, _)| {
                    let mut pos = [0; 4];
                    for (i, &v) in p.iter().enumerate() {
                        pos[v] = i;
                    }
                    separated_at(mode, pos[e[0].0], pos[e[0].1], pos[e[1].0], pos[e[1].1])
                })
                .map(|(_, c)| c)
                .sum()
        };
        let total: u64 = k4free_block(Mode::Linear).iter().map(|x| x.1).sum();
        assert_eq!(total, 24);
        assert_eq!(count(Mode::Linear, [(0, 1), (2, 3)]), 12);
        assert_eq!(count(Mode::Linear, [(0, 3), (1, 2)]), 12);
        let total: u64 = k4free_block(Mode::Circular).iter().map(|x| x.1).sum();
        assert_eq!(total, 24);
        assert!(count(Mode::Circular, [(0, 1), (2, 3)]) > 16);
        assert!(count(Mode::Circular, [(0, 3), (1, 2)]) > 16);
    }

    #[test]
    fn k4free_rejects_k4() {
        let k5 = g(FamilySpec::Complete(5));
        assert!(matches!(k4free_strategy(&k5, Mode::Linear, None), Err(Error::ContainsK4([0, 1, 2, 3]))));
    }

    #[test]
    fn structured_fractions() {
        let s = bipartite_interleaved_strategy(BipartiteShape::Balanced(3)).unwrap();
        let k33 = g(FamilySpec::complete_bipartite(3, 3));
        let (ev, ok) = s.verify(&k33).unwrap();
        assert!(ok);
        assert_eq!(ev.min, Some(rat(4, 9)));
        assert_eq!(ev.bound, Some(rat(9, 4)));

        let s = bipartite_interleaved_strategy(BipartiteShape::Blocks { m: 2, q: 2 }).unwrap();
        let k34 = g(FamilySpec::complete_bipartite(3, 4));
        assert_eq!(s.evaluate(&k34).unwrap().min, Some(rat(4, 9)));

        let s = circular_spaced_strategy(3, 1).unwrap();
        assert_eq!(s.evaluate(&k33).unwrap().min, Some(rat(5, 6)));
    }

    #[test]
    fn cycle_and_star() {
        for n in 4..=8 {
            let c = g(FamilySpec::Cycle(n));
            let (ev, ok) = cycle_rotation_strategy(n).unwrap().verify(&c).unwrap();
            assert!(ok);
            assert_eq!(ev.min, Some(rat(n as i64 - 2, n as i64)));
            let pb = cycle_pair_strategy(n)
                .unwrap()
                .best_response(&c, Mode::Linear, &SearchMethod::Exhaustive(Caps::default()))
                .unwrap();
            assert_eq!(pb.max_probability, rat(n as i64 - 2, n as i64));
        }
        let st = g(FamilySpec::SubdividedStar(3));
        let (ev, ok) = subdivided_star_strategy(3).unwrap().verify(&st).unwrap();
        assert!(ok);
        assert_eq!(ev.min, Some(rat(5, 6)));
    }

    #[test]
    fn k4_pair_player() {
        let k4 = g(FamilySpec::Complete(4));
        let pb = k4_pair_strategy(&k4)
            .unwrap()
            .best_response(&k4, Mode::Linear, &SearchMethod::Exhaustive(Caps::default()))
            .unwrap();
        assert_eq!(pb.max_probability, rat(1, 3));
        assert_eq!(pb.bound, Some(int(3)));
        assert!(matches!(k4_pair_strategy(&g(FamilySpec::Cycle(5))), Err(Error::NoK4)));
    }

    #[test]
    fn strategy_suite_passes() {
        for row in strategy_suite().unwrap() {
            assert!(row.ok, "{} {:?}: min {:?} guarantee {:?}", row.name, row.mode, row.min, row.guarantee);
        }
    }
}
