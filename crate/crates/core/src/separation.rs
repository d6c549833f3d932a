//! Separation predicates and per-class payoff counting.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgePair, Graph};
use crate::ordering::{Mode, Ordering};

/// Linear separation: both endpoints of one edge precede both of the other.
#[inline]
pub fn separated_linear(a: usize, b: usize, c: usize, d: usize) -> bool {
    a.max(b) < c.min(d) || c.max(d) < a.min(b)
}

/// Circular separation: the endpoints do not alternate around the circle.
#[inline]
pub fn separated_circular(a: usize, b: usize, c: usize, d: usize) -> bool {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let c_in = lo < c && c < hi;
    let d_in = lo < d && d < hi;
    c_in == d_in
}

/// Separation test on the positions of the four endpoints `(a, b)` and `(c, d)`.
#[inline]
pub fn separated_at(mode: Mode, a: usize, b: usize, c: usize, d: usize) -> bool {
    match mode {
        Mode::Linear => separated_linear(a, b, c, d),
        Mode::Circular => separated_circular(a, b, c, d),
    }
}

/// Whether `o` separates `p`.
pub fn separates(o: &Ordering, p: &EdgePair) -> bool {
    let pos = o.positions();
    separates_with_positions(o.mode(), &pos, p)
}

pub fn separates_with_positions(mode: Mode, pos: &[usize], p: &EdgePair) -> bool {
    separated_at(
        mode,
        pos[p.e1.0],
        pos[p.e1.1],
        pos[p.e2.0],
        pos[p.e2.1],
    )
}

/// A partition of a pair list into classes (singletons, one class, or orbits).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassPartition {
    class_of: Vec<usize>,
    sizes: Vec<usize>,
}

impl ClassPartition {
    pub fn singletons(len: usize) -> Self {
        ClassPartition {
            class_of: (0..len).collect(),
            sizes: vec![1; len],
        }
    }

    pub fn single(len: usize) -> Self {
        ClassPartition {
            class_of: vec![0; len],
            sizes: if len == 0 { Vec::new() } else { vec![len] },
        }
    }

    /// Classes from per-pair labels; labels must be `0..k` with every label used.
    pub fn from_labels(class_of: Vec<usize>) -> Result<Self> {
        let k = class_of.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut sizes = vec![0; k];
        for &c in &class_of {
            sizes[c] += 1;
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidArgument("class labels are not contiguous".into()));
        }
        Ok(ClassPartition { class_of, sizes })
    }

    pub fn class_of(&self, pair_index: usize) -> usize {
        self.class_of[pair_index]
    }

    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn num_classes(&self) -> usize {
        self.sizes.len()
    }

    pub fn num_pairs(&self) -> usize {
        self.class_of.len()
    }

    pub fn members(&self, class: usize) -> Vec<usize> {
        (0..self.class_of.len())
            .filter(|&i| self.class_of[i] == class)
            .collect()
    }
}

/// Per-class counts of separated pairs for one ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PayoffVector {
    pub counts: Vec<u32>,
}

impl PayoffVector {
    /// Coordinatewise `self <= other`.
    pub fn dominated_by(&self, other: &PayoffVector) -> bool {
        self.counts
            .iter()
            .zip(&other.counts)
            .all(|(a, b)| a <= b)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }
}

/// Pairs flattened for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct PairTable {
    pairs: Vec<EdgePair>,
    quads: Vec<[u8; 4]>,
    classes: ClassPartition,
    n: usize,
}

impl PairTable {
    pub fn new(n: usize, pairs: Vec<EdgePair>, classes: ClassPartition) -> Result<Self> {
        if classes.num_pairs() != pairs.len() {
            return Err(Error::InvalidArgument(format!(
                "class partition covers {} pairs, expected {}",
                classes.num_pairs(),
                pairs.len()
            )));
        }
        if n > u8::MAX as usize {
            return Err(Error::cap("pair table", n, u8::MAX as usize, ""));
        }
        let quads = pairs
            .iter()
            .map(|p| {
                [
                    p.e1.0 as u8,
                    p.e1.1 as u8,
                    p.e2.0 as u8,
                    p.e2.1 as u8,
                ]
            })
            .collect();
        Ok(PairTable {
            pairs,
            quads,
            classes,
            n,
        })
    }

    pub fn for_graph(g: &Graph, classes: Option<ClassPartition>) -> Result<Self> {
        let pairs = g.nonincident_pairs();
        let classes = classes.unwrap_or_else(|| ClassPartition::singletons(pairs.len()));
        PairTable::new(g.n(), pairs, classes)
    }

    pub fn pairs(&self) -> &[EdgePair] {
        &self.pairs
    }

    pub fn classes(&self) -> &ClassPartition {
        &self.classes
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Counts per class given `pos[v]` = position of vertex v.
    pub fn payoff_from_positions(&self, mode: Mode, pos: &[u8], out: &mut [u32]) {
        out.iter_mut().for_each(|c| *c = 0);
        let labels = self.classes.labels();
        for (q, &cls) in self.quads.iter().zip(labels) {
            let (a, b, c, d) = (
                pos[q[0] as usize] as usize,
                pos[q[1] as usize] as usize,
                pos[q[2] as usize] as usize,
                pos[q[3] as usize] as usize,
            );
            if separated_at(mode, a, b, c, d) {
                out[cls] += 1;
            }
        }
    }

    /// Separation indicator of every pair.
    pub fn separated_mask(&self, mode: Mode, pos: &[u8]) -> Vec<bool> {
        self.quads
            .iter()
            .map(|q| {
                separated_at(
                    mode,
                    pos[q[0] as usize] as usize,
                    pos[q[1] as usize] as usize,
                    pos[q[2] as usize] as usize,
                    pos[q[3] as usize] as usize,
                )
            })
            .collect()
    }

    pub fn payoff(&self, o: &Ordering) -> PayoffVector {
        let pos = positions_u8(o.perm());
        let mut counts = vec![0; self.classes.num_classes()];
        self.payoff_from_positions(o.mode(), &pos, &mut counts);
        PayoffVector { counts }
    }
}

pub(crate) fn positions_u8(perm: &[usize]) -> Vec<u8> {
    let mut pos = vec![0u8; perm.len()];
    for (i, &v) in perm.iter().enumerate() {
        pos[v] = i as u8;
    }
    pos
}

/// Per-class separated counts of `pairs` under `o`.
pub fn count_separated(
    o: &Ordering,
    pairs: &[EdgePair],
    classes: &ClassPartition,
) -> Result<PayoffVector> {
    if classes.num_pairs() != pairs.len() {
        return Err(Error::InvalidArgument("classes must partition the pair list".into()));
    }
    let pos = o.positions();
    for p in pairs {
        if p.vertices().iter().any(|&v| v >= pos.len()) {
            return Err(Error::InvalidOrdering(format!("{p} not covered by {o}")));
        }
    }
    let mut counts = vec![0u32; classes.num_classes()];
    for (i, p) in pairs.iter().enumerate() {
        if separates_with_positions(o.mode(), &pos, p) {
            counts[classes.class_of(i)] += 1;
        }
    }
    Ok(PayoffVector { counts })
}

/// Removes vectors dominated coordinatewise by another; input must be deduplicated.
pub fn pareto_filter<T>(rows: Vec<(PayoffVector, T)>) -> Vec<(PayoffVector, T)> {
    let mut rows = rows;
    // Larger totals first, so a dominator is always seen before what it dominates.
    rows.sort_by(|a, b| b.0.total().cmp(&a.0.total()).then_with(|| b.0.cmp(&a.0)));
    let mut kept: Vec<(PayoffVector, T)> = Vec::new();
    for (v, w) in rows {
        if kept.iter().any(|(k, _)| v.dominated_by(k)) {
            continue;
        }
        kept.push((v, w));
    }
    kept.sort_by(|a, b| a.0.cmp(&b.0));
    kept
}
