//! Exhaustive enumeration of orderings and aggregation of payoff vectors.
//!
//! Work is split by permutation prefix (first two entries) and run on the
//! rayon pool; per-prefix results are merged in prefix order, so output is
//! identical from run to run regardless of thread count.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ordering::{Mode, Ordering};
use crate::separation::{pareto_filter, ClassPartition, PairTable, PayoffVector};

/// Enumeration limits on the vertex count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub linear: usize,
    pub circular: usize,
    pub patterns: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            linear: 10,
            circular: 10,
            patterns: 14,
        }
    }
}

impl Caps {
    pub fn for_mode(&self, mode: Mode) -> usize {
        match mode {
            Mode::Linear => self.linear,
            Mode::Circular => self.circular,
        }
    }

    pub fn check(&self, what: &str, n: usize, mode: Mode) -> Result<()> {
        let cap = self.for_mode(mode);
        if n > cap {
            return Err(Error::cap(
                format!("{mode} enumeration for {what}"),
                n,
                cap,
                "raise the cap or use a stronger reduction (orbits, patterns)",
            ));
        }
        Ok(())
    }
}

/// In-place lexicographic successor; false when `v` was the last permutation.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn prefixes(n: usize, mode: Mode) -> Vec<Vec<u8>> {
    match mode {
        Mode::Linear => {
            if n <= 2 {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for a in 0..n as u8 {
                for b in 0..n as u8 {
                    if a != b {
                        out.push(vec![a, b]);
                    }
                }
            }
            out
        }
        Mode::Circular => {
            if n <= 3 {
                return vec![Vec::new()];
            }
            (1..n as u8).map(|b| vec![0, b]).collect()
        }
    }
}

/// Whether `perm` is the representative kept from its reversal class
/// (linear) or its rotation/reflection class (circular).
#[inline]
fn is_representative(mode: Mode, perm: &[u8]) -> bool {
    let n = perm.len();
    match mode {
        Mode::Linear => n < 2 || perm[0] < perm[n - 1],
        Mode::Circular => n < 3 || (perm[0] == 0 && perm[1] < perm[n - 1]),
    }
}

fn run_prefix<F: FnMut(&[u8])>(n: usize, mode: Mode, prefix: &[u8], dedupe: bool, f: &mut F) {
    if mode == Mode::Circular && n <= 3 {
        let perm: Vec<u8> = (0..n as u8).collect();
        f(&perm);
        return;
    }
    let mut buf: Vec<u8> = prefix.to_vec();
    buf.extend((0..n as u8).filter(|v| !prefix.contains(v)));
    let k = prefix.len();
    loop {
        if !dedupe || is_representative(mode, &buf) {
            f(&buf);
        }
        if !next_permutation(&mut buf[k..]) {
            break;
        }
    }
}

/// Visits every ordering of `0..n` in lexicographic order. With `dedupe`,
/// only one representative per reversal class (linear) is visited; circular
/// mode always visits canonical representatives only.
pub fn for_each_ordering<F: FnMut(&[u8])>(n: usize, mode: Mode, dedupe: bool, mut f: F) {
    let dedupe = dedupe || mode == Mode::Circular;
    for p in prefixes(n, mode) {
        run_prefix(n, mode, &p, dedupe, &mut f);
    }
}

/// Parallel fold over orderings with a deterministic, prefix-ordered merge.
pub fn fold_orderings<T, I, S, M>(n: usize, mode: Mode, dedupe: bool, init: I, step: S, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync,
    S: Fn(&mut T, &[u8]) + Sync,
    M: Fn(T, T) -> T,
{
    let dedupe = dedupe || mode == Mode::Circular;
    let parts: Vec<T> = prefixes(n, mode)
        .par_iter()
        .map(|p| {
            let mut acc = init();
            run_prefix(n, mode, p, dedupe, &mut |perm| step(&mut acc, perm));
            acc
        })
        .collect();
    let mut it = parts.into_iter();
    let first = it.next().unwrap_or_else(&init);
    it.fold(first, merge)
}

/// First representative ordering (lexicographic) satisfying `pred`.
pub fn find_ordering<F: FnMut(&[u8]) -> bool>(n: usize, mode: Mode, mut pred: F) -> Option<Vec<u8>> {
    if mode == Mode::Circular && n <= 3 {
        let perm: Vec<u8> = (0..n as u8).collect();
        return if pred(&perm) { Some(perm) } else { None };
    }
    for prefix in prefixes(n, mode) {
        let mut buf: Vec<u8> = prefix.clone();
        buf.extend((0..n as u8).filter(|v| !prefix.contains(v)));
        let k = prefix.len();
        loop {
            if is_representative(mode, &buf) && pred(&buf) {
                return Some(buf);
            }
            if !next_permutation(&mut buf[k..]) {
                break;
            }
        }
    }
    None
}

/// Number of orderings visited by `for_each_ordering` with dedupe on.
pub fn representative_count(n: usize, mode: Mode) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    match mode {
        Mode::Linear => {
            if n < 2 {
                1
            } else {
                fact(n) / 2
            }
        }
        Mode::Circular => {
            if n < 3 {
                1
            } else {
                fact(n - 1) / 2
            }
        }
    }
}

/// One distinct payoff vector with the lexicographically first ordering achieving it.
#[derive(Clone, Debug, Serialize)]
pub struct PayoffRow {
    pub payoff: PayoffVector,
    pub witness: Ordering,
}

/// Distinct payoff vectors achieved by orderings of a graph.
#[derive(Clone, Debug, Serialize)]
pub struct PayoffSet {
    pub mode: Mode,
    pub rows: Vec<PayoffRow>,
    pub class_sizes: Vec<usize>,
    pub examined: u64,
    pub pareto: bool,
}

struct Acc {
    map: HashMap<Vec<u32>, Vec<u8>>,
    counts: Vec<u32>,
    pos: Vec<u8>,
    examined: u64,
}

fn merge_maps(mut a: Acc, b: Acc, pareto: bool) -> Acc {
    for (k, w) in b.map {
        a.map.entry(k).or_insert(w);
    }
    a.examined += b.examined;
    if pareto {
        a.map = prune(std::mem::take(&mut a.map));
    }
    a
}

fn prune(map: HashMap<Vec<u32>, Vec<u8>>) -> HashMap<Vec<u32>, Vec<u8>> {
    let rows: Vec<(PayoffVector, Vec<u8>)> = map
        .into_iter()
        .map(|(k, w)| (PayoffVector { counts: k }, w))
        .collect();
    pareto_filter(rows)
        .into_iter()
        .map(|(k, w)| (k.counts, w))
        .collect()
}

fn finish(mode: Mode, acc: Acc, class_sizes: Vec<usize>, pareto: bool) -> PayoffSet {
    let mut rows: Vec<(PayoffVector, Vec<u8>)> = acc
        .map
        .into_iter()
        .map(|(k, w)| (PayoffVector { counts: k }, w))
        .collect();
    if pareto {
        rows = pareto_filter(rows);
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    PayoffSet {
        mode,
        rows: rows
            .into_iter()
            .map(|(payoff, w)| PayoffRow {
                payoff,
                witness: Ordering::new_unchecked(mode, w.into_iter().map(usize::from).collect()),
            })
            .collect(),
        class_sizes,
        examined: acc.examined,
        pareto,
    }
}

/// Distinct (optionally Pareto-maximal) payoff vectors over all orderings of `g`.
pub fn enumerate_payoffs(
    g: &Graph,
    mode: Mode,
    classes: &ClassPartition,
    caps: &Caps,
    pareto: bool,
) -> Result<PayoffSet> {
    caps.check("payoff enumeration", g.n(), mode)?;
    let table = PairTable::for_graph(g, Some(classes.clone()))?;
    let n = g.n();
    let k = classes.num_classes();
    let init = || Acc {
        map: HashMap::new(),
        counts: vec![0; k],
        pos: vec![0; n],
        examined: 0,
    };
    let step = |acc: &mut Acc, perm: &[u8]| {
        for (i, &v) in perm.iter().enumerate() {
            acc.pos[v as usize] = i as u8;
        }
        table.payoff_from_positions(mode, &acc.pos, &mut acc.counts);
        acc.examined += 1;
        if !acc.map.contains_key(&acc.counts) {
            acc.map.insert(acc.counts.clone(), perm.to_vec());
            if pareto && acc.map.len() > 4096 {
                acc.map = prune(std::mem::take(&mut acc.map));
            }
        }
    };
    let acc = fold_orderings(n, mode, true, init, step, |a, b| merge_maps(a, b, pareto));
    Ok(finish(mode, acc, classes.sizes().to_vec(), pareto))
}

/// Payoff vectors over an explicit candidate list (for pattern reductions).
pub fn payoffs_of_candidates(
    table: &PairTable,
    mode: Mode,
    candidates: &[Vec<usize>],
    pareto: bool,
) -> PayoffSet {
    let n = table.n();
    let k = table.classes().num_classes();
    let init = || Acc {
        map: HashMap::new(),
        counts: vec![0; k],
        pos: vec![0; n],
        examined: 0,
    };
    let parts: Vec<Acc> = candidates
        .par_chunks(256)
        .map(|chunk| {
            let mut acc = init();
            for perm in chunk {
                for (i, &v) in perm.iter().enumerate() {
                    acc.pos[v] = i as u8;
                }
                table.payoff_from_positions(mode, &acc.pos, &mut acc.counts);
                acc.examined += 1;
                if !acc.map.contains_key(&acc.counts) {
                    let canon = Ordering::new_unchecked(mode, perm.clone());
                    let w: Vec<u8> = canon.perm().iter().map(|&v| v as u8).collect();
                    acc.map.insert(acc.counts.clone(), w);
                }
            }
            if pareto {
                acc.map = prune(std::mem::take(&mut acc.map));
            }
            acc
        })
        .collect();
    let mut it = parts.into_iter();
    let first = it.next().unwrap_or_else(init);
    let acc = it.fold(first, |a, b| merge_maps(a, b, pareto));
    finish(mode, acc, table.classes().sizes().to_vec(), pareto)
}
