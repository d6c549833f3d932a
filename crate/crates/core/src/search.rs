//! Searches over orderings: weighted max separation, separating families,
//! outerplanarity via a single circular ordering, and integer separation dimension.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::enumerate::{enumerate_payoffs, find_ordering, Caps};
use crate::error::{Error, Result};
use crate::graph::{EdgePair, Graph};
use crate::ordering::{Mode, Ordering};
use crate::rational::{common_denominator, Rational};
use crate::separation::{separated_at, ClassPartition, PairTable};

/// How `max_separation` explores orderings.
#[derive(Clone, Debug)]
pub enum SearchMethod {
    /// Full enumeration, subject to the caps.
    Exhaustive(Caps),
    /// Depth-first branch and bound with a wall-clock budget.
    BranchAndBound {
        budget: Duration,
        incumbent: Option<Ordering>,
        /// Vertices allowed in the first position (e.g. orbit representatives).
        first_vertices: Option<Vec<usize>>,
    },
}

impl SearchMethod {
    pub fn branch_and_bound(budget: Duration) -> Self {
        SearchMethod::BranchAndBound {
            budget,
            incumbent: None,
            first_vertices: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MaxSeparation {
    /// Best weighted count found.
    #[serde(serialize_with = "crate::rational::ser_rational")]
    pub value: Rational,
    pub witness: Ordering,
    /// False when a branch-and-bound budget ran out; `value` is then a lower bound.
    pub proven_optimal: bool,
    pub nodes: u64,
}

fn scaled_weights(classes: &ClassPartition, weights: &[Rational]) -> Result<(Vec<u64>, BigInt)> {
    if weights.len() != classes.num_classes() {
        return Err(Error::InvalidArgument(format!(
            "{} weights for {} classes",
            weights.len(),
            classes.num_classes()
        )));
    }
    if weights.iter().any(|w| w.is_negative()) {
        return Err(Error::InvalidArgument("objective weights must be nonnegative".into()));
    }
    let den = common_denominator(weights);
    let ints = weights
        .iter()
        .map(|w| {
            (w * Rational::from_integer(den.clone()))
                .to_integer()
                .to_u64()
                .ok_or_else(|| Error::InvalidArgument("objective weight too large".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((ints, den))
}

/// Maximizes `sum_c weights[c] * (pairs of class c separated)` over orderings.
pub fn max_separation(
    g: &Graph,
    mode: Mode,
    classes: &ClassPartition,
    weights: &[Rational],
    method: &SearchMethod,
) -> Result<MaxSeparation> {
    let (ints, den) = scaled_weights(classes, weights)?;
    let to_value = |score: u64| Rational::new(BigInt::from(score), den.clone());
    match method {
        SearchMethod::Exhaustive(caps) => {
            let set = enumerate_payoffs(g, mode, classes, caps, true)?;
            let mut best: Option<(u64, &Ordering)> = None;
            for row in &set.rows {
                let score: u64 = row
                    .payoff
                    .counts
                    .iter()
                    .zip(&ints)
                    .map(|(&c, &w)| c as u64 * w)
                    .sum();
                let better = match best {
                    None => true,
                    Some((b, wit)) => score > b || (score == b && row.witness < *wit),
                };
                if better {
                    best = Some((score, &row.witness));
                }
            }
            let (score, witness) = best.expect("at least one ordering");
            Ok(MaxSeparation {
                value: to_value(score),
                witness: witness.clone(),
                proven_optimal: true,
                nodes: set.examined,
            })
        }
        SearchMethod::BranchAndBound {
            budget,
            incumbent,
            first_vertices,
        } => {
            let table = PairTable::for_graph(g, Some(classes.clone()))?;
            let pair_w: Vec<u64> = (0..table.pairs().len())
                .map(|i| ints[classes.class_of(i)])
                .collect();
            let mut bb = BranchAndBound::new(g.n(), mode, table.pairs(), pair_w);
            if let Some(inc) = incumbent {
                if inc.len() != g.n() {
                    return Err(Error::InvalidOrdering("incumbent has wrong length".into()));
                }
                bb.best = bb.score_of(inc.perm());
                bb.best_perm = inc.perm().to_vec();
            }
            let firsts: Vec<usize> = match (mode, first_vertices) {
                (Mode::Circular, _) => vec![0],
                (Mode::Linear, Some(f)) => f.clone(),
                (Mode::Linear, None) => (0..g.n()).collect(),
            };
            let deadline = Instant::now() + *budget;
            let complete = bb.run(&firsts, deadline);
            Ok(MaxSeparation {
                value: to_value(bb.best),
                witness: Ordering::new(mode, bb.best_perm.clone())?,
                proven_optimal: complete,
                nodes: bb.nodes,
            })
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Open,
    Yes,
    No,
}

struct BranchAndBound {
    n: usize,
    mode: Mode,
    pairs: Vec<[usize; 4]>,
    weight: Vec<u64>,
    incident: Vec<Vec<usize>>,
    status: Vec<Status>,
    placed: Vec<bool>,
    pos: Vec<usize>,
    perm: Vec<usize>,
    score: u64,
    open_weight: u64,
    best: u64,
    best_perm: Vec<usize>,
    nodes: u64,
    timed_out: bool,
}

impl BranchAndBound {
    fn new(n: usize, mode: Mode, pairs: &[EdgePair], weight: Vec<u64>) -> Self {
        let quads: Vec<[usize; 4]> = pairs.iter().map(|p| p.vertices()).collect();
        let mut incident = vec![Vec::new(); n];
        for (i, q) in quads.iter().enumerate() {
            for &v in q {
                incident[v].push(i);
            }
        }
        let open_weight = weight.iter().sum();
        BranchAndBound {
            n,
            mode,
            status: vec![Status::Open; quads.len()],
            pairs: quads,
            weight,
            incident,
            placed: vec![false; n],
            pos: vec![0; n],
            perm: Vec::with_capacity(n),
            score: 0,
            open_weight,
            best: 0,
            best_perm: (0..n).collect(),
            nodes: 0,
            timed_out: false,
        }
    }

    fn score_of(&self, perm: &[usize]) -> u64 {
        let mut pos = vec![0; self.n];
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        self.pairs
            .iter()
            .zip(&self.weight)
            .filter(|(q, _)| separated_at(self.mode, pos[q[0]], pos[q[1]], pos[q[2]], pos[q[3]]))
            .map(|(_, w)| *w)
            .sum()
    }

    /// Status a pair reaches once its currently placed endpoints are known.
    fn decide(&self, i: usize) -> Status {
        let q = self.pairs[i];
        let e1 = self.placed[q[0]] as u8 + self.placed[q[1]] as u8;
        let e2 = self.placed[q[2]] as u8 + self.placed[q[3]] as u8;
        match self.mode {
            Mode::Linear => {
                if (e1 == 2 && e2 == 0) || (e2 == 2 && e1 == 0) {
                    Status::Yes
                } else if e1 >= 1 && e2 >= 1 {
                    Status::No
                } else {
                    Status::Open
                }
            }
            Mode::Circular => {
                if e1 + e2 < 4 {
                    Status::Open
                } else if separated_at(
                    Mode::Circular,
                    self.pos[q[0]],
                    self.pos[q[1]],
                    self.pos[q[2]],
                    self.pos[q[3]],
                ) {
                    Status::Yes
                } else {
                    Status::No
                }
            }
        }
    }

    fn place(&mut self, v: usize, changed: &mut Vec<usize>) {
        self.placed[v] = true;
        self.pos[v] = self.perm.len();
        self.perm.push(v);
        for k in 0..self.incident[v].len() {
            let i = self.incident[v][k];
            if self.status[i] != Status::Open {
                continue;
            }
            let s = self.decide(i);
            if s != Status::Open {
                self.status[i] = s;
                self.open_weight -= self.weight[i];
                if s == Status::Yes {
                    self.score += self.weight[i];
                }
                changed.push(i);
            }
        }
    }

    fn unplace(&mut self, v: usize, changed: &[usize]) {
        for &i in changed {
            if self.status[i] == Status::Yes {
                self.score -= self.weight[i];
            }
            self.open_weight += self.weight[i];
            self.status[i] = Status::Open;
        }
        self.perm.pop();
        self.placed[v] = false;
    }

    /// Immediate gain and loss of placing `v` next, for child ordering.
    fn preview(&mut self, v: usize) -> i64 {
        let mut changed = Vec::new();
        let before = self.score as i64 - self.open_weight as i64;
        self.place(v, &mut changed);
        let after = self.score as i64 - self.open_weight as i64;
        self.unplace(v, &changed);
        after - before
    }

    fn run(&mut self, firsts: &[usize], deadline: Instant) -> bool {
        for &v in firsts {
            let mut changed = Vec::new();
            self.place(v, &mut changed);
            self.dfs(deadline);
            self.unplace(v, &changed);
            if self.timed_out {
                return false;
            }
        }
        true
    }

    fn dfs(&mut self, deadline: Instant) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && Instant::now() > deadline {
            self.timed_out = true;
        }
        if self.timed_out {
            return;
        }
        if self.perm.len() == self.n {
            if self.score > self.best {
                self.best = self.score;
                self.best_perm = self.perm.clone();
            }
            return;
        }
        if self.score + self.open_weight <= self.best {
            return;
        }
        let free: Vec<usize> = (0..self.n).filter(|&v| !self.placed[v]).collect();
        let mut children: Vec<(i64, usize)> = free.into_iter().map(|v| (self.preview(v), v)).collect();
        children.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, v) in children {
            let mut changed = Vec::new();
            self.place(v, &mut changed);
            if self.score + self.open_weight > self.best {
                self.dfs(deadline);
            }
            self.unplace(v, &changed);
            if self.timed_out {
                return;
            }
        }
    }
}

/// Result of checking a family of orderings against a fold `t`.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyCheck {
    pub ok: bool,
    /// Pairs separated fewer than `t` times, with their actual counts.
    pub deficient: Vec<(EdgePair, usize)>,
}

/// Whether every nonincident pair is separated at least `t` times.
pub fn verify_separating_family(g: &Graph, orderings: &[Ordering], t: usize) -> Result<FamilyCheck> {
    if t == 0 {
        return Err(Error::InvalidArgument("fold t must be positive".into()));
    }
    if let Some(first) = orderings.first() {
        if orderings.iter().any(|o| o.mode() != first.mode() || o.len() != g.n()) {
            return Err(Error::InvalidOrdering(
                "orderings must share a mode and cover V(G)".into(),
            ));
        }
    }
    let pairs = g.nonincident_pairs();
    let mut counts = vec![0usize; pairs.len()];
    for o in orderings {
        let pos = o.positions();
        for (i, p) in pairs.iter().enumerate() {
            if separated_at(o.mode(), pos[p.e1.0], pos[p.e1.1], pos[p.e2.0], pos[p.e2.1]) {
                counts[i] += 1;
            }
        }
    }
    let deficient: Vec<(EdgePair, usize)> = pairs
        .into_iter()
        .zip(counts)
        .filter(|(_, c)| *c < t)
        .collect();
    Ok(FamilyCheck {
        ok: deficient.is_empty(),
        deficient,
    })
}

/// A circular ordering separating every pair, if one exists (outerplanarity test).
pub fn circular_sepdim_is_one(g: &Graph, caps: &Caps) -> Result<Option<Ordering>> {
    caps.check("circular separation dimension one", g.n(), Mode::Circular)?;
    let table = PairTable::for_graph(g, None)?;
    let n = g.n();
    let mut pos = vec![0u8; n];
    let found = find_ordering(n, Mode::Circular, |perm| {
        for (i, &v) in perm.iter().enumerate() {
            pos[v as usize] = i as u8;
        }
        table.separated_mask(Mode::Circular, &pos).iter().all(|&b| b)
    });
    Ok(found.map(|p| Ordering::new_unchecked(Mode::Circular, p.into_iter().map(usize::from).collect())))
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegerSepDim {
    pub value: usize,
    pub witness: Vec<Ordering>,
}

/// Default vertex caps for `integer_sepdim`.
pub const INTEGER_CAP_LINEAR: usize = 7;
pub const INTEGER_CAP_CIRCULAR: usize = 8;

/// Minimum size of a multiset of orderings separating every pair at least `t` times.
pub fn integer_sepdim(g: &Graph, mode: Mode, t: usize, cap: Option<usize>) -> Result<IntegerSepDim> {
    if t == 0 {
        return Err(Error::InvalidArgument("fold t must be positive".into()));
    }
    let cap = cap.unwrap_or(match mode {
        Mode::Linear => INTEGER_CAP_LINEAR,
        Mode::Circular => INTEGER_CAP_CIRCULAR,
    });
    if g.n() > cap {
        return Err(Error::cap("integer separation dimension", g.n(), cap, ""));
    }
    let pairs = g.nonincident_pairs();
    if pairs.is_empty() {
        return Ok(IntegerSepDim {
            value: 0,
            witness: Vec::new(),
        });
    }
    let caps = Caps {
        linear: cap,
        circular: cap,
        patterns: cap,
    };
    let set = enumerate_payoffs(g, mode, &ClassPartition::singletons(pairs.len()), &caps, true)?;
    let sets: Vec<Vec<usize>> = set
        .rows
        .iter()
        .map(|r| {
            r.payoff
                .counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let mut cover = MultiCover::new(pairs.len(), &sets, t);
    let mut k = cover.lower_bound();
    loop {
        if let Some(chosen) = cover.solve(k) {
            let witness = chosen
                .into_iter()
                .map(|i| set.rows[i].witness.clone())
                .collect();
            return Ok(IntegerSepDim { value: k, witness });
        }
        k += 1;
    }
}

struct MultiCover {
    need: Vec<usize>,
    sets: Vec<Vec<usize>>,
    covering: Vec<Vec<usize>>,
    chosen: Vec<usize>,
}

impl MultiCover {
    fn new(num_pairs: usize, sets: &[Vec<usize>], t: usize) -> Self {
        let mut covering = vec![Vec::new(); num_pairs];
        for (s, members) in sets.iter().enumerate() {
            for &p in members {
                covering[p].push(s);
            }
        }
        MultiCover {
            need: vec![t; num_pairs],
            sets: sets.to_vec(),
            covering,
            chosen: Vec::new(),
        }
    }

    fn lower_bound(&self) -> usize {
        let total: usize = self.need.iter().sum();
        let largest = self.sets.iter().map(|s| s.len()).max().unwrap_or(1).max(1);
        let max_need = self.need.iter().copied().max().unwrap_or(0);
        total.div_ceil(largest).max(max_need)
    }

    fn solve(&mut self, k: usize) -> Option<Vec<usize>> {
        if self.dfs(k) {
            Some(self.chosen.clone())
        } else {
            None
        }
    }

    fn dfs(&mut self, left: usize) -> bool {
        let needy: Vec<usize> = (0..self.need.len()).filter(|&p| self.need[p] > 0).collect();
        if needy.is_empty() {
            return true;
        }
        if left == 0 {
            return false;
        }
        let max_need = needy.iter().map(|&p| self.need[p]).max().unwrap();
        if max_need > left {
            return false;
        }
        let total: usize = needy.iter().map(|&p| self.need[p]).sum();
        let best_gain = self
            .sets
            .iter()
            .map(|s| s.iter().filter(|&&p| self.need[p] > 0).count())
            .max()
            .unwrap_or(0);
        if best_gain == 0 || total > best_gain * left {
            return false;
        }
        let pivot = *needy
            .iter()
            .min_by_key(|&&p| (self.covering[p].len(), p))
            .unwrap();
        let mut options: Vec<(usize, usize)> = self.covering[pivot]
            .iter()
            .map(|&s| (self.sets[s].iter().filter(|&&p| self.need[p] > 0).count(), s))
            .collect();
        options.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, s) in options {
            let hit: Vec<usize> = self.sets[s]
                .iter()
                .copied()
                .filter(|&p| self.need[p] > 0)
                .collect();
            for &p in &hit {
                self.need[p] -= 1;
            }
            self.chosen.push(s);
            if self.dfs(left - 1) {
                return true;
            }
            self.chosen.pop();
            for &p in &hit {
                self.need[p] += 1;
            }
        }
        false
    }
}

/// Convenience: weights that count every class equally (plain pair counts).
pub fn unit_weights(classes: &ClassPartition) -> Vec<Rational> {
    vec![Rational::from_integer(1.into()); classes.num_classes()]
}

/// Weights that select a single class.
pub fn class_indicator(classes: &ClassPartition, class: usize) -> Vec<Rational> {
    (0..classes.num_classes())
        .map(|c| {
            if c == class {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};
    use crate::rational::int;

    fn g(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap()
    }

    #[test]
    fn max_separation_small() {
        let k33 = g(FamilySpec::complete_bipartite(3, 3));
        let cl = ClassPartition::single(18);
        let r = max_separation(&k33, Mode::Linear, &cl, &unit_weights(&cl), &SearchMethod::Exhaustive(Caps::default()))
            .unwrap();
        assert_eq!(r.value, int(8));
        let k4 = g(FamilySpec::Complete(4));
        let cl = ClassPartition::single(3);
        let r = max_separation(&k4, Mode::Linear, &cl, &unit_weights(&cl), &SearchMethod::Exhaustive(Caps::default()))
            .unwrap();
        assert_eq!(r.value, int(1));
    }

    #[test]
    fn branch_and_bound_agrees_with_enumeration() {
        for spec in [
            FamilySpec::complete_bipartite(3, 3),
            FamilySpec::Cycle(7),
            FamilySpec::SubdividedStar(3),
            FamilySpec::complete_tripartite(1, 2, 2),
        ] {
            let gr = g(spec);
            let k = gr.nonincident_pairs().len();
            let cl = ClassPartition::single(k);
            for mode in [Mode::Linear, Mode::Circular] {
                let ex = max_separation(&gr, mode, &cl, &unit_weights(&cl), &SearchMethod::Exhaustive(Caps::default()))
                    .unwrap();
                let bb = max_separation(
                    &gr,
                    mode,
                    &cl,
                    &unit_weights(&cl),
                    &SearchMethod::branch_and_bound(Duration::from_secs(30)),
                )
                .unwrap();
                assert!(bb.proven_optimal);
                assert_eq!(ex.value, bb.value, "{mode}");
                let table = PairTable::for_graph(&gr, Some(cl.clone())).unwrap();
                assert_eq!(table.payoff(&bb.witness).counts[0] as i64, ex.value.to_integer().to_i64().unwrap());
            }
        }
    }

    #[test]
    fn zero_budget_is_flagged() {
        let gr = g(FamilySpec::Petersen);
        let cl = ClassPartition::single(75);
        let r = max_separation(
            &gr,
            Mode::Linear,
            &cl,
            &unit_weights(&cl),
            &SearchMethod::branch_and_bound(Duration::ZERO),
        )
        .unwrap();
        assert!(!r.proven_optimal);
    }

    #[test]
    fn separating_families() {
        let k4 = g(FamilySpec::Complete(4));
        let one = [Ordering::circular(vec![0, 1, 2, 3]).unwrap()];
        let r = verify_separating_family(&k4, &one, 1).unwrap();
        assert!(!r.ok);
        assert_eq!(r.deficient.len(), 1);

        for n in 4..=8 {
            let c = g(FamilySpec::Cycle(n));
            let boundary = [Ordering::identity(Mode::Circular, n)];
            assert!(verify_separating_family(&c, &boundary, 1).unwrap().ok);
        }
    }

    #[test]
    fn outerplanarity() {
        // fan on 6 vertices: hub 0 joined to the path 1..5
        let mut edges: Vec<(usize, usize)> = (1..6).map(|i| (0, i)).collect();
        edges.extend((1..5).map(|i| (i, i + 1)));
        let fan = Graph::from_edges(6, edges).unwrap();
        assert!(circular_sepdim_is_one(&fan, &Caps::default()).unwrap().is_some());
        assert!(circular_sepdim_is_one(&g(FamilySpec::Complete(4)), &Caps::default()).unwrap().is_none());
        assert!(circular_sepdim_is_one(&g(FamilySpec::complete_bipartite(2, 3)), &Caps::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn integer_values() {
        assert_eq!(integer_sepdim(&g(FamilySpec::Complete(4)), Mode::Linear, 1, None).unwrap().value, 3);
        assert_eq!(integer_sepdim(&g(FamilySpec::Cycle(6)), Mode::Circular, 1, None).unwrap().value, 1);
        let r = integer_sepdim(&g(FamilySpec::Complete(4)), Mode::Circular, 1, None).unwrap();
        assert_eq!(r.value, 2);
        assert!(verify_separating_family(&g(FamilySpec::Complete(4)), &r.witness, 1).unwrap().ok);
        // t-fold: K4 linear needs 3t
        assert_eq!(integer_sepdim(&g(FamilySpec::Complete(4)), Mode::Linear, 2, None).unwrap().value, 6);
        assert!(integer_sepdim(&g(FamilySpec::Cycle(9)), Mode::Linear, 1, None).is_err());
    }
}
