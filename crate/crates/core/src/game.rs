//! The separation game: exact LP solution with primal and dual certificates.
//!
//! Rows are orderings (or representatives of ordering orbits), columns are
//! classes of nonincident pairs. Entry `(r, c)` is the fraction of class `c`
//! separated by row `r`. The ordering player maximizes the least column
//! payoff; the reciprocal of the game value is the fractional separation
//! dimension.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::enumerate::{enumerate_payoffs, payoffs_of_candidates, Caps, PayoffSet};
use crate::error::{Error, Result};
use crate::graph::{EdgePair, Graph};
use crate::ordering::{Mode, Ordering};
use crate::rational::{ser_rational, ser_weighted, Rational};
use crate::separation::{ClassPartition, PairTable};
use crate::symmetry::{automorphisms, multipartite_patterns, pair_orbits, pattern_ordering};

/// Optimal strategies of a matrix game with integer counts and class sizes.
#[derive(Clone, Debug)]
pub struct MatrixSolution {
    pub value: Rational,
    pub row_weights: Vec<Rational>,
    pub class_weights: Vec<Rational>,
    pub certified: bool,
    pub pivots: usize,
}

/// Integer tableau whose true entries are `m[i][j] / det`.
struct Tableau {
    m: Vec<Vec<BigInt>>,
    det: BigInt,
    basis: Vec<usize>,
    cols: usize,
    /// Number of row (ordering) variables; slack columns follow.
    rows_m: usize,
}

impl Tableau {
    /// Constraint rows c: `-sum_r counts[r][c] u_r + s_c = -size_c`; the
    /// last row holds the reduced costs.
    fn initial(counts: &[Vec<u32>], sizes: &[usize]) -> Self {
        let (m, k) = (counts.len(), sizes.len());
        let cols = m + k;
        let mut rows = Vec::with_capacity(k + 1);
        for c in 0..k {
            let mut row = vec![BigInt::zero(); cols + 1];
            for r in 0..m {
                row[r] = -BigInt::from(counts[r][c]);
            }
            row[m + c] = BigInt::one();
            row[cols] = -BigInt::from(sizes[c]);
            rows.push(row);
        }
        let mut obj = vec![BigInt::zero(); cols + 1];
        for x in obj.iter_mut().take(m) {
            *x = BigInt::one();
        }
        rows.push(obj);
        Tableau {
            m: rows,
            det: BigInt::one(),
            basis: (m..m + k).collect(),
            cols,
            rows_m: m,
        }
    }

    fn k(&self) -> usize {
        self.basis.len()
    }

    fn dual_feasible(&self) -> bool {
        let k = self.k();
        self.m[k][..self.cols].iter().all(|d| !d.is_negative())
    }

    /// Pivots the given columns into the basis. `None` if they are singular.
    fn enter_basis(&mut self, target: &[usize]) -> Option<usize> {
        let mut n = 0;
        for &q in target {
            if self.basis.contains(&q) {
                continue;
            }
            let p = (0..self.k()).find(|&i| !target.contains(&self.basis[i]) && !self.m[i][q].is_zero())?;
            self.pivot(p, q);
            n += 1;
        }
        Some(n)
    }

    /// Dual simplex from a dual feasible basis. Most infeasible row first;
    /// after a run of degenerate pivots it switches to Bland's rule for
    /// good, which cannot cycle.
    fn dual_simplex(&mut self) -> Result<usize> {
        let k = self.k();
        let mut pivots = 0;
        let mut bland = false;
        let mut streak = 0;
        loop {
            let infeasible = (0..k).filter(|&i| self.m[i][self.cols].is_negative());
            let leaving = if bland {
                infeasible.min_by_key(|&i| self.basis[i])
            } else {
                infeasible.min_by(|&a, &b| {
                    self.m[a][self.cols]
                        .cmp(&self.m[b][self.cols])
                        .then(self.basis[a].cmp(&self.basis[b]))
                })
            };
            let Some(p) = leaving else { return Ok(pivots) };
            // Entering: minimize d_j / (-T[p][j]) over T[p][j] < 0; lowest j on ties.
            let mut best: Option<usize> = None;
            for j in 0..self.cols {
                if !self.m[p][j].is_negative() {
                    continue;
                }
                best = match best {
                    None => Some(j),
                    Some(b) => {
                        // d_j / -t_pj < d_b / -t_pb  <=>  d_j * -t_pb < d_b * -t_pj
                        let lhs = &self.m[k][j] * -&self.m[p][b];
                        let rhs = &self.m[k][b] * -&self.m[p][j];
                        if lhs < rhs {
                            Some(j)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            let Some(q) = best else {
                // Primal infeasible; cannot happen once every class is separable.
                return Err(Error::UnseparableClass(self.basis[p].saturating_sub(self.rows_m)));
            };
            let (before, det) = (self.m[k][self.cols].clone(), self.det.clone());
            self.pivot(p, q);
            pivots += 1;
            if &before * &self.det == &self.m[k][self.cols] * &det {
                streak += 1;
                if streak > DEGENERATE_RUN {
                    bland = true;
                }
            } else {
                streak = 0;
            }
        }
    }

    fn pivot(&mut self, p: usize, q: usize) {
        let a = self.m[p][q].clone();
        let sign = if a.is_negative() { -BigInt::one() } else { BigInt::one() };
        let pivot_row = self.m[p].clone();
        for (i, row) in self.m.iter_mut().enumerate() {
            if i == p {
                continue;
            }
            let f = row[q].clone();
            if f.is_zero() {
                for x in row.iter_mut() {
                    *x = &*x * &a / &self.det * &sign;
                }
                continue;
            }
            for (x, pj) in row.iter_mut().zip(&pivot_row) {
                let num = &*x * &a - &f * pj;
                debug_assert!((&num % &self.det).is_zero());
                *x = num / &self.det * &sign;
            }
        }
        for x in self.m[p].iter_mut() {
            *x = &*x * &sign;
        }
        self.det = a.abs();
        self.basis[p] = q;
    }
}

const DEGENERATE_RUN: usize = 16;

/// The same dual simplex in floating point, used only to guess an optimal
/// basis. The exact solver pivots into it and finishes from there, so a
/// wrong guess costs time but never correctness.
fn float_basis(counts: &[Vec<u32>], sizes: &[usize]) -> Option<Vec<usize>> {
    const EPS: f64 = 1e-9;
    let (m, k) = (counts.len(), sizes.len());
    let cols = m + k;
    let mut t: Vec<Vec<f64>> = (0..k)
        .map(|c| {
            let mut row = vec![0.0; cols + 1];
            for r in 0..m {
                row[r] = -(counts[r][c] as f64);
            }
            row[m + c] = 1.0;
            row[cols] = -(sizes[c] as f64);
            row
        })
        .collect();
    let mut obj = vec![0.0; cols + 1];
    obj[..m].fill(1.0);
    t.push(obj);
    let mut basis: Vec<usize> = (m..cols).collect();
    let mut bland = false;
    let mut streak = 0;
    for _ in 0..50 * (cols + k) {
        let infeasible = (0..k).filter(|&i| t[i][cols] < -EPS);
        let leaving = if bland {
            infeasible.min_by_key(|&i| basis[i])
        } else {
            infeasible.min_by(|&a, &b| t[a][cols].total_cmp(&t[b][cols]).then(basis[a].cmp(&basis[b])))
        };
        let Some(p) = leaving else { return Some(basis) };
        let q = (0..cols)
            .filter(|&j| t[p][j] < -EPS)
            .min_by(|&a, &b| (t[k][a] / -t[p][a]).total_cmp(&(t[k][b] / -t[p][b])).then(a.cmp(&b)))?;
        let before = t[k][cols];
        let piv = t[p][q];
        for x in t[p].iter_mut() {
            *x /= piv;
        }
        let prow = t[p].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != p && row[q] != 0.0 {
                let f = row[q];
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= f * y;
                }
            }
        }
        basis[p] = q;
        if (t[k][cols] - before).abs() <= EPS {
            streak += 1;
            bland |= streak > DEGENERATE_RUN;
        } else {
            streak = 0;
        }
    }
    None
}

/// Solves the game with entries `counts[r][c] / sizes[c]`.
///
/// Works on the covering LP `min sum u` subject to `sum_r u_r A[r][c] >= 1`,
/// by dual simplex from the all-surplus basis.
pub fn solve_matrix(counts: &[Vec<u32>], sizes: &[usize]) -> Result<MatrixSolution> {
    let k = sizes.len();
    if counts.is_empty() {
        return Err(Error::EmptyGame);
    }
    if k == 0 || sizes.contains(&0) {
        return Err(Error::InvalidArgument("class sizes must be positive".into()));
    }
    if counts.iter().any(|r| r.len() != k) {
        return Err(Error::InvalidArgument("payoff rows have inconsistent length".into()));
    }
    for c in 0..k {
        if counts.iter().all(|r| r[c] == 0) {
            return Err(Error::UnseparableClass(c));
        }
    }
    solve_exact(counts, sizes, true)
}

fn solve_exact(counts: &[Vec<u32>], sizes: &[usize], warm: bool) -> Result<MatrixSolution> {
    let mut t = Tableau::initial(counts, sizes);
    let mut pivots = 0;
    if let Some(basis) = warm.then(|| float_basis(counts, sizes)).flatten() {
        match t.enter_basis(&basis) {
            Some(n) if t.dual_feasible() => pivots += n,
            _ => t = Tableau::initial(counts, sizes),
        }
    }
    pivots += t.dual_simplex()?;
    let (m, k) = (t.rows_m, t.k());
    let det = Rational::from_integer(t.det.clone());
    let mut u = vec![Rational::zero(); m];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < m {
            u[b] = Rational::from_integer(t.m[i][t.cols].clone()) / &det;
        }
    }
    let w: Vec<Rational> = (0..k)
        .map(|c| Rational::from_integer(t.m[k][m + c].clone() * BigInt::from(sizes[c])) / &det)
        .collect();
    let su: Rational = u.iter().sum();
    let sw: Rational = w.iter().sum();
    let value = Rational::one() / &su;
    let row_weights: Vec<Rational> = u.iter().map(|x| x * &value).collect();
    let class_weights: Vec<Rational> = w.iter().map(|x| x / &sw).collect();
    let certified = su == sw && certify(counts, sizes, &row_weights, &class_weights, &value);
    Ok(MatrixSolution {
        value,
        row_weights,
        class_weights,
        certified,
        pivots,
    })
}

/// Independent check: min over classes of `x^T A` and max over rows of `A y`
/// both equal `value`, with `x`, `y` probability vectors.
pub fn certify(
    counts: &[Vec<u32>],
    sizes: &[usize],
    x: &[Rational],
    y: &[Rational],
    value: &Rational,
) -> bool {
    let is_dist = |v: &[Rational]| v.iter().all(|a| !a.is_negative()) && v.iter().sum::<Rational>() == Rational::one();
    if x.len() != counts.len() || y.len() != sizes.len() || !is_dist(x) || !is_dist(y) {
        return false;
    }
    let k = sizes.len();
    let col_min = (0..k)
        .map(|c| {
            let s: Rational = counts
                .iter()
                .zip(x)
                .filter(|(_, w)| !w.is_zero())
                .map(|(r, w)| w * Rational::from_integer(r[c].into()))
                .sum();
            s / Rational::from_integer(sizes[c].into())
        })
        .min()
        .unwrap();
    // Scale y_c / size_c to a common denominator so rows are summed in integers.
    let scaled: Vec<Rational> = y
        .iter()
        .zip(sizes)
        .map(|(w, &s)| w / Rational::from_integer(s.into()))
        .collect();
    let den = scaled.iter().fold(BigInt::one(), |a, r| a.lcm(r.denom()));
    let ints: Vec<BigInt> = scaled
        .iter()
        .map(|r| r.numer() * (&den / r.denom()))
        .collect();
    let row_max = counts
        .iter()
        .map(|r| {
            r.iter()
                .zip(&ints)
                .filter(|(&c, _)| c != 0)
                .map(|(&c, w)| w * BigInt::from(c))
                .sum::<BigInt>()
        })
        .max()
        .unwrap();
    let row_max = Rational::new(row_max, den);
    col_min == *value && row_max == *value
}

/// Which reduction builds the game.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Reduction {
    Auto,
    None,
    Orbits,
    Patterns,
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reduction::Auto => "auto",
            Reduction::None => "none",
            Reduction::Orbits => "orbits",
            Reduction::Patterns => "patterns",
        })
    }
}

impl FromStr for Reduction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Reduction::Auto),
            "none" => Ok(Reduction::None),
            "orbits" => Ok(Reduction::Orbits),
            "patterns" => Ok(Reduction::Patterns),
            _ => Err(Error::InvalidArgument(format!("unknown reduction {s:?}"))),
        }
    }
}

/// Weight placed on one pair class by the pair player.
#[derive(Clone, Debug, Serialize)]
pub struct ClassWeight {
    pub representative: EdgePair,
    pub size: usize,
    #[serde(serialize_with = "ser_rational")]
    pub weight: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct GameSolution {
    pub mode: Mode,
    pub reduction: Reduction,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub pi_f: Rational,
    /// Ordering player's optimal mixture over representative orderings. Under an
    /// orbit or pattern reduction each ordering stands for its orbit.
    #[serde(serialize_with = "ser_weighted")]
    pub primal: Vec<(Ordering, Rational)>,
    /// Pair player's optimal mixture; weight is spread uniformly inside a class.
    pub dual: Vec<ClassWeight>,
    pub rows: usize,
    pub examined: u64,
    pub pivots: usize,
    pub certified: bool,
    /// True when the graph has no nonincident pair (value and pi_f are then 0).
    pub degenerate: bool,
    /// Vertices (original labels) of the component that attains the maximum.
    pub component: Vec<usize>,
}

/// Solves the game given by a payoff set.
pub fn solve_game(set: &PayoffSet, pairs: &[EdgePair], classes: &ClassPartition) -> Result<GameSolution> {
    let counts: Vec<Vec<u32>> = set.rows.iter().map(|r| r.payoff.counts.clone()).collect();
    let sol = solve_matrix(&counts, &set.class_sizes)?;
    let primal = set
        .rows
        .iter()
        .zip(&sol.row_weights)
        .filter(|(_, w)| !w.is_zero())
        .map(|(r, w)| (r.witness.clone(), w.clone()))
        .collect();
    let dual = (0..classes.num_classes())
        .map(|c| ClassWeight {
            representative: pairs[classes.members(c)[0]],
            size: classes.sizes()[c],
            weight: sol.class_weights[c].clone(),
        })
        .collect();
    Ok(GameSolution {
        mode: set.mode,
        reduction: Reduction::None,
        pi_f: Rational::one() / &sol.value,
        value: sol.value,
        primal,
        dual,
        rows: set.rows.len(),
        examined: set.examined,
        pivots: sol.pivots,
        certified: sol.certified,
        degenerate: false,
        component: Vec::new(),
    })
}

fn degenerate(g: &Graph, mode: Mode, reduction: Reduction) -> GameSolution {
    GameSolution {
        mode,
        reduction,
        value: Rational::zero(),
        pi_f: Rational::zero(),
        primal: vec![(Ordering::identity(mode, g.n()), Rational::one())],
        dual: Vec::new(),
        rows: 0,
        examined: 0,
        pivots: 0,
        certified: true,
        degenerate: true,
        component: (0..g.n()).collect(),
    }
}

/// The reduction `Auto` resolves to for a connected graph.
pub fn resolve_reduction(g: &Graph, reduction: Reduction) -> Result<Reduction> {
    Ok(match reduction {
        Reduction::Auto => {
            if g.detect_parts().is_some() {
                Reduction::Patterns
            } else if automorphisms(g)?.order > 1 {
                Reduction::Orbits
            } else {
                Reduction::None
            }
        }
        r => r,
    })
}

fn solve_connected(g: &Graph, mode: Mode, reduction: Reduction, caps: &Caps) -> Result<GameSolution> {
    let pairs = g.nonincident_pairs();
    if pairs.is_empty() {
        return Ok(degenerate(g, mode, resolve_reduction(g, reduction)?));
    }
    let reduction = resolve_reduction(g, reduction)?;
    let (classes, set) = match reduction {
        Reduction::None => {
            let classes = ClassPartition::singletons(pairs.len());
            let set = enumerate_payoffs(g, mode, &classes, caps, true)?;
            (classes, set)
        }
        Reduction::Orbits => {
            let classes = pair_orbits(g, &automorphisms(g)?).classes;
            let set = enumerate_payoffs(g, mode, &classes, caps, true)?;
            (classes, set)
        }
        Reduction::Patterns => {
            let parts = g.detect_parts().ok_or_else(|| {
                Error::ShapeMismatch("pattern reduction needs a complete multipartite graph".into())
            })?;
            if g.n() > caps.patterns {
                return Err(Error::cap("pattern enumeration", g.n(), caps.patterns, "raise the pattern cap"));
            }
            let classes = pair_orbits(g, &automorphisms(g)?).classes;
            let table = PairTable::for_graph(g, Some(classes.clone()))?;
            let candidates: Vec<Vec<usize>> = multipartite_patterns(&parts)
                .iter()
                .map(|p| pattern_ordering(&parts, p))
                .collect();
            let set = payoffs_of_candidates(&table, mode, &candidates, true);
            (classes, set)
        }
        Reduction::Auto => unreachable!(),
    };
    let mut sol = solve_game(&set, &pairs, &classes)?;
    sol.reduction = reduction;
    sol.component = (0..g.n()).collect();
    Ok(sol)
}

/// Places `order` (labels of one component) first and the remaining vertices after it.
fn lift(o: &Ordering, vertices: &[usize], n: usize) -> Ordering {
    let mut perm: Vec<usize> = o.perm().iter().map(|&i| vertices[i]).collect();
    let mut inside = vec![false; n];
    for &v in vertices {
        inside[v] = true;
    }
    perm.extend((0..n).filter(|&v| !inside[v]));
    Ordering::new(o.mode(), perm).expect("lifted ordering is a permutation")
}

fn lift_pair(p: &EdgePair, vertices: &[usize]) -> EdgePair {
    EdgePair::new((vertices[p.e1.0], vertices[p.e1.1]), (vertices[p.e2.0], vertices[p.e2.1]))
}

/// Exact fractional (linear) or circular fractional separation dimension.
///
/// Disconnected graphs are solved per component and the largest value wins.
/// When no component has a nonincident pair but pairs exist across
/// components, one ordering with each component contiguous separates every
/// pair, and the value is 1.
pub fn fractional_sepdim(g: &Graph, mode: Mode, reduction: Reduction, caps: &Caps) -> Result<GameSolution> {
    let comps = g.components();
    if comps.len() == 1 {
        return solve_connected(g, mode, reduction, caps);
    }
    let mut best: Option<GameSolution> = None;
    for comp in &comps {
        let sub = g.induced(comp);
        if sub.nonincident_pairs().is_empty() {
            continue;
        }
        let mut sol = solve_connected(&sub, mode, reduction, caps)?;
        sol.primal = sol.primal.iter().map(|(o, w)| (lift(o, comp, g.n()), w.clone())).collect();
        for d in &mut sol.dual {
            d.representative = lift_pair(&d.representative, comp);
        }
        sol.component = comp.clone();
        if best.as_ref().is_none_or(|b| sol.pi_f > b.pi_f) {
            best = Some(sol);
        }
    }
    if let Some(b) = best {
        return Ok(b);
    }
    let pairs = g.nonincident_pairs();
    if pairs.is_empty() {
        let mut d = degenerate(g, mode, reduction);
        d.reduction = if reduction == Reduction::Auto { Reduction::None } else { reduction };
        return Ok(d);
    }
    let block: Vec<usize> = comps.iter().flatten().copied().collect();
    let o = Ordering::new(mode, block)?;
    let classes = ClassPartition::single(pairs.len());
    let table = PairTable::for_graph(g, Some(classes.clone()))?;
    let set = PayoffSet {
        mode,
        rows: vec![crate::enumerate::PayoffRow {
            payoff: table.payoff(&o),
            witness: o,
        }],
        class_sizes: classes.sizes().to_vec(),
        examined: 1,
        pareto: true,
    };
    let mut sol = solve_game(&set, &pairs, &classes)?;
    sol.reduction = if reduction == Reduction::Auto { Reduction::None } else { reduction };
    sol.component = (0..g.n()).collect();
    Ok(sol)
}

/// Which complete multipartite shapes a scan covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanFamily {
    Bipartite,
    Tripartite,
}

impl FromStr for ScanFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bipartite" => Ok(ScanFamily::Bipartite),
            "tripartite" => Ok(ScanFamily::Tripartite),
            _ => Err(Error::InvalidArgument(format!("unknown scan family {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub parts: Vec<usize>,
    #[serde(serialize_with = "crate::rational::ser_opt_rational")]
    pub pi_f: Option<Rational>,
    pub skipped: Option<String>,
    pub argmax: bool,
}

/// Default vertex limits for scans.
pub const SCAN_CAP_BIPARTITE: usize = 14;
pub const SCAN_CAP_TRIPARTITE: usize = 12;

/// Exact values over all part-size shapes with `n` vertices, sorted by value
/// (descending, then by shape); every shape attaining the maximum is flagged.
pub fn conjecture_scan(n: usize, family: ScanFamily, mode: Mode, cap: Option<usize>) -> Result<Vec<ScanRow>> {
    let k = match family {
        ScanFamily::Bipartite => 2,
        ScanFamily::Tripartite => 3,
    };
    let cap = cap.unwrap_or(match family {
        ScanFamily::Bipartite => SCAN_CAP_BIPARTITE,
        ScanFamily::Tripartite => SCAN_CAP_TRIPARTITE,
    });
    if n < k {
        return Err(Error::InvalidArgument(format!("n = {n} is too small for {k} parts")));
    }
    let mut shapes = Vec::new();
    partitions(n, k, n, &mut Vec::new(), &mut shapes);
    let caps = Caps {
        patterns: cap,
        ..Caps::default()
    };
    let mut rows: Vec<ScanRow> = shapes
        .into_iter()
        .map(|parts| {
            let g = crate::graph::generate(&crate::graph::FamilySpec::Multipartite(parts.clone()));
            match g.and_then(|g| fractional_sepdim(&g, mode, Reduction::Patterns, &caps)) {
                Ok(s) => ScanRow {
                    parts,
                    pi_f: Some(s.pi_f),
                    skipped: None,
                    argmax: false,
                },
                Err(e) => ScanRow {
                    parts,
                    pi_f: None,
                    skipped: Some(e.to_string()),
                    argmax: false,
                },
            }
        })
        .collect();
    rows.sort_by(|a, b| b.pi_f.cmp(&a.pi_f).then_with(|| b.parts.cmp(&a.parts)));
    if let Some(top) = rows.first().and_then(|r| r.pi_f.clone()) {
        for r in &mut rows {
            r.argmax = r.pi_f.as_ref() == Some(&top);
        }
    }
    Ok(rows)
}

/// Nonincreasing sequences of `k` positive parts summing to `n`, each at most `max`.
fn partitions(n: usize, k: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k == 0 {
        if n == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for first in (1..=max.min(n)).rev() {
        if n - first < k - 1 {
            continue;
        }
        cur.push(first);
        partitions(n - first, k - 1, first, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};
    use crate::rational::{int, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap()
    }

    fn solve(spec: FamilySpec, mode: Mode, r: Reduction) -> GameSolution {
        fractional_sepdim(&g(spec), mode, r, &Caps::default()).unwrap()
    }

    #[test]
    fn matrix_basics() {
        let s = solve_matrix(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], &[1, 1, 1]).unwrap();
        assert_eq!(s.value, rat(1, 3));
        assert!(s.certified);
        let s = solve_matrix(&[vec![1]], &[1]).unwrap();
        assert_eq!(s.value, int(1));
        // matching pennies shifted: [[2,0],[0,1]] has value 2/3
        let s = solve_matrix(&[vec![2, 0], vec![0, 1]], &[1, 1]).unwrap();
        assert_eq!(s.value, rat(2, 3));
        assert_eq!(s.row_weights, vec![rat(1, 3), rat(2, 3)]);
        assert!(s.certified);
        assert!(matches!(solve_matrix(&[], &[1]), Err(Error::EmptyGame)));
        assert!(matches!(solve_matrix(&[vec![1, 0]], &[1, 1]), Err(Error::UnseparableClass(1))));
    }

    #[test]
    fn warm_start_matches_cold_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let rows = rng.gen_range(1..30);
            let k = rng.gen_range(1..8);
            let mut counts: Vec<Vec<u32>> = (0..rows).map(|_| (0..k).map(|_| rng.gen_range(0..4)).collect()).collect();
            counts.push(vec![1; k]);
            let sizes: Vec<usize> = (0..k).map(|_| rng.gen_range(1..4)).collect();
            let warm = solve_exact(&counts, &sizes, true).unwrap();
            let cold = solve_exact(&counts, &sizes, false).unwrap();
            assert_eq!(warm.value, cold.value);
            assert!(warm.certified && cold.certified);
        }
    }

    #[test]
    fn certificate_rejects_wrong_value() {
        let counts = vec![vec![2, 0], vec![0, 1]];
        assert!(!certify(&counts, &[1, 1], &[rat(1, 2), rat(1, 2)], &[rat(1, 3), rat(2, 3)], &rat(2, 3)));
    }

    #[test]
    fn small_values() {
        assert_eq!(solve(FamilySpec::Cycle(5), Mode::Linear, Reduction::None).pi_f, rat(5, 3));
        assert_eq!(solve(FamilySpec::Complete(4), Mode::Linear, Reduction::None).pi_f, int(3));
        assert_eq!(solve(FamilySpec::Complete(4), Mode::Circular, Reduction::None).pi_f, rat(3, 2));
        let k33 = solve(FamilySpec::complete_bipartite(3, 3), Mode::Linear, Reduction::Patterns);
        assert_eq!(k33.pi_f, rat(9, 4));
        assert!(k33.certified);
        let k33c = solve(FamilySpec::complete_bipartite(3, 3), Mode::Circular, Reduction::Patterns);
        assert_eq!(k33c.pi_f, rat(6, 5));
    }

    #[test]
    fn degenerate_graphs() {
        let s = solve(FamilySpec::Complete(3), Mode::Linear, Reduction::Auto);
        assert!(s.degenerate);
        assert_eq!(s.pi_f, int(0));
        let star = solve(FamilySpec::complete_bipartite(1, 4), Mode::Linear, Reduction::Auto);
        assert!(star.degenerate);
    }

    #[test]
    fn disconnected_graphs() {
        // C5 plus a disjoint K4: the max is 3
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        for u in 5..9 {
            for v in u + 1..9 {
                edges.push((u, v));
            }
        }
        let gr = Graph::from_edges(9, edges).unwrap();
        let s = fractional_sepdim(&gr, Mode::Linear, Reduction::Auto, &Caps::default()).unwrap();
        assert_eq!(s.pi_f, int(3));
        assert_eq!(s.component, vec![5, 6, 7, 8]);
        // perfect matching on 6 vertices: only cross pairs
        let m = Graph::from_edges(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let s = fractional_sepdim(&m, Mode::Linear, Reduction::None, &Caps::default()).unwrap();
        assert_eq!(s.pi_f, int(1));
        assert!(s.certified);
    }

    #[test]
    fn reductions_agree() {
        for spec in [
            FamilySpec::Cycle(6),
            FamilySpec::complete_bipartite(2, 3),
            FamilySpec::complete_tripartite(1, 2, 2),
            FamilySpec::SubdividedStar(3),
        ] {
            for mode in [Mode::Linear, Mode::Circular] {
                let a = solve(spec.clone(), mode, Reduction::None);
                let b = solve(spec.clone(), mode, Reduction::Orbits);
                assert_eq!(a.pi_f, b.pi_f, "{spec} {mode}");
                assert!(a.certified && b.certified);
                if matches!(spec, FamilySpec::Multipartite(_)) {
                    let c = solve(spec.clone(), mode, Reduction::Patterns);
                    assert_eq!(a.pi_f, c.pi_f, "{spec} {mode}");
                }
            }
        }
    }

    #[test]
    fn patterns_need_parts() {
        let r = fractional_sepdim(&g(FamilySpec::Cycle(5)), Mode::Linear, Reduction::Patterns, &Caps::default());
        assert!(matches!(r, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn scan_bipartite() {
        let rows = conjecture_scan(6, ScanFamily::Bipartite, Mode::Linear, None).unwrap();
        assert_eq!(rows[0].parts, vec![3, 3]);
        assert_eq!(rows[0].pi_f, Some(rat(9, 4)));
        assert!(rows[0].argmax);
        assert_eq!(rows.len(), 3);
    }

    #[test]
    fn partitions_enumerated() {
        let mut out = Vec::new();
        partitions(6, 3, 6, &mut Vec::new(), &mut out);
        assert_eq!(out, vec![vec![4, 1, 1], vec![3, 2, 1], vec![2, 2, 2]]);
    }
}
