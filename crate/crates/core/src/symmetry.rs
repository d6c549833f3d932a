//! Automorphism groups, pair orbits, and part-label patterns of complete
//! multipartite graphs.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgePair, Graph};
use crate::separation::ClassPartition;

pub const AUTOMORPHISM_CAP: usize = 20;
/// Largest group order for which `elements` will enumerate the group.
pub const CLOSURE_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphismGroup {
    pub n: usize,
    pub generators: Vec<Vec<usize>>,
    pub order: u128,
}

impl AutomorphismGroup {
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// All group elements by closure under the generators, or `None` past `CLOSURE_LIMIT`.
    pub fn elements(&self) -> Option<Vec<Vec<usize>>> {
        if self.order > CLOSURE_LIMIT {
            return None;
        }
        let id: Vec<usize> = (0..self.n).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut out = vec![id.clone()];
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y: Vec<usize> = x.iter().map(|&v| g[v]).collect();
                if seen.insert(y.clone()) {
                    out.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        out.sort();
        Some(out)
    }
}

pub fn is_automorphism(g: &Graph, perm: &[usize]) -> bool {
    perm.len() == g.n() && g.edges().iter().all(|&(u, v)| g.has_edge(perm[u], perm[v]))
}

/// Colour refinement on two copies of `g`, with `left[i]` in the first copy
/// and `right[i]` in the second individualized to colour `i + 1`.
/// Returns colours for the union (`0..n` then `n..2n`), or `None` when the
/// two sides end up with different colour counts.
fn joint_refine(g: &Graph, left: &[usize], right: &[usize]) -> Option<Vec<usize>> {
    let n = g.n();
    let mut colour = vec![0usize; 2 * n];
    for (i, (&a, &b)) in left.iter().zip(right).enumerate() {
        colour[a] = i + 1;
        colour[n + b] = i + 1;
    }
    let mut classes = count_classes(&colour);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..2 * n)
            .map(|x| {
                let (v, off) = if x < n { (x, 0) } else { (x - n, n) };
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&u| colour[u + off]).collect();
                nb.sort_unstable();
                (colour[x], nb)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let index: HashMap<&(usize, Vec<usize>), usize> =
            distinct.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        colour = sigs.iter().map(|s| index[s]).collect();
        let mut count = vec![0i64; distinct.len()];
        for (x, &c) in colour.iter().enumerate() {
            count[c] += if x < n { 1 } else { -1 };
        }
        if count.iter().any(|&c| c != 0) {
            return None;
        }
        let k = distinct.len();
        if k == classes {
            return Some(colour);
        }
        classes = k;
    }
}

fn count_classes(colour: &[usize]) -> usize {
    let mut c = colour.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Searches for an automorphism extending the partial map `left[i] -> right[i]`.
fn extend(g: &Graph, left: &mut Vec<usize>, right: &mut Vec<usize>) -> Option<Vec<usize>> {
    let n = g.n();
    for (i, &a) in left.iter().enumerate() {
        for (j, &b) in left.iter().enumerate() {
            if g.has_edge(a, b) != g.has_edge(right[i], right[j]) {
                return None;
            }
        }
    }
    let colour = joint_refine(g, left, right)?;
    // Pick the smallest unmapped vertex in the smallest non-singleton cell.
    let mut size = HashMap::new();
    for &c in &colour[..n] {
        *size.entry(c).or_insert(0usize) += 1;
    }
    if size.values().all(|&s| s == 1) {
        let mut perm = vec![0; n];
        for v in 0..n {
            let c = colour[v];
            perm[v] = (0..n).find(|&w| colour[n + w] == c).unwrap();
        }
        return is_automorphism(g, &perm).then_some(perm);
    }
    let v = (0..n)
        .filter(|&v| size[&colour[v]] > 1)
        .min_by_key(|&v| (size[&colour[v]], v))
        .unwrap();
    for w in (0..n).filter(|&w| colour[n + w] == colour[v]) {
        left.push(v);
        right.push(w);
        let found = extend(g, left, right);
        left.pop();
        right.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

fn orbit_of(x: usize, gens: &[Vec<usize>]) -> Vec<usize> {
    let mut seen = vec![x];
    let mut i = 0;
    while i < seen.len() {
        let y = seen[i];
        for g in gens {
            if !seen.contains(&g[y]) {
                seen.push(g[y]);
            }
        }
        i += 1;
    }
    seen.sort_unstable();
    seen
}

/// Full automorphism group by a base-and-stabilizer backtracking search.
pub fn automorphisms(g: &Graph) -> Result<AutomorphismGroup> {
    let n = g.n();
    if n > AUTOMORPHISM_CAP {
        return Err(Error::cap("automorphism search", n, AUTOMORPHISM_CAP, ""));
    }
    // Base: individualize until the refinement is discrete.
    let mut base: Vec<usize> = Vec::new();
    loop {
        let colour = joint_refine(g, &base, &base).expect("identity is consistent");
        let mut size = HashMap::new();
        for &c in &colour[..n] {
            *size.entry(c).or_insert(0usize) += 1;
        }
        match (0..n).find(|&v| size[&colour[v]] > 1) {
            Some(v) => base.push(v),
            None => break,
        }
    }
    let mut generators: Vec<Vec<usize>> = Vec::new();
    let mut order: u128 = 1;
    for level in (0..base.len()).rev() {
        let b = base[level];
        let colour = joint_refine(g, &base[..level], &base[..level]).unwrap();
        let candidates: Vec<usize> = (0..n).filter(|&w| colour[w] == colour[b]).collect();
        let mut orbit = orbit_of(b, &generators);
        for w in candidates {
            if orbit.contains(&w) {
                continue;
            }
            let mut left: Vec<usize> = base[..level].to_vec();
            let mut right = left.clone();
            left.push(b);
            right.push(w);
            if let Some(perm) = extend(g, &mut left, &mut right) {
                generators.push(perm);
                orbit = orbit_of(b, &generators);
            }
        }
        order *= orbit.len() as u128;
    }
    Ok(AutomorphismGroup {
        n,
        generators,
        order,
    })
}

/// Orbits of the nonincident pairs; classes are numbered by first member.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitPartition {
    pub pairs: Vec<EdgePair>,
    pub classes: ClassPartition,
    /// Smallest pair index in each class.
    pub representatives: Vec<usize>,
}

impl OrbitPartition {
    pub fn num_classes(&self) -> usize {
        self.classes.num_classes()
    }

    pub fn sizes(&self) -> &[usize] {
        self.classes.sizes()
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

pub fn pair_orbits(g: &Graph, aut: &AutomorphismGroup) -> OrbitPartition {
    let pairs = g.nonincident_pairs();
    let index: HashMap<EdgePair, usize> = pairs.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut parent: Vec<usize> = (0..pairs.len()).collect();
    for gen in &aut.generators {
        for (i, p) in pairs.iter().enumerate() {
            let j = index[&p.map(gen)];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut label_of_root: HashMap<usize, usize> = HashMap::new();
    let mut labels = Vec::with_capacity(pairs.len());
    let mut representatives = Vec::new();
    for i in 0..pairs.len() {
        let r = find(&mut parent, i);
        let next = label_of_root.len();
        let l = *label_of_root.entry(r).or_insert_with(|| {
            representatives.push(i);
            next
        });
        labels.push(l);
    }
    let classes = ClassPartition::from_labels(labels).expect("labels are contiguous");
    OrbitPartition {
        pairs,
        classes,
        representatives,
    }
}

/// Whether some edge of `g` joins an endpoint of one edge of `p` to an endpoint of the other.
pub fn joined_by_edge(g: &Graph, p: &EdgePair) -> bool {
    let (a, b) = p.e1;
    let (c, d) = p.e2;
    [(a, c), (a, d), (b, c), (b, d)]
        .iter()
        .any(|&(u, v)| g.has_edge(u, v))
}

/// All distinct part-label sequences with the multiplicities of `parts`.
pub fn multipartite_patterns(parts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seq: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, p)| std::iter::repeat_n(i, p.len()))
        .collect();
    let mut out = vec![seq.clone()];
    while crate::enumerate::next_permutation(&mut seq) {
        out.push(seq.clone());
    }
    out
}

/// The ordering represented by a pattern: the i-th occurrence of part `j`
/// is the i-th vertex of that part.
pub fn pattern_ordering(parts: &[Vec<usize>], pattern: &[usize]) -> Vec<usize> {
    let mut next = vec![0usize; parts.len()];
    pattern
        .iter()
        .map(|&j| {
            let v = parts[j][next[j]];
            next[j] += 1;
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};
    use crate::separation::count_separated;
    use crate::ordering::Ordering;

    fn g(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(automorphisms(&g(FamilySpec::Cycle(5))).unwrap().order, 10);
        assert_eq!(automorphisms(&g(FamilySpec::Complete(5))).unwrap().order, 120);
        assert_eq!(automorphisms(&g(FamilySpec::complete_bipartite(3, 3))).unwrap().order, 72);
        assert_eq!(automorphisms(&g(FamilySpec::complete_bipartite(2, 3))).unwrap().order, 12);
        assert_eq!(automorphisms(&g(FamilySpec::Path(5))).unwrap().order, 2);
        assert_eq!(automorphisms(&g(FamilySpec::SubdividedStar(3))).unwrap().order, 6);
    }

    #[test]
    fn petersen_group_is_s5_on_pairs() {
        let pg = g(FamilySpec::Petersen);
        let aut = automorphisms(&pg).unwrap();
        assert_eq!(aut.order, 120);
        let elems: HashSet<Vec<usize>> = aut.elements().unwrap().into_iter().collect();
        assert_eq!(elems.len(), 120);
        // every permutation of {1..5} acting on 2-subsets lies in the group
        let subsets = crate::graph::petersen_subsets();
        let mut sigma: Vec<usize> = (0..5).collect();
        loop {
            let perm: Vec<usize> = subsets
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (sigma[a - 1] + 1, sigma[b - 1] + 1);
                    subsets.iter().position(|&s| s == (x.min(y), x.max(y))).unwrap()
                })
                .collect();
            assert!(elems.contains(&perm));
            if !crate::enumerate::next_permutation(&mut sigma) {
                break;
            }
        }
    }

    #[test]
    fn heawood_group() {
        let hg = g(FamilySpec::Heawood);
        let aut = automorphisms(&hg).unwrap();
        assert_eq!(aut.order, 336);
        assert_eq!(aut.elements().unwrap().len(), 336);
        assert!(aut.elements().unwrap().iter().all(|p| is_automorphism(&hg, p)));
    }

    #[test]
    fn orbit_sizes() {
        let pg = g(FamilySpec::Petersen);
        let orb = pair_orbits(&pg, &automorphisms(&pg).unwrap());
        let mut sizes = orb.sizes().to_vec();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![15, 60]);
        for c in 0..orb.num_classes() {
            let joined: Vec<bool> = orb
                .classes
                .members(c)
                .iter()
                .map(|&i| joined_by_edge(&pg, &orb.pairs[i]))
                .collect();
            assert!(joined.iter().all(|&j| j == joined[0]));
            assert_eq!(joined[0], orb.sizes()[c] == 60);
        }

        let hg = g(FamilySpec::Heawood);
        let orb = pair_orbits(&hg, &automorphisms(&hg).unwrap());
        assert_eq!(orb.sizes(), &[84, 84]);

        for m in 2..=5 {
            let k = g(FamilySpec::complete_bipartite(m, m));
            assert_eq!(pair_orbits(&k, &automorphisms(&k).unwrap()).num_classes(), 1);
        }
    }

    #[test]
    fn orbits_are_closed_under_generators() {
        for spec in [FamilySpec::Petersen, FamilySpec::complete_tripartite(1, 2, 3), FamilySpec::Cycle(7)] {
            let gr = g(spec);
            let aut = automorphisms(&gr).unwrap();
            let orb = pair_orbits(&gr, &aut);
            for gen in &aut.generators {
                assert!(is_automorphism(&gr, gen));
                for (i, p) in orb.pairs.iter().enumerate() {
                    let j = orb.pairs.iter().position(|q| *q == p.map(gen)).unwrap();
                    assert_eq!(orb.classes.class_of(i), orb.classes.class_of(j));
                }
            }
        }
    }

    #[test]
    fn pattern_counts() {
        let parts = |sizes: &[usize]| {
            let mut next = 0;
            sizes
                .iter()
                .map(|&s| {
                    next += s;
                    (next - s..next).collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(multipartite_patterns(&parts(&[2, 2])).len(), 6);
        assert_eq!(multipartite_patterns(&parts(&[3, 3])).len(), 20);
        assert_eq!(multipartite_patterns(&parts(&[2, 2, 2])).len(), 90);

        let k33 = g(FamilySpec::complete_bipartite(3, 3));
        let perm = pattern_ordering(k33.parts().unwrap(), &[0, 1, 0, 1, 0, 1]);
        assert_eq!(perm, vec![0, 3, 1, 4, 2, 5]);
        let pairs = k33.nonincident_pairs();
        let v = count_separated(
            &Ordering::linear(perm).unwrap(),
            &pairs,
            &ClassPartition::single(pairs.len()),
        )
        .unwrap();
        assert_eq!(v.counts, vec![8]);
    }
}
