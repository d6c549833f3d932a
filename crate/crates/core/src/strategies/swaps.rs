//! Exchange arguments: moving a vertex one step toward its place in a
//! structured ordering strictly increases the number of separated pairs.
//! Each check samples random orderings, applies every eligible move, and
//! compares the exact gain with its closed form.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{generate, EdgePair, FamilySpec, Graph};
use crate::ordering::Ordering;
use crate::separation::separates;
use crate::strategies::identities::t_pair_part;

#[derive(Clone, Debug, Serialize)]
pub struct SwapCheck {
    pub family: String,
    pub moves_checked: u64,
    pub failures: Vec<String>,
}

impl SwapCheck {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.moves_checked > 0
    }
}

struct Setup {
    g: Graph,
    owner: Vec<usize>,
    counted: Vec<EdgePair>,
}

impl Setup {
    fn new(sizes: &[usize], t_pairs_only: bool) -> Self {
        let g = generate(&FamilySpec::Multipartite(sizes.to_vec())).expect("valid shape");
        let mut owner = vec![0; g.n()];
        for (i, p) in g.parts().unwrap().iter().enumerate() {
            for &v in p {
                owner[v] = i;
            }
        }
        let counted = g
            .nonincident_pairs()
            .into_iter()
            .filter(|p| !t_pairs_only || t_pair_part(&owner, p).is_some())
            .collect();
        Setup { g, owner, counted }
    }

    fn count(&self, perm: &[usize]) -> i64 {
        let o = Ordering::linear(perm.to_vec()).unwrap();
        self.counted.iter().filter(|p| separates(&o, p)).count() as i64
    }

    /// 1-based index of each vertex among its part, in order of appearance.
    fn appearance(&self, perm: &[usize]) -> Vec<i64> {
        let mut seen = vec![0i64; self.g.parts().unwrap().len()];
        let mut idx = vec![0i64; perm.len()];
        for &v in perm {
            seen[self.owner[v]] += 1;
            idx[v] = seen[self.owner[v]];
        }
        idx
    }
}

fn random_perms(n: usize, samples: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect()
}

/// Swapping adjacent vertices of different parts that appear out of index
/// order. Gain is `(j-i)(m-1)` on all pairs of K_{m,m} and `m(j-i)` on
/// T-pairs of K_{m,m,m}.
fn out_of_order_swaps(sizes: &[usize], t_pairs_only: bool, samples: usize, seed: u64) -> SwapCheck {
    let s = Setup::new(sizes, t_pairs_only);
    let m = sizes[0] as i64;
    let mut check = SwapCheck {
        family: format!("K:{}", sizes.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
        moves_checked: 0,
        failures: Vec::new(),
    };
    for perm in random_perms(s.g.n(), samples, seed) {
        let base = s.count(&perm);
        let idx = s.appearance(&perm);
        for p in 0..perm.len() - 1 {
            let (u, w) = (perm[p], perm[p + 1]);
            if s.owner[u] == s.owner[w] || idx[u] <= idx[w] {
                continue;
            }
            let (j, i) = (idx[u], idx[w]);
            let mut next = perm.clone();
            next.swap(p, p + 1);
            let gain = s.count(&next) - base;
            let expected = if t_pairs_only { m * (j - i) } else { (j - i) * (m - 1) };
            check.moves_checked += 1;
            if gain != expected || gain <= 0 {
                check.failures.push(format!("{perm:?} at {p}: gain {gain}, expected {expected}"));
            }
        }
    }
    check
}

pub fn kmm_swaps(m: usize, samples: usize, seed: u64) -> SwapCheck {
    out_of_order_swaps(&[m, m], false, samples, seed)
}

pub fn kmmm_swaps(m: usize, samples: usize, seed: u64) -> SwapCheck {
    out_of_order_swaps(&[m, m, m], true, samples, seed)
}

/// K_{1,m,m} (x = vertex 0): for consecutive vertices `a_j`, `b_i` of Y u Z
/// from different parts with `j > i`, or with `j = i < m` and x between
/// them, moving `b_i` one position earlier gains `j - i` T-pairs when x is
/// outside the two, and `(2m-i-j) j - (i+j-1)(m-j)` when x lies between.
pub fn k1mm_swaps(m: usize, samples: usize, seed: u64) -> SwapCheck {
    let s = Setup::new(&[1, m, m], true);
    let mi = m as i64;
    let mut check = SwapCheck {
        family: format!("K:1,{m},{m}"),
        moves_checked: 0,
        failures: Vec::new(),
    };
    for perm in random_perms(s.g.n(), samples, seed) {
        let base = s.count(&perm);
        let idx = s.appearance(&perm);
        let yz: Vec<usize> = (0..perm.len()).filter(|&p| perm[p] != 0).collect();
        let xpos = perm.iter().position(|&v| v == 0).unwrap();
        for w in yz.windows(2) {
            let (pu, pw) = (w[0], w[1]);
            let (u, v) = (perm[pu], perm[pw]);
            if s.owner[u] == s.owner[v] {
                continue;
            }
            let (j, i) = (idx[u], idx[v]);
            let between = pu < xpos && xpos < pw;
            let eligible = j > i || (between && j == i && i < mi);
            if !eligible {
                continue;
            }
            let mut next = perm.clone();
            next.swap(pw - 1, pw);
            let gain = s.count(&next) - base;
            let expected = if between {
                (2 * mi - i - j) * j - (i + j - 1) * (mi - j)
            } else {
                j - i
            };
            check.moves_checked += 1;
            if gain != expected || gain <= 0 {
                check.failures.push(format!("{perm:?} moving {v}: gain {gain}, expected {expected}"));
            }
        }
    }
    check
}

/// The default swap suite.
pub fn all_swaps(seed: u64) -> Vec<SwapCheck> {
    let mut out = Vec::new();
    for m in 2..=5 {
        out.push(kmm_swaps(m, 40, seed));
    }
    for m in 2..=4 {
        out.push(kmmm_swaps(m, 20, seed));
    }
    for m in 2..=5 {
        out.push(k1mm_swaps(m, 40, seed));
    }
    out
}
