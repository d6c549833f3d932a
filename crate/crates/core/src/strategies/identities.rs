//! Exact counting identities behind the complete multipartite strategies,
//! checked symbolically over parameter ranges and, for small parameters,
//! against direct counts on concrete orderings.

use num_bigint::BigInt;
use serde::Serialize;

use crate::graph::{generate, FamilySpec, Graph};
use crate::ordering::Ordering;
use crate::rational::{binom, rat, ser_rational, Rational};
use crate::separation::separates;
use crate::strategies::k1mm_separated;
use crate::symmetry::pattern_ordering;

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub family: &'static str,
    pub params: String,
    #[serde(serialize_with = "ser_rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub rhs: Rational,
    pub ok: bool,
}

fn check(family: &'static str, params: String, lhs: Rational, rhs: Rational) -> IdentityCheck {
    IdentityCheck {
        family,
        params,
        ok: lhs == rhs,
        lhs,
        rhs,
    }
}

fn c(n: u64, k: u64) -> Rational {
    Rational::from_integer(binom(n, k))
}

fn r(x: u64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// 4C(m,4) + 5C(m,3) + C(m,2) = (m+1)/(3m) * 2C(m,2)^2.
pub fn kmm(m: u64) -> IdentityCheck {
    let lhs = r(4) * c(m, 4) + r(5) * c(m, 3) + c(m, 2);
    let rhs = rat(m as i64 + 1, 3 * m as i64) * r(2) * c(m, 2) * c(m, 2);
    check("kmm", format!("m={m}"), lhs, rhs)
}

/// Separated pairs of the block ordering of K_{m+1,qm}.
pub fn complete_bipartite(m: u64, q: u64) -> IdentityCheck {
    let cq = c(q, 2);
    let q2 = r(q * q);
    let lhs = r(4) * &q2 * c(m, 4)
        + (r(7) * &q2 + &cq) * c(m, 3)
        + (r(3) * &q2 + r(2) * &cq) * c(m, 2)
        + &cq * r(m);
    let rhs = rat(1, 12) * r((2 * m + 1) * m * q - m - 2) * r(m + 1) * r(m * q);
    check("complete-bipartite", format!("m={m} q={q}"), lhs, rhs)
}

/// T-pairs of K_{m,m,m} separated by a triple-block ordering, as a fraction
/// of all 6m^2 C(m,2) T-pairs, is (2m+1)/(6m).
pub fn kmmm(m: u64) -> IdentityCheck {
    let sep = r(24) * c(m, 4) + r(33) * c(m, 3) + r(10) * c(m, 2);
    let total = r(6 * m * m) * c(m, 2);
    check("kmmm", format!("m={m}"), sep / total, rat(2 * m as i64 + 1, 6 * m as i64))
}

/// The separated count itself: 24C(m,4) + 33C(m,3) + 10C(m,2) = (2m+1) m C(m,2).
pub fn kmmm_count(m: u64) -> IdentityCheck {
    let sep = r(24) * c(m, 4) + r(33) * c(m, 3) + r(10) * c(m, 2);
    check("kmmm-count", format!("m={m}"), sep, r((2 * m + 1) * m) * c(m, 2))
}

/// Both T-pair ratios of K_{m+1,m,m} equal (2m+1)/(6m).
pub fn km1mm(m: u64) -> [IdentityCheck; 2] {
    let target = rat(2 * m as i64 + 1, 6 * m as i64);
    let x = (r(8) * c(m, 4) + r(15) * c(m, 3) + r(8) * c(m, 2) + r(m)) / r(m * m * m * (m + 1));
    let yz = (r(16) * c(m, 4) + r(26) * c(m, 3) + r(10) * c(m, 2)) / r(2 * m * m * (m * m - 1));
    [
        check("km1mm-X", format!("m={m}"), x, target.clone()),
        check("km1mm-YZ", format!("m={m}"), yz, target),
    ]
}

/// g(k) = f(k) - f(k-1) = m - 2k + 1 for the K_{1,m,m} split.
pub fn k1mm_gain(m: u64, k: u64) -> IdentityCheck {
    let g = k1mm_separated(m, k) - k1mm_separated(m, k - 1);
    check(
        "k1mm-gain",
        format!("m={m} k={k}"),
        Rational::from_integer(g),
        Rational::from_integer(BigInt::from(m as i64 - 2 * k as i64 + 1)),
    )
}

/// sum_{j<=k} C(2j-1, 2) = (4k+1) k (k-1) / 6.
pub fn odd_binomial_sum(k: u64) -> IdentityCheck {
    let lhs: Rational = (1..=k).map(|j| c(2 * j - 1, 2)).sum();
    let rhs = Rational::new(BigInt::from((4 * k + 1) * k * k.saturating_sub(1)), BigInt::from(6));
    check("odd-binomial-sum", format!("k={k}"), lhs, rhs)
}

/// f(ceil(m/2)) / (2m^2(m-1)) = (8m + 5 + 3/(2 ceil(m/2) - 1)) / (24m).
pub fn k1mm_fraction(m: u64) -> IdentityCheck {
    let k = m.div_ceil(2);
    let lhs = Rational::from_integer(k1mm_separated(m, k)) / r(2 * m * m * (m - 1));
    let rhs = (r(8 * m + 5) + rat(3, 2 * k as i64 - 1)) / r(24 * m);
    check("k1mm-fraction", format!("m={m}"), lhs, rhs)
}

fn owners(g: &Graph) -> Vec<usize> {
    let mut owner = vec![0; g.n()];
    for (i, p) in g.parts().expect("multipartite").iter().enumerate() {
        for &v in p {
            owner[v] = i;
        }
    }
    owner
}

/// For a pair meeting all three parts, the part that meets both edges.
pub fn t_pair_part(owner: &[usize], p: &crate::graph::EdgePair) -> Option<usize> {
    let a = [owner[p.e1.0], owner[p.e1.1]];
    let b = [owner[p.e2.0], owner[p.e2.1]];
    let mut used = [false; 3];
    for &x in a.iter().chain(&b) {
        if x < 3 {
            used[x] = true;
        }
    }
    if !used.iter().all(|&u| u) {
        return None;
    }
    a.iter().copied().find(|x| b.contains(x))
}

/// Counts (pairs, separated) per T-pair part for one ordering.
fn t_pair_counts(g: &Graph, o: &Ordering) -> [(u64, u64); 3] {
    let owner = owners(g);
    let mut out = [(0u64, 0u64); 3];
    for p in g.nonincident_pairs() {
        if let Some(w) = t_pair_part(&owner, &p) {
            out[w].0 += 1;
            if separates(o, &p) {
                out[w].1 += 1;
            }
        }
    }
    out
}

fn ordering_for(sizes: &[usize], pattern: &[usize]) -> (Graph, Ordering) {
    let g = generate(&FamilySpec::Multipartite(sizes.to_vec())).expect("valid shape");
    let perm = pattern_ordering(g.parts().unwrap(), pattern);
    (g, Ordering::linear(perm).expect("pattern ordering"))
}

/// Direct counts on concrete orderings for small parameters.
pub fn recounts() -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    for m in 2..=6u64 {
        let pat: Vec<usize> = (0..m).flat_map(|_| [0, 1]).collect();
        let (g, o) = ordering_for(&[m as usize; 2], &pat);
        let sep = g.nonincident_pairs().iter().filter(|p| separates(&o, p)).count() as u64;
        let formula = r(4) * c(m, 4) + r(5) * c(m, 3) + c(m, 2);
        out.push(check("kmm-recount", format!("m={m}"), r(sep), formula));
    }
    for (m, q) in [(1u64, 2u64), (1, 3), (2, 1), (2, 2), (3, 1), (2, 3), (3, 2), (4, 2)] {
        let mut pat = vec![0];
        for _ in 0..m {
            pat.extend(std::iter::repeat_n(1, q as usize));
            pat.push(0);
        }
        let (g, o) = ordering_for(&[m as usize + 1, (q * m) as usize], &pat);
        let sep = g.nonincident_pairs().iter().filter(|p| separates(&o, p)).count() as u64;
        out.push(check(
            "complete-bipartite-recount",
            format!("m={m} q={q}"),
            r(sep),
            rat(1, 12) * r((2 * m + 1) * m * q - m - 2) * r(m + 1) * r(m * q),
        ));
    }
    for m in 2..=6u64 {
        let pat: Vec<usize> = (0..m).flat_map(|_| [0, 1, 2]).collect();
        let (g, o) = ordering_for(&[m as usize; 3], &pat);
        let counts = t_pair_counts(&g, &o);
        let total: u64 = counts.iter().map(|x| x.0).sum();
        let sep: u64 = counts.iter().map(|x| x.1).sum();
        out.push(check("kmmm-recount-total", format!("m={m}"), r(total), r(6 * m * m) * c(m, 2)));
        out.push(check(
            "kmmm-recount-separated",
            format!("m={m}"),
            r(sep),
            r(24) * c(m, 4) + r(33) * c(m, 3) + r(10) * c(m, 2),
        ));
    }
    for m in 2..=5u64 {
        let mut pat: Vec<usize> = (0..m).flat_map(|_| [0, 1, 2]).collect();
        pat.push(0);
        let (g, o) = ordering_for(&[m as usize + 1, m as usize, m as usize], &pat);
        let counts = t_pair_counts(&g, &o);
        let p = format!("m={m}");
        out.push(check("km1mm-recount-X-total", p.clone(), r(counts[0].0), r(m * m * m * (m + 1))));
        out.push(check(
            "km1mm-recount-YZ-total",
            p.clone(),
            r(counts[1].0 + counts[2].0),
            r(2 * m * m * (m * m - 1)),
        ));
        out.push(check(
            "km1mm-recount-X",
            p.clone(),
            r(counts[0].1),
            r(8) * c(m, 4) + r(15) * c(m, 3) + r(8) * c(m, 2) + r(m),
        ));
        out.push(check(
            "km1mm-recount-YZ",
            p,
            r(counts[1].1 + counts[2].1),
            r(16) * c(m, 4) + r(26) * c(m, 3) + r(10) * c(m, 2),
        ));
    }
    for m in 2..=5u64 {
        for k in 0..=m {
            let mut pat = Vec::new();
            for i in 0..m {
                if i == k {
                    pat.push(0);
                }
                pat.extend([1, 2]);
            }
            if k == m {
                pat.push(0);
            }
            let (g, o) = ordering_for(&[1, m as usize, m as usize], &pat);
            let counts = t_pair_counts(&g, &o);
            out.push(check(
                "k1mm-recount",
                format!("m={m} k={k}"),
                r(counts[1].1 + counts[2].1),
                Rational::from_integer(k1mm_separated(m, k)),
            ));
        }
    }
    out
}

/// Every identity over its full parameter range.
pub fn all_identities() -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    out.extend((2..=50).map(kmm));
    for m in 1..=12 {
        for q in 1..=12 {
            if m * q > 1 {
                out.push(complete_bipartite(m, q));
            }
        }
    }
    out.extend((2..=30).map(kmmm));
    out.extend((2..=30).map(kmmm_count));
    out.extend((2..=30).flat_map(km1mm));
    for m in 2..=30 {
        out.extend((1..=m).map(|k| k1mm_gain(m, k)));
        out.push(k1mm_fraction(m));
    }
    out.extend((1..=50).map(odd_binomial_sum));
    out.extend(recounts());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_identity_holds() {
        let all = all_identities();
        let bad: Vec<_> = all.iter().filter(|c| !c.ok).collect();
        assert!(bad.is_empty(), "{bad:?}");
        assert!(all.len() > 400);
    }

    #[test]
    fn a_wrong_identity_is_caught() {
        let c = check("x", String::new(), rat(1, 2), rat(1, 3));
        assert!(!c.ok);
    }

    #[test]
    fn k1mm_values() {
        assert_eq!(k1mm_separated(2, 1), BigInt::from(4));
        assert_eq!(k1mm_separated(3, 2), BigInt::from(15));
        assert_eq!(k1mm_separated(3, 1), BigInt::from(15));
    }
}
