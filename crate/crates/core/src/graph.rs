//! Labeled simple graphs, the named families, and nonincident edge pairs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// An edge `(u, v)` with `u < v`.
pub type Edge = (usize, usize);

/// Simple undirected graph on vertices `0..n`.
///
/// Edges are kept sorted lexicographically; that order fixes the edge-pair
/// order used everywhere else.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    parts: Option<Vec<Vec<usize>>>,
}

/// Two vertex-disjoint edges with `e1 < e2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgePair {
    pub e1: Edge,
    pub e2: Edge,
}

impl EdgePair {
    pub fn new(a: Edge, b: Edge) -> Self {
        let a = normalize(a);
        let b = normalize(b);
        if a <= b {
            EdgePair { e1: a, e2: b }
        } else {
            EdgePair { e1: b, e2: a }
        }
    }

    pub fn vertices(&self) -> [usize; 4] {
        [self.e1.0, self.e1.1, self.e2.0, self.e2.1]
    }

    pub fn map(&self, perm: &[usize]) -> EdgePair {
        EdgePair::new(
            (perm[self.e1.0], perm[self.e1.1]),
            (perm[self.e2.0], perm[self.e2.1]),
        )
    }
}

impl fmt::Display for EdgePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}-{}, {}-{}}}",
            self.e1.0, self.e1.1, self.e2.0, self.e2.1
        )
    }
}

fn normalize((u, v): Edge) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates, and out-of-range labels.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge {u}-{v} out of range for n = {n}"
                )));
            }
            if !set.insert(normalize((u, v))) {
                return Err(Error::InvalidArgument(format!("duplicate edge {u}-{v}")));
            }
        }
        let edges: Vec<Edge> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            adj,
            parts: None,
        })
    }

    /// Attaches a complete multipartite structure after checking it.
    pub fn with_parts(mut self, parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; self.n];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                if v >= self.n || owner[v] != usize::MAX {
                    return Err(Error::InvalidArgument("parts do not partition V".into()));
                }
                owner[v] = i;
            }
        }
        if owner.contains(&usize::MAX) {
            return Err(Error::InvalidArgument("parts do not cover V".into()));
        }
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) != (owner[u] != owner[v]) {
                    return Err(Error::InvalidArgument(
                        "graph is not complete multipartite on the given parts".into(),
                    ));
                }
            }
        }
        self.parts = Some(parts);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn parts(&self) -> Option<&[Vec<usize>]> {
        self.parts.as_deref()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// All nonincident edge pairs, sorted by the lexicographic edge order.
    pub fn nonincident_pairs(&self) -> Vec<EdgePair> {
        let mut out = Vec::new();
        for (i, &a) in self.edges.iter().enumerate() {
            for &b in &self.edges[i + 1..] {
                if a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1 {
                    out.push(EdgePair { e1: a, e2: b });
                }
            }
        }
        out
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Induced subgraph on `vertices`, relabeled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|(u, v)| index[*u] != usize::MAX && index[*v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        let g = Graph::from_edges(vertices.len().max(1), edges).expect("induced subgraph");
        match &self.parts {
            Some(parts) => {
                let sub: Vec<Vec<usize>> = parts
                    .iter()
                    .map(|p| {
                        p.iter()
                            .filter(|v| index[**v] != usize::MAX)
                            .map(|v| index[*v])
                            .collect::<Vec<_>>()
                    })
                    .filter(|p| !p.is_empty())
                    .collect();
                if sub.len() >= 2 {
                    g.clone().with_parts(sub).unwrap_or(g)
                } else {
                    g
                }
            }
            None => g,
        }
    }

    /// Lexicographically first 4-clique, if any.
    pub fn find_k4(&self) -> Option<[usize; 4]> {
        let n = self.n;
        for a in 0..n {
            for &b in self.adj[a].iter().filter(|&&b| b > a) {
                for &c in self.adj[b].iter().filter(|&&c| c > b) {
                    if !self.has_edge(a, c) {
                        continue;
                    }
                    for &d in self.adj[c].iter().filter(|&&d| d > c) {
                        if self.has_edge(a, d) && self.has_edge(b, d) {
                            return Some([a, b, c, d]);
                        }
                    }
                }
            }
        }
        None
    }

    /// Parts of a complete multipartite structure, detected from the
    /// complement being a disjoint union of cliques. Needs at least two parts.
    pub fn detect_parts(&self) -> Option<Vec<Vec<usize>>> {
        if let Some(p) = &self.parts {
            return Some(p.clone());
        }
        let mut owner = vec![usize::MAX; self.n];
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.n {
            if owner[v] != usize::MAX {
                continue;
            }
            let part: Vec<usize> = (0..self.n)
                .filter(|&u| u == v || !self.has_edge(u, v))
                .collect();
            for &u in &part {
                if owner[u] != usize::MAX {
                    return None;
                }
                owner[u] = parts.len();
            }
            parts.push(part);
        }
        if parts.len() < 2 {
            return None;
        }
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) != (owner[u] != owner[v]) {
                    return None;
                }
            }
        }
        Some(parts)
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// True iff the graph is a tree whose non-leaf vertices induce a path.
    pub fn is_caterpillar(&self) -> Result<bool> {
        if !self.is_tree() {
            return Err(Error::NotATree(format!(
                "{} vertices, {} edges",
                self.n,
                self.edges.len()
            )));
        }
        let spine: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) > 1).collect();
        Ok(spine.iter().all(|&v| {
            self.adj[v].iter().filter(|w| self.degree(**w) > 1).count() <= 2
        }))
    }

    /// Serializes as the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("# n = {}\n", self.n);
        for (u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

/// Parses the edge-list format: one `u v` per line, `#` comments, blank lines ignored.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    let mut max_label = None::<usize>;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("expected a nonnegative integer, found {s:?}"),
            })
        };
        if fields.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected two vertex labels, found {}", fields.len()),
            });
        }
        let u = parse(fields[0])?;
        let v = parse(fields[1])?;
        if u == v {
            return Err(Error::Parse {
                line,
                message: format!("self-loop at vertex {u}"),
            });
        }
        if !seen.insert(normalize((u, v))) {
            return Err(Error::Parse {
                line,
                message: format!("duplicate edge {u} {v}"),
            });
        }
        max_label = Some(max_label.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    let n = match max_label {
        Some(m) => m + 1,
        None => {
            return Err(Error::Parse {
                line: 0,
                message: "no edges".into(),
            })
        }
    };
    Graph::from_edges(n, edges)
}

/// A named graph family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Complete(usize),
    Cycle(usize),
    /// Complete multipartite graph with the given part sizes (two or more parts).
    Multipartite(Vec<usize>),
    Petersen,
    Heawood,
    /// K'_{1,n}: the star K_{1,n} with every edge subdivided once.
    SubdividedStar(usize),
    Path(usize),
    Tree(Vec<Edge>),
}

impl FamilySpec {
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        FamilySpec::Multipartite(vec![a, b])
    }

    pub fn complete_tripartite(a: usize, b: usize, c: usize) -> Self {
        FamilySpec::Multipartite(vec![a, b, c])
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete(n) => write!(f, "Kn:{n}"),
            FamilySpec::Cycle(n) => write!(f, "C:{n}"),
            FamilySpec::Multipartite(p) => {
                let s: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                write!(f, "K:{}", s.join(","))
            }
            FamilySpec::Petersen => write!(f, "petersen"),
            FamilySpec::Heawood => write!(f, "heawood"),
            FamilySpec::SubdividedStar(n) => write!(f, "star-subdiv:{n}"),
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Tree(e) => write!(f, "tree({} edges)", e.len()),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: &str| Error::InvalidFamily(format!("{s:?}: {msg}"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad("expected integer"));
        match s.to_ascii_lowercase().as_str() {
            "petersen" => return Ok(FamilySpec::Petersen),
            "heawood" => return Ok(FamilySpec::Heawood),
            _ => {}
        }
        let (tag, args) = s
            .split_once(':')
            .ok_or_else(|| bad("expected TAG:PARAMS or a named graph"))?;
        match tag {
            "K" => {
                let parts = args.split(',').map(num).collect::<Result<Vec<_>>>()?;
                if parts.len() == 1 {
                    Ok(FamilySpec::Complete(parts[0]))
                } else {
                    Ok(FamilySpec::Multipartite(parts))
                }
            }
            "Kn" => Ok(FamilySpec::Complete(num(args)?)),
            "C" => Ok(FamilySpec::Cycle(num(args)?)),
            "star-subdiv" => Ok(FamilySpec::SubdividedStar(num(args)?)),
            "path" | "P" => Ok(FamilySpec::Path(num(args)?)),
            _ => Err(bad("unknown family tag")),
        }
    }
}

/// Vertices of the Petersen graph: the 2-subsets of {1..5} in lexicographic order.
pub fn petersen_subsets() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 1..=5 {
        for b in a + 1..=5 {
            out.push((a, b));
        }
    }
    out
}

/// Fano lines in the cyclic form {i, i+1, i+3} (mod 7, points 1..7).
pub const FANO_LINES: [[usize; 3]; 7] = [
    [1, 2, 4],
    [2, 3, 5],
    [3, 4, 6],
    [4, 5, 7],
    [5, 6, 1],
    [6, 7, 2],
    [7, 1, 3],
];

/// Label of a Petersen vertex, e.g. `"12"`.
pub fn petersen_label(v: usize) -> String {
    let (a, b) = petersen_subsets()[v];
    format!("{a}{b}")
}

/// Vertex for a Petersen label; digit order does not matter (`"51"` = `"15"`).
pub fn petersen_vertex(label: &str) -> Result<usize> {
    let digits: Vec<usize> = label
        .trim()
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidArgument(format!("bad Petersen label {label:?}")))?;
    if digits.len() != 2 {
        return Err(Error::InvalidArgument(format!("bad Petersen label {label:?}")));
    }
    let key = (digits[0].min(digits[1]), digits[0].max(digits[1]));
    petersen_subsets()
        .iter()
        .position(|&s| s == key)
        .ok_or_else(|| Error::InvalidArgument(format!("bad Petersen label {label:?}")))
}

/// Heawood vertex for a label: a point `"1"`..`"7"` or a line like `"124"`/`"713"`.
pub fn heawood_vertex(label: &str) -> Result<usize> {
    let bad = || Error::InvalidArgument(format!("bad Heawood label {label:?}"));
    let digits: Vec<usize> = label
        .trim()
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect::<Option<_>>()
        .ok_or_else(bad)?;
    match digits.len() {
        1 if (1..=7).contains(&digits[0]) => Ok(digits[0] - 1),
        3 => {
            let mut key = digits.clone();
            key.sort_unstable();
            FANO_LINES
                .iter()
                .position(|line| {
                    let mut l = line.to_vec();
                    l.sort_unstable();
                    l == key
                })
                .map(|i| 7 + i)
                .ok_or_else(bad)
        }
        _ => Err(bad()),
    }
}

pub fn heawood_label(v: usize) -> String {
    if v < 7 {
        (v + 1).to_string()
    } else {
        FANO_LINES[v - 7].iter().map(|d| d.to_string()).collect()
    }
}

/// The canonical labeled graph of a family.
pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    let bad = |msg: String| Err(Error::InvalidFamily(msg));
    match spec {
        FamilySpec::Complete(n) => {
            if *n < 1 {
                return bad("complete graph needs n >= 1".into());
            }
            let mut edges = Vec::new();
            for u in 0..*n {
                for v in u + 1..*n {
                    edges.push((u, v));
                }
            }
            Graph::from_edges(*n, edges)
        }
        FamilySpec::Cycle(n) => {
            if *n < 3 {
                return bad(format!("cycle needs n >= 3, got {n}"));
            }
            Graph::from_edges(*n, (0..*n).map(|i| (i, (i + 1) % n)))
        }
        FamilySpec::Path(n) => {
            if *n < 1 {
                return bad("path needs n >= 1".into());
            }
            Graph::from_edges(*n, (1..*n).map(|i| (i - 1, i)))
        }
        FamilySpec::Multipartite(sizes) => {
            if sizes.len() < 2 || sizes.contains(&0) {
                return bad(format!(
                    "complete multipartite needs >= 2 nonempty parts, got {sizes:?}"
                ));
            }
            let mut parts = Vec::new();
            let mut next = 0;
            for &s in sizes {
                parts.push((next..next + s).collect::<Vec<_>>());
                next += s;
            }
            let mut edges = Vec::new();
            for (i, p) in parts.iter().enumerate() {
                for q in &parts[i + 1..] {
                    for &u in p {
                        for &v in q {
                            edges.push((u, v));
                        }
                    }
                }
            }
            Graph::from_edges(next, edges)?.with_parts(parts)
        }
        FamilySpec::Petersen => {
            let subsets = petersen_subsets();
            let mut edges = Vec::new();
            for (i, &(a, b)) in subsets.iter().enumerate() {
                for (j, &(c, d)) in subsets.iter().enumerate().skip(i + 1) {
                    if a != c && a != d && b != c && b != d {
                        edges.push((i, j));
                    }
                }
            }
            Graph::from_edges(10, edges)
        }
        FamilySpec::Heawood => {
            let mut edges = Vec::new();
            for (i, line) in FANO_LINES.iter().enumerate() {
                for &p in line {
                    edges.push((p - 1, 7 + i));
                }
            }
            Graph::from_edges(14, edges)
        }
        FamilySpec::SubdividedStar(n) => {
            if *n < 1 {
                return bad("subdivided star needs n >= 1".into());
            }
            // center 0, subdividers 1..=n, leaves n+1..=2n
            let mut edges = Vec::new();
            for i in 1..=*n {
                edges.push((0, i));
                edges.push((i, n + i));
            }
            Graph::from_edges(2 * n + 1, edges)
        }
        FamilySpec::Tree(edges) => {
            let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(1);
            let g = Graph::from_edges(n, edges.iter().copied())?;
            if !g.is_tree() {
                return bad("edge list is not a tree".into());
            }
            Ok(g)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom2(x: usize) -> usize {
        x * x.saturating_sub(1) / 2
    }

    #[test]
    fn family_pair_counts() {
        let c4 = generate(&FamilySpec::Cycle(4)).unwrap();
        assert_eq!(c4.edges().len(), 4);
        assert_eq!(c4.nonincident_pairs().len(), 2);

        let p = generate(&FamilySpec::Petersen).unwrap();
        assert_eq!((p.n(), p.edges().len()), (10, 15));
        assert_eq!(p.nonincident_pairs().len(), 75);

        let h = generate(&FamilySpec::Heawood).unwrap();
        assert_eq!((h.n(), h.edges().len()), (14, 21));
        assert_eq!(h.nonincident_pairs().len(), 168);
        assert!((0..14).all(|v| h.degree(v) == 3));
    }

    #[test]
    fn pair_counts_small() {
        assert_eq!(generate(&FamilySpec::Complete(4)).unwrap().nonincident_pairs().len(), 3);
        assert_eq!(generate(&FamilySpec::Path(4)).unwrap().nonincident_pairs().len(), 1);
        assert!(generate(&FamilySpec::Complete(3)).unwrap().nonincident_pairs().is_empty());
        let k33 = generate(&FamilySpec::complete_bipartite(3, 3)).unwrap();
        assert_eq!(k33.nonincident_pairs().len(), 18);
    }

    #[test]
    fn bipartite_pair_count_closed_form() {
        for a in 2..=8 {
            for b in 2..=8 {
                let g = generate(&FamilySpec::complete_bipartite(a, b)).unwrap();
                assert_eq!(g.nonincident_pairs().len(), 2 * binom2(a) * binom2(b));
            }
        }
    }

    #[test]
    fn pairs_are_disjoint_edges() {
        let specs = [
            FamilySpec::Petersen,
            FamilySpec::Heawood,
            FamilySpec::Cycle(7),
            FamilySpec::complete_tripartite(2, 3, 2),
            FamilySpec::SubdividedStar(4),
        ];
        for spec in &specs {
            let g = generate(spec).unwrap();
            for p in g.nonincident_pairs() {
                let v = p.vertices();
                let set: BTreeSet<_> = v.iter().collect();
                assert_eq!(set.len(), 4);
                assert!(g.has_edge(p.e1.0, p.e1.1) && g.has_edge(p.e2.0, p.e2.1));
                assert!(p.e1 < p.e2);
            }
            assert_eq!(generate(spec).unwrap(), g);
        }
    }

    #[test]
    fn parse_edge_list() {
        let g = parse_graph("0 1\n2 3").unwrap();
        assert_eq!((g.n(), g.edges().len(), g.nonincident_pairs().len()), (4, 2, 1));
        let g = parse_graph("# comment\n\n0 1 # trailing\n1 2\n").unwrap();
        assert_eq!(g.edges().len(), 2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(parse_graph("0 0"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("0 1\n1 0"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("0 1\n\n1 x"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_graph("0 1 2"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn caterpillars() {
        assert!(generate(&FamilySpec::Path(6)).unwrap().is_caterpillar().unwrap());
        assert!(!generate(&FamilySpec::SubdividedStar(3)).unwrap().is_caterpillar().unwrap());
        let star = Graph::from_edges(6, (1..6).map(|i| (0, i))).unwrap();
        assert!(star.is_caterpillar().unwrap());
        assert!(generate(&FamilySpec::Cycle(5)).unwrap().is_caterpillar().is_err());
    }

    #[test]
    fn family_grammar() {
        assert_eq!("K:3,3".parse::<FamilySpec>().unwrap(), FamilySpec::complete_bipartite(3, 3));
        assert_eq!("Kn:5".parse::<FamilySpec>().unwrap(), FamilySpec::Complete(5));
        assert_eq!("C:7".parse::<FamilySpec>().unwrap(), FamilySpec::Cycle(7));
        assert_eq!("petersen".parse::<FamilySpec>().unwrap(), FamilySpec::Petersen);
        assert_eq!(
            "star-subdiv:4".parse::<FamilySpec>().unwrap(),
            FamilySpec::SubdividedStar(4)
        );
        assert!("Q:3".parse::<FamilySpec>().is_err());
        assert!(generate(&FamilySpec::Cycle(2)).is_err());
        assert!(generate(&FamilySpec::Multipartite(vec![3])).is_err());
    }

    #[test]
    fn multipartite_detection() {
        let g = generate(&FamilySpec::complete_tripartite(1, 2, 2)).unwrap();
        let stripped = Graph::from_edges(g.n(), g.edges().iter().copied()).unwrap();
        assert_eq!(stripped.detect_parts().unwrap(), vec![vec![0], vec![1, 2], vec![3, 4]]);
        assert!(generate(&FamilySpec::Cycle(5)).unwrap().detect_parts().is_none());
        assert_eq!(generate(&FamilySpec::Complete(5)).unwrap().find_k4(), Some([0, 1, 2, 3]));
        assert_eq!(generate(&FamilySpec::complete_bipartite(3, 3)).unwrap().find_k4(), None);
    }

    #[test]
    fn named_labels() {
        assert_eq!(petersen_vertex("51").unwrap(), petersen_vertex("15").unwrap());
        assert_eq!(petersen_label(0), "12");
        assert_eq!(heawood_vertex("713").unwrap(), 13);
        assert_eq!(heawood_vertex("1").unwrap(), 0);
        assert_eq!(heawood_label(7), "124");
    }
}
