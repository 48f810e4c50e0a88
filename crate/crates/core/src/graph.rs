//! Simple undirected graphs and vertex subsets.
//!
//! Vertices are `0..n` internally. Both supported file formats number
//! vertices from 1.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A subset of `0..n`, stored as a bitset.
///
/// Sets compare by the integer whose bit `v` is set iff `v` is a member,
/// which is the canonical order used throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    /// Builds a set from members; panics if a member is `>= n`.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vertices: I) -> Self {
        let mut s = Self::new(n);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    /// Set whose members are the one-bits of `mask` (requires `n <= 64`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "from_mask needs n <= 64");
        let mut s = Self::new(n);
        if n > 0 {
            let keep = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            s.words[0] = mask & keep;
        }
        s
    }

    /// Size of the universe `0..n` this set lives in.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.n, "vertex {v} out of range 0..{}", self.n);
        let (w, b) = (v / 64, v % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.n {
            return false;
        }
        let (w, b) = (v / 64, v % 64);
        let had = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        had
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] & (1 << (v % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn check_universe(&self, other: &VertexSet) {
        assert_eq!(self.n, other.n, "vertex sets over different universes");
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.check_universe(other);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        VertexSet { n: self.n, words }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.check_universe(other);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        VertexSet { n: self.n, words }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.check_universe(other);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & !b)
            .collect();
        VertexSet { n: self.n, words }
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet::full(self.n).difference(self)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Space-separated 1-indexed members, the line format of the CLI.
    pub fn to_one_indexed_string(&self) -> String {
        let parts: Vec<String> = self.iter().map(|v| (v + 1).to_string()).collect();
        parts.join(" ")
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Input file format for graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    /// `p edge <n> <m>` header, `e <u> <v>` lines, `c` comments.
    DimacsEdge,
    /// One `<u> <v>` pair per line; `n` is the largest id seen.
    EdgeList,
}

impl GraphFormat {
    /// Guesses the format: DIMACS if any non-blank line starts with `p`, `e` or `c`.
    pub fn detect(text: &str) -> GraphFormat {
        let dimacs = text
            .lines()
            .map(str::trim_start)
            .any(|l| l.starts_with('p') || l.starts_with('e') || l.starts_with('c'));
        if dimacs {
            GraphFormat::DimacsEdge
        } else {
            GraphFormat::EdgeList
        }
    }
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "dimacs" | "dimacs-edge" => Ok(GraphFormat::DimacsEdge),
            "edge-list" | "edges" => Ok(GraphFormat::EdgeList),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

/// A simple undirected graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    m_edges: usize,
}

impl Graph {
    /// Builds a graph from 0-indexed edges. Duplicate edges collapse;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut m2 = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            m2 += list.len();
        }
        Ok(Graph {
            adjacency,
            m_edges: m2 / 2,
        })
    }

    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Result<Graph> {
        Graph::from_edges(n, std::iter::empty())
    }

    pub fn complete(n: usize) -> Result<Graph> {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// Cycle `C_n` with edges `{i, i+1 mod n}`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidConfig(format!("cycle needs n >= 3, got {n}")));
        }
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Result<Graph> {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Result<Graph> {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i)))
    }

    pub fn parse(text: &str, format: GraphFormat) -> Result<Graph> {
        match format {
            GraphFormat::DimacsEdge => parse_dimacs_edge(text),
            GraphFormat::EdgeList => parse_edge_list(text),
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn m_edges(&self) -> usize {
        self.m_edges
    }

    /// Open neighborhood `N(v)`, ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// `N[v] = {v} ∪ N(v)`.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let mut s = VertexSet::from_vertices(self.n(), self.adjacency[v].iter().copied());
        s.insert(v);
        Ok(s)
    }

    /// `N[U]`, the union of the closed neighborhoods of the members of `u`.
    pub fn closed_neighborhood_of_set(&self, u: &VertexSet) -> Result<VertexSet> {
        self.check_set(u)?;
        let mut out = VertexSet::new(self.n());
        for v in u.iter() {
            out.insert(v);
            for &w in &self.adjacency[v] {
                out.insert(w);
            }
        }
        Ok(out)
    }

    /// `Δ(G)`.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        VertexSet::from_vertices(
            self.n(),
            (0..self.n()).filter(|&v| self.adjacency[v].is_empty()),
        )
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.n()
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n(), self.m_edges);
        for (u, v) in self.edges() {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        out
    }

    pub fn to_edge_list(&self) -> String {
        self.edges()
            .map(|(u, v)| format!("{} {}\n", u + 1, v + 1))
            .collect()
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    pub(crate) fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.universe() == self.n() {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                expected: self.n(),
                found: s.universe(),
            })
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_id(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse::<usize>()
        .map_err(|_| syntax(line, format!("invalid {what} `{tok}`")))
}

/// Converts a 1-indexed file id to an internal vertex.
fn to_vertex(id: usize, n: usize) -> Result<usize> {
    if id == 0 || id > n {
        Err(Error::VertexOutOfRange { vertex: id, n })
    } else {
        Ok(id - 1)
    }
}

fn parse_dimacs_edge(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some(t) if t.starts_with('c') => continue,
            Some("p") => {
                if n.is_some() {
                    return Err(syntax(line, "duplicate problem line"));
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    other => {
                        return Err(syntax(
                            line,
                            format!("expected `p edge`, found `p {}`", other.unwrap_or("")),
                        ))
                    }
                }
                let count = parse_id(toks.next(), line, "vertex count")?;
                parse_id(toks.next(), line, "edge count")?;
                if toks.next().is_some() {
                    return Err(syntax(line, "trailing tokens after problem line"));
                }
                if count == 0 {
                    return Err(Error::EmptyGraph);
                }
                n = Some(count);
            }
            Some("e") => {
                let count = n.ok_or_else(|| syntax(line, "edge before problem line"))?;
                let u = parse_id(toks.next(), line, "endpoint")?;
                let v = parse_id(toks.next(), line, "endpoint")?;
                if toks.next().is_some() {
                    return Err(syntax(line, "trailing tokens after edge"));
                }
                let (u, v) = (to_vertex(u, count)?, to_vertex(v, count)?);
                if u == v {
                    return Err(Error::SelfLoop { vertex: u + 1 });
                }
                edges.push((u, v));
            }
            Some(other) => return Err(syntax(line, format!("unexpected token `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| syntax(text.lines().count().max(1), "missing problem line"))?;
    Graph::from_edges(n, edges)
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut ids = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        let Some(first) = toks.next() else { continue };
        let u = parse_id(Some(first), line, "endpoint")?;
        let v = parse_id(toks.next(), line, "endpoint")?;
        if toks.next().is_some() {
            return Err(syntax(line, "expected exactly two vertex ids"));
        }
        if u == 0 || v == 0 {
            return Err(Error::VertexOutOfRange {
                vertex: 0,
                n: u.max(v),
            });
        }
        if u == v {
            return Err(Error::SelfLoop { vertex: u });
        }
        ids.push((u - 1, v - 1));
    }
    let n = ids
        .iter()
        .map(|&(u, v)| u.max(v) + 1)
        .max()
        .ok_or(Error::EmptyGraph)?;
    Graph::from_edges(n, ids)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied())
    }

    #[test]
    fn parses_dimacs_path() {
        let g = Graph::parse("p edge 3 2\ne 1 2\ne 2 3\n", GraphFormat::DimacsEdge).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(g, Graph::path(3).unwrap());
    }

    #[test]
    fn parses_edge_list_triangle() {
        let g = Graph::parse("1 2\n2 3\n1 3", GraphFormat::EdgeList).unwrap();
        assert_eq!(g, Graph::complete(3).unwrap());
    }

    #[test]
    fn rejects_self_loops() {
        let err = Graph::parse("p edge 2 1\ne 1 1\n", GraphFormat::DimacsEdge).unwrap_err();
        // parse errors carry ids as written in the file
        assert_eq!(err, Error::SelfLoop { vertex: 1 });
        assert!(matches!(
            Graph::parse("2 2\n", GraphFormat::EdgeList),
            Err(Error::SelfLoop { .. })
        ));
    }

    #[test]
    fn reports_line_numbers_and_ranges() {
        let err = Graph::parse("c hi\np edge 3 1\ne 1 x\n", GraphFormat::DimacsEdge).unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err:?}");
        let err = Graph::parse("p edge 3 1\ne 1 4\n", GraphFormat::DimacsEdge).unwrap_err();
        assert_eq!(err, Error::VertexOutOfRange { vertex: 4, n: 3 });
        let err = Graph::parse("e 1 2\n", GraphFormat::DimacsEdge).unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, .. }));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::parse("p edge 2 3\ne 1 2\ne 2 1\ne 1 2\n", GraphFormat::DimacsEdge).unwrap();
        assert_eq!(g.m_edges(), 1);
        assert_eq!(g.neighbors(0), &[1]);
    }

    #[test]
    fn detects_format() {
        assert_eq!(
            GraphFormat::detect("c x\np edge 1 0\n"),
            GraphFormat::DimacsEdge
        );
        assert_eq!(GraphFormat::detect("1 2\n"), GraphFormat::EdgeList);
    }

    #[test]
    fn closed_neighborhoods() {
        let p3 = Graph::path(3).unwrap();
        assert_eq!(p3.closed_neighborhood(1).unwrap(), set(3, &[0, 1, 2]));
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.closed_neighborhood(0).unwrap(), set(3, &[0, 1, 2]));
        let star = Graph::star(3).unwrap();
        assert_eq!(star.closed_neighborhood(1).unwrap(), set(4, &[0, 1]));
        assert!(matches!(
            p3.closed_neighborhood(3),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn closed_neighborhood_of_sets() {
        let p3 = Graph::path(3).unwrap();
        assert_eq!(
            p3.closed_neighborhood_of_set(&set(3, &[1])).unwrap(),
            set(3, &[0, 1, 2])
        );
        assert_eq!(
            p3.closed_neighborhood_of_set(&set(3, &[0])).unwrap(),
            set(3, &[0, 1])
        );
        assert!(p3
            .closed_neighborhood_of_set(&VertexSet::new(3))
            .unwrap()
            .is_empty());
        assert!(p3.closed_neighborhood_of_set(&VertexSet::new(4)).is_err());
    }

    #[test]
    fn degrees() {
        assert_eq!(Graph::star(3).unwrap().max_degree(), 3);
        assert_eq!(Graph::cycle(6).unwrap().max_degree(), 2);
        assert_eq!(Graph::complete(4).unwrap().max_degree(), 3);
    }

    #[test]
    fn isolated() {
        assert!(Graph::complete(3).unwrap().isolated_vertices().is_empty());
        assert_eq!(
            Graph::empty(2).unwrap().isolated_vertices(),
            set(2, &[0, 1])
        );
        assert!(Graph::path(3).unwrap().isolated_vertices().is_empty());
    }

    #[test]
    fn vertex_set_order_is_numeric_mask_order() {
        let mut sets = vec![set(3, &[0, 2]), set(3, &[1]), set(3, &[0])];
        sets.sort();
        assert_eq!(sets, vec![set(3, &[0]), set(3, &[1]), set(3, &[0, 2])]);
        let big = VertexSet::from_vertices(70, [65]);
        assert!(VertexSet::from_vertices(70, [0, 1, 2]) < big);
    }

    #[test]
    fn vertex_set_algebra() {
        let a = set(5, &[0, 1, 2]);
        let b = set(5, &[2, 3]);
        assert_eq!(a.union(&b), set(5, &[0, 1, 2, 3]));
        assert_eq!(a.difference(&b), set(5, &[0, 1]));
        assert_eq!(a.intersection(&b), set(5, &[2]));
        assert!(set(5, &[2]).is_subset(&a));
        assert!(!b.is_subset(&a));
        assert_eq!(a.complement(), set(5, &[3, 4]));
        assert_eq!(a.len(), 3);
        assert_eq!(set(5, &[0, 2]).to_one_indexed_string(), "1 3");
    }
}
