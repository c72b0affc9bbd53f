//! Simple undirected graphs, DIMACS `.col` I/O and degree statistics.
//!
//! Vertices are `0..n` internally. DIMACS files number them from 1; the
//! offset is applied only when reading and writing text.

use std::fmt::Write as _;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Immutable simple undirected graph stored as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    m: usize,
    max_degree: usize,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            m: 0,
            max_degree: 0,
        }
    }

    /// Builds a graph from 0-based edge pairs. Duplicate edges (in either
    /// orientation) are merged; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::contract(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::contract(format!("self-loop on vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self::from_raw_adjacency(adjacency))
    }

    fn from_raw_adjacency(mut adjacency: Vec<Vec<usize>>) -> Self {
        let mut half_degree_sum = 0;
        let mut max_degree = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            list.shrink_to_fit();
            half_degree_sum += list.len();
            max_degree = max_degree.max(list.len());
        }
        Graph {
            adjacency,
            m: half_degree_sum / 2,
            max_degree,
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Maximum degree Δ.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Serializes to DIMACS: `p edge n m` then one `e u v` line per edge, `u < v`, 1-based.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::with_capacity(16 + self.m * 12);
        let _ = writeln!(out, "p edge {} {}", self.n(), self.m);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    /// Erdős–Rényi G(n, p) sample.
    pub fn random_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(p) {
                    adjacency[u].push(v);
                    adjacency[v].push(u);
                }
            }
        }
        Self::from_raw_adjacency(adjacency)
    }

    /// Uniform sample of a simple graph with exactly `m` edges, G(n, m).
    pub fn random_gnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Self> {
        let capacity = n * n.saturating_sub(1) / 2;
        if m > capacity {
            return Err(Error::contract(format!(
                "{m} edges requested but only {capacity} fit on {n} vertices"
            )));
        }
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut present = std::collections::HashSet::with_capacity(m);
        while present.len() < m {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u == v {
                continue;
            }
            let key = (u.min(v), u.max(v));
            if present.insert(key) {
                adjacency[key.0].push(key.1);
                adjacency[key.1].push(key.0);
            }
        }
        Ok(Self::from_raw_adjacency(adjacency))
    }
}

/// Non-fatal findings while reading a DIMACS file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    DuplicateEdge { line: usize, u: usize, v: usize },
    EdgeCountMismatch { declared: usize, actual: usize },
}

impl std::fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseWarning::DuplicateEdge { line, u, v } => {
                write!(f, "duplicate edge {u}-{v} at line {line} merged")
            }
            ParseWarning::EdgeCountMismatch { declared, actual } => write!(
                f,
                "problem line declares {declared} edges but {actual} distinct edges were read"
            ),
        }
    }
}

/// Parses DIMACS `.col` text, logging any warnings through `log`.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let (graph, warnings) = parse_dimacs_with_warnings(text)?;
    for w in &warnings {
        log::warn!("{w}");
    }
    Ok(graph)
}

/// Parses DIMACS `.col` text and returns the warnings instead of logging them.
///
/// Accepts `c` comment lines, a single `p edge <n> <m>` line (`p col` is
/// also accepted) and `e <u> <v>` lines with 1-based endpoints.
pub fn parse_dimacs_with_warnings(text: &str) -> Result<(Graph, Vec<ParseWarning>)> {
    let mut header: Option<(usize, usize)> = None;
    let mut adjacency: Vec<Vec<usize>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let mut tokens = raw.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(Error::parse(line_no, "second problem line"));
                }
                let format = tokens
                    .next()
                    .ok_or_else(|| Error::parse(line_no, "problem line missing format"))?;
                if format != "edge" && format != "col" {
                    return Err(Error::parse(
                        line_no,
                        format!("unsupported problem format `{format}`"),
                    ));
                }
                let n = parse_count(tokens.next(), line_no, "vertex count")?;
                let m = parse_count(tokens.next(), line_no, "edge count")?;
                if tokens.next().is_some() {
                    return Err(Error::parse(line_no, "trailing tokens on problem line"));
                }
                header = Some((n, m));
                adjacency = vec![Vec::new(); n];
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(Error::parse(line_no, "edge before problem line (missing `p` line)"));
                };
                let u = parse_count(tokens.next(), line_no, "edge endpoint")?;
                let v = parse_count(tokens.next(), line_no, "edge endpoint")?;
                if tokens.next().is_some() {
                    return Err(Error::parse(line_no, "trailing tokens on edge line"));
                }
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(Error::parse(line_no, "endpoint out of range"));
                }
                if u == v {
                    return Err(Error::parse(line_no, format!("self-loop on vertex {u}")));
                }
                let key = (u.min(v) - 1, u.max(v) - 1);
                if seen.insert(key) {
                    adjacency[key.0].push(key.1);
                    adjacency[key.1].push(key.0);
                } else {
                    warnings.push(ParseWarning::DuplicateEdge { line: line_no, u, v });
                }
            }
            other => {
                return Err(Error::parse(line_no, format!("malformed token `{other}`")));
            }
        }
    }

    let Some((_, declared)) = header else {
        return Err(Error::parse(text.lines().count().max(1), "missing `p` line"));
    };
    let graph = Graph::from_raw_adjacency(adjacency);
    if graph.m() != declared {
        warnings.push(ParseWarning::EdgeCountMismatch {
            declared,
            actual: graph.m(),
        });
    }
    Ok((graph, warnings))
}

fn parse_count(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("malformed {what} `{token}`")))
}

/// Mean, population standard deviation and coefficient of variation (in
/// percent) of the vertex degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegreeStats {
    pub mean: f64,
    pub stddev: f64,
    pub cv: f64,
}

pub fn degree_stats(g: &Graph) -> Result<DegreeStats> {
    let n = g.n();
    if n == 0 {
        return Err(Error::contract("degree statistics need at least one vertex"));
    }
    let mean = 2.0 * g.m() as f64 / n as f64;
    if mean == 0.0 {
        return Err(Error::ZeroMeanDegree);
    }
    let var = (0..n)
        .map(|v| {
            let d = g.degree(v) as f64 - mean;
            d * d
        })
        .sum::<f64>()
        / n as f64;
    let stddev = var.sqrt();
    Ok(DegreeStats {
        mean,
        stddev,
        cv: 100.0 * stddev / mean,
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn assert_invariants(g: &Graph) {
        let mut total = 0;
        for v in 0..g.n() {
            let list = g.neighbors(v);
            assert!(list.windows(2).all(|w| w[0] < w[1]), "sorted, no duplicates");
            for &u in list {
                assert_ne!(u, v);
                assert!(g.neighbors(u).contains(&v), "symmetric");
            }
            total += list.len();
        }
        assert_eq!(g.m() * 2, total);
        assert_eq!(g.max_degree(), (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0));
    }

    #[test]
    fn parses_triangle() {
        let g = parse_dimacs("p edge 3 3\ne 1 2\ne 2 3\ne 1 3").unwrap();
        assert_eq!((g.n(), g.m(), g.max_degree()), (3, 3, 2));
        assert_invariants(&g);
    }

    #[test]
    fn duplicate_edge_is_merged_with_warning() {
        let (g, warnings) = parse_dimacs_with_warnings("p edge 2 2\ne 1 2\ne 2 1").unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        assert!(matches!(warnings[0], ParseWarning::DuplicateEdge { line: 3, .. }));
        assert!(warnings.contains(&ParseWarning::EdgeCountMismatch { declared: 2, actual: 1 }));
    }

    #[test]
    fn endpoint_out_of_range() {
        let err = parse_dimacs("p edge 2 1\ne 1 3").unwrap_err();
        assert_eq!(err.to_string(), "endpoint out of range at line 2");
    }

    #[test]
    fn other_parse_errors() {
        assert!(parse_dimacs("c nothing here\n").unwrap_err().to_string().contains("missing `p` line"));
        assert!(parse_dimacs("e 1 2\n").unwrap_err().to_string().contains("missing `p` line"));
        let err = parse_dimacs("p edge 3 1\ne 2 2").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_dimacs("p edge 3 1\nc ok\ne 1 x").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_dimacs("p edge 3 1\nq 1 2").unwrap_err();
        assert!(err.to_string().contains("malformed token"));
    }

    #[test]
    fn accepts_comments_blank_lines_and_col_format() {
        let g = parse_dimacs("c header\n\np col 4 2\nc mid\ne 1 2\n  e 3 4  \n").unwrap();
        assert_eq!((g.n(), g.m()), (4, 2));
    }

    #[test]
    fn writer_emits_sorted_one_based_edges() {
        let g = Graph::from_edges(3, [(2, 0), (1, 0)]).unwrap();
        assert_eq!(g.to_dimacs(), "p edge 3 2\ne 1 2\ne 1 3\n");
    }

    #[test]
    fn from_edges_rejects_loops() {
        assert!(Graph::from_edges(2, [(1, 1)]).is_err());
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }

    #[test]
    fn degree_stats_examples() {
        let s = degree_stats(&fixtures::triangle()).unwrap();
        assert_eq!((s.mean, s.stddev, s.cv), (2.0, 0.0, 0.0));

        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let s = degree_stats(&star).unwrap();
        // degrees 3,1,1,1: squared deviations 2.25 + 3 * 0.25 = 3.0 over 4 vertices
        let expected_sd = (3.0f64 / 4.0).sqrt();
        assert!((s.mean - 1.5).abs() < 1e-12);
        assert!((s.stddev - expected_sd).abs() < 1e-12);
        assert!((s.cv - 100.0 * expected_sd / 1.5).abs() < 1e-9);
        assert!((s.cv - 57.735).abs() < 1e-3);

        assert!(matches!(degree_stats(&Graph::empty(2)), Err(Error::ZeroMeanDegree)));
        assert!(degree_stats(&Graph::empty(0)).is_err());
    }

    #[test]
    fn gnm_has_exact_edge_count() {
        let mut rng = crate::rng::seeded(7);
        let g = Graph::random_gnm(50, 300, &mut rng).unwrap();
        assert_eq!(g.m(), 300);
        assert_invariants(&g);
        assert!(Graph::random_gnm(3, 4, &mut rng).is_err());
    }

    proptest! {
        #[test]
        fn dimacs_round_trip(n in 1usize..40, raw in proptest::collection::vec((0usize..40, 0usize..40), 0..120)) {
            let edges: Vec<_> = raw.into_iter().map(|(u, v)| (u % n, v % n)).filter(|(u, v)| u != v).collect();
            let g = Graph::from_edges(n, edges).unwrap();
            assert_invariants(&g);
            let text = g.to_dimacs();
            let (back, warnings) = parse_dimacs_with_warnings(&text).unwrap();
            prop_assert!(warnings.is_empty());
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(back.to_dimacs(), text);
        }

        #[test]
        fn parsed_graphs_satisfy_invariants(n in 1usize..20, raw in proptest::collection::vec((1usize..20, 1usize..20), 0..60)) {
            let mut text = format!("p edge {n} {}\n", raw.len());
            for (u, v) in raw.iter().map(|&(u, v)| ((u - 1) % n + 1, (v - 1) % n + 1)).filter(|(u, v)| u != v) {
                text.push_str(&format!("e {u} {v}\n"));
            }
            let g = parse_dimacs(&text).unwrap();
            assert_invariants(&g);
        }
    }
}
