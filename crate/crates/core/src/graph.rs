//! Signed graph model, matrix constructions, switching and exact balance
//! detection.
//!
//! A [`SignedGraph`] is an undirected simple graph on the dense vertex set
//! `0..n` whose edges carry a sign of `+1` or `-1`. Values are immutable:
//! every operation that "changes" a graph returns a new one.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Dense real square matrix. Every constructor in this module returns a
/// symmetric one.
pub type SquareMatrix = DMatrix<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Positive => 1.0,
            Sign::Negative => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn parse(token: &str) -> Option<Sign> {
        match token {
            "+1" | "+" => Some(Sign::Positive),
            "-1" | "-" => Some(Sign::Negative),
            _ => None,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+1",
            Sign::Negative => "-1",
        })
    }
}

/// An undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

#[derive(Debug, Clone)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<Edge>,
    neighbors: Vec<Vec<(usize, Sign)>>,
    labels: Option<Vec<String>>,
}

impl PartialEq for SignedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for SignedGraph {}

impl SignedGraph {
    /// Builds a graph from `(u, v, sign)` triples in any orientation.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, Sign)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("graph must have at least one vertex".into()));
        }
        let mut list = Vec::new();
        for (a, b, sign) in edges {
            for vertex in [a, b] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            list.push(Edge {
                u: a.min(b),
                v: a.max(b),
                sign,
            });
        }
        list.sort();
        if let Some(w) = list.windows(2).find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v)) {
            return Err(Error::DuplicateEdge { u: w[0].u, v: w[0].v });
        }
        let mut neighbors = vec![Vec::new(); n];
        for e in &list {
            neighbors[e.u].push((e.v, e.sign));
            neighbors[e.v].push((e.u, e.sign));
        }
        for adj in &mut neighbors {
            adj.sort();
        }
        Ok(SignedGraph {
            n,
            edges: list,
            neighbors,
            labels: None,
        })
    }

    /// Attaches vertex labels; `labels.len()` must equal the order.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Parses the whitespace separated edge-list format.
    ///
    /// Each data line is `u v s` where `s` is one of `+1`, `-1`, `+`, `-`,
    /// and `#` starts a comment. If every endpoint token is a non-negative
    /// integer the tokens are taken as vertex ids and `n = 1 + max id`;
    /// otherwise all endpoint tokens are labels and ids are assigned in
    /// order of first appearance.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut raw = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let data = line.split('#').next().unwrap_or("").trim();
            if data.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = data.split_whitespace().collect();
            if tokens.len() != 3 {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected `u v sign`, found {} fields", tokens.len()),
                });
            }
            let sign = Sign::parse(tokens[2]).ok_or_else(|| Error::Parse {
                line: lineno,
                message: format!("invalid sign `{}`", tokens[2]),
            })?;
            raw.push((lineno, tokens[0], tokens[1], sign));
        }
        if raw.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "no edges found".into(),
            });
        }

        let numeric = raw
            .iter()
            .all(|(_, a, b, _)| a.parse::<usize>().is_ok() && b.parse::<usize>().is_ok());
        let mut labels: Vec<String> = Vec::new();
        let mut ids: HashMap<&str, usize> = HashMap::new();
        let mut triples = Vec::with_capacity(raw.len());
        for &(_, a, b, sign) in &raw {
            let (u, v) = if numeric {
                (a.parse().unwrap(), b.parse().unwrap())
            } else {
                let mut id = |tok| {
                    *ids.entry(tok).or_insert_with(|| {
                        labels.push(tok.to_string());
                        labels.len() - 1
                    })
                };
                (id(a), id(b))
            };
            triples.push((u, v, sign));
        }
        let n = if numeric {
            triples.iter().map(|&(u, v, _)| u.max(v)).max().unwrap() + 1
        } else {
            labels.len()
        };

        // Re-run validation here so errors can carry the source line.
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for (&(u, v, _), &(lineno, ..)) in triples.iter().zip(&raw) {
            if u == v {
                return Err(Error::Parse {
                    line: lineno,
                    message: Error::SelfLoop(u).to_string(),
                });
            }
            if let Some(first) = seen.insert((u.min(v), u.max(v)), lineno) {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!(
                        "{} (first seen on line {first})",
                        Error::DuplicateEdge {
                            u: u.min(v),
                            v: u.max(v)
                        }
                    ),
                });
            }
        }

        let graph = SignedGraph::new(n, triples)?;
        if numeric {
            Ok(graph)
        } else {
            graph.with_labels(labels)
        }
    }

    /// Canonical edge-list text: edges sorted by `(u, v)`, signs as `+1`/`-1`,
    /// labels in place of ids when the graph carries them.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            match &self.labels {
                Some(l) => out.push_str(&format!("{} {} {}\n", l[e.u], l[e.v], e.sign)),
                None => out.push_str(&format!("{} {} {}\n", e.u, e.v, e.sign)),
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, Sign)] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn negative_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.sign.is_negative()).count()
    }

    pub fn sign_of(&self, u: usize, v: usize) -> Option<Sign> {
        self.neighbors
            .get(u)?
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, s)| s)
    }

    /// True when both graphs have the same vertex count and the same edges
    /// ignoring signs.
    pub fn same_underlying_graph(&self, other: &SignedGraph) -> bool {
        self.n == other.n
            && self.edges.len() == other.edges.len()
            && self
                .edges
                .iter()
                .zip(&other.edges)
                .all(|(a, b)| (a.u, a.v) == (b.u, b.v))
    }

    /// Component id of every vertex, numbered in order of smallest vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &self.neighbors[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = next;
                        queue.push_back(y);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// Signed adjacency matrix `A`.
    pub fn adjacency(&self) -> SquareMatrix {
        let mut a = SquareMatrix::zeros(self.n, self.n);
        for e in &self.edges {
            a[(e.u, e.v)] = e.sign.value();
            a[(e.v, e.u)] = e.sign.value();
        }
        a
    }

    /// Entrywise absolute value `|A|`.
    pub fn abs_adjacency(&self) -> SquareMatrix {
        let mut a = SquareMatrix::zeros(self.n, self.n);
        for e in &self.edges {
            a[(e.u, e.v)] = 1.0;
            a[(e.v, e.u)] = 1.0;
        }
        a
    }

    /// Signed Laplacian `L_A = D − A` with `D` the unsigned degree matrix.
    pub fn signed_laplacian(&self) -> SquareMatrix {
        let mut l = -self.adjacency();
        for v in 0..self.n {
            l[(v, v)] = self.degree(v) as f64;
        }
        l
    }

    /// Lerman-Ghosh Laplacian `χI − A`.
    pub fn lerman_ghosh_laplacian(&self, chi: f64) -> SquareMatrix {
        let mut l = -self.adjacency();
        for v in 0..self.n {
            l[(v, v)] = chi;
        }
        l
    }

    /// Flips the sign of every edge with exactly one endpoint in `subset`.
    pub fn switch(&self, subset: &[usize]) -> Result<SignedGraph> {
        let mut inside = vec![false; self.n];
        for &v in subset {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            inside[v] = true;
        }
        self.switch_by(|v| inside[v])
    }

    fn switch_by(&self, inside: impl Fn(usize) -> bool) -> Result<SignedGraph> {
        let edges = self.edges.iter().map(|e| {
            let sign = if inside(e.u) != inside(e.v) {
                e.sign.flip()
            } else {
                e.sign
            };
            (e.u, e.v, sign)
        });
        let g = SignedGraph::new(self.n, edges)?;
        match &self.labels {
            Some(l) => g.with_labels(l.clone()),
            None => Ok(g),
        }
    }

    /// Two-colouring witnessing structural balance, if one exists.
    ///
    /// Colours propagate along edges per component: a positive edge keeps
    /// the colour, a negative edge flips it. The graph is balanced exactly
    /// when no edge contradicts the propagated colours. Each component's
    /// smallest vertex gets colour 0.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color: Vec<Option<u8>> = vec![None; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(0);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let cx = color[x].unwrap();
                for &(y, sign) in &self.neighbors[x] {
                    let want = if sign.is_negative() { 1 - cx } else { cx };
                    match color[y] {
                        None => {
                            color[y] = Some(want);
                            queue.push_back(y);
                        }
                        Some(cy) if cy != want => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn is_balanced(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Switches a balanced graph to its all-positive representative.
    pub fn switch_to_positive(&self) -> Option<SignedGraph> {
        let colors = self.bipartition()?;
        self.switch_by(|v| colors[v] == 1).ok()
    }
}

impl fmt::Display for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}
