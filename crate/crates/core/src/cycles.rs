//! Signed simple-cycle enumeration, cycle generators and the five signed
//! Petersen graphs.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};

/// Largest cycle length [`cycle_census`] accepts.
pub const MAX_GUARDED_LENGTH: usize = 12;

/// Numbers of positive and negative simple cycles by length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCensus {
    max_length: usize,
    // Indexed by length; entries below 3 stay zero.
    counts: Vec<(u64, u64)>,
}

impl CycleCensus {
    fn empty(max_length: usize) -> Self {
        CycleCensus {
            max_length,
            counts: vec![(0, 0); max_length.max(2) + 1],
        }
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    fn get(&self, length: usize) -> (u64, u64) {
        self.counts.get(length).copied().unwrap_or((0, 0))
    }

    pub fn positive(&self, length: usize) -> u64 {
        self.get(length).0
    }

    pub fn negative(&self, length: usize) -> u64 {
        self.get(length).1
    }

    pub fn total(&self, length: usize) -> u64 {
        let (p, n) = self.get(length);
        p + n
    }

    /// `(length, positive, negative)` for every length from 3 to the maximum.
    pub fn rows(&self) -> impl Iterator<Item = (usize, u64, u64)> + '_ {
        (3..=self.max_length).map(|l| (l, self.positive(l), self.negative(l)))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("length,positive,negative\n");
        for (l, p, n) in self.rows() {
            out.push_str(&format!("{l},{p},{n}\n"));
        }
        out
    }
}

/// Counts simple cycles of length `3..=max_length`. Lengths above
/// [`MAX_GUARDED_LENGTH`] are rejected; use [`cycle_census_unguarded`] to
/// lift the limit.
pub fn cycle_census(g: &SignedGraph, max_length: usize) -> Result<CycleCensus> {
    if max_length > MAX_GUARDED_LENGTH {
        return Err(Error::Invalid(format!(
            "cycle length limit {max_length} exceeds {MAX_GUARDED_LENGTH}; enumeration cost grows exponentially"
        )));
    }
    Ok(cycle_census_unguarded(g, max_length))
}

/// [`cycle_census`] without the length guard.
///
/// Each cycle is found once from its smallest vertex, in the orientation
/// whose second vertex is smaller than its last.
pub fn cycle_census_unguarded(g: &SignedGraph, max_length: usize) -> CycleCensus {
    let n = g.order();
    let per_anchor: Vec<CycleCensus> = (0..n)
        .into_par_iter()
        .map(|anchor| {
            let mut census = CycleCensus::empty(max_length);
            if max_length >= 3 {
                let mut path = vec![anchor];
                let mut on_path = vec![false; n];
                on_path[anchor] = true;
                extend(g, &mut path, &mut on_path, Sign::Positive, &mut census);
            }
            census
        })
        .collect();
    let mut total = CycleCensus::empty(max_length);
    for c in per_anchor {
        for (t, x) in total.counts.iter_mut().zip(&c.counts) {
            t.0 += x.0;
            t.1 += x.1;
        }
    }
    total
}

fn extend(
    g: &SignedGraph,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    sign: Sign,
    census: &mut CycleCensus,
) {
    let anchor = path[0];
    let last = *path.last().unwrap();
    for &(w, s) in g.neighbors(last) {
        if w == anchor {
            if path.len() >= 3 && path[1] < last {
                let slot = &mut census.counts[path.len()];
                if (sign * s).is_negative() {
                    slot.1 += 1;
                } else {
                    slot.0 += 1;
                }
            }
        } else if w > anchor && !on_path[w] && path.len() < census.max_length {
            path.push(w);
            on_path[w] = true;
            extend(g, path, on_path, sign * s, census);
            on_path[w] = false;
            path.pop();
        }
    }
}

/// The ring `0-1-…-(n−1)-0` with its first `negative_edges` edges negative.
pub fn cycle_graph(n: usize, negative_edges: usize) -> Result<SignedGraph> {
    if n < 3 {
        return Err(Error::Invalid(format!(
            "cycle length must be at least 3, got {n}"
        )));
    }
    if negative_edges > n {
        return Err(Error::Invalid(format!(
            "a {n}-cycle has no room for {negative_edges} negative edges"
        )));
    }
    SignedGraph::new(
        n,
        (0..n).map(|i| {
            let s = if i < negative_edges {
                Sign::Negative
            } else {
                Sign::Positive
            };
            (i, (i + 1) % n, s)
        }),
    )
}

/// The Petersen graph with all edges positive: outer pentagon `0..5`,
/// spokes `(i, i+5)`, inner pentagram `(5+i, 5+(i+2)%5)`.
pub fn petersen() -> SignedGraph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5, Sign::Positive));
        edges.push((i, i + 5, Sign::Positive));
        edges.push((i + 5, (i + 2) % 5 + 5, Sign::Positive));
    }
    SignedGraph::new(10, edges).unwrap()
}

/// The Petersen graph with the listed edges negative.
pub fn signed_petersen(negative: &[(usize, usize)]) -> Result<SignedGraph> {
    let base = petersen();
    let mut edges: Vec<(usize, usize, Sign)> = base.edges().iter().map(|e| (e.u, e.v, e.sign)).collect();
    for &(u, v) in negative {
        let (u, v) = (u.min(v), u.max(v));
        let e = edges
            .iter_mut()
            .find(|e| e.0 == u && e.1 == v)
            .ok_or_else(|| Error::Invalid(format!("({u}, {v}) is not a Petersen edge")))?;
        e.2 = Sign::Negative;
    }
    SignedGraph::new(10, edges)
}

/// Negative edges of the five signed Petersen graphs `a..e`, as found by
/// [`search_petersen_signings`].
pub const PETERSEN_SIGNINGS: [(char, &[(usize, usize)]); 5] = [
    ('a', &[(7, 9)]),
    ('b', &[(6, 8), (7, 9)]),
    ('c', &[(5, 8), (6, 9), (7, 9)]),
    ('d', &[(5, 7), (5, 8), (6, 8), (6, 9), (7, 9)]),
    ('e', &[(3, 4), (5, 7), (6, 8), (6, 9)]),
];

/// The five signed Petersen graphs `a..e` in order.
pub fn petersen_signings() -> Vec<(char, SignedGraph)> {
    PETERSEN_SIGNINGS
        .iter()
        .map(|&(letter, neg)| (letter, signed_petersen(neg).unwrap()))
        .collect()
}

/// Negative-cycle counts `(length, count)` that identify each signing.
pub const PETERSEN_TARGETS: [(char, &[(usize, u64)]); 5] = [
    ('a', &[(5, 4), (6, 4)]),
    ('b', &[(5, 6), (6, 6)]),
    ('c', &[(5, 8), (6, 4), (8, 8), (9, 8)]),
    ('d', &[(5, 6), (6, 10), (8, 0), (9, 10)]),
    ('e', &[(5, 12), (6, 0)]),
];

/// Recovers [`PETERSEN_SIGNINGS`]. Every switching class has a
/// representative whose spanning-tree edges are positive, so it suffices to
/// try the `2^6` sign patterns on the co-tree edges. Patterns are visited in
/// lexicographic order (positive before negative, co-tree edges in sorted
/// order) and the first match for each letter wins.
pub fn search_petersen_signings() -> Result<Vec<(char, Vec<(usize, usize)>)>> {
    let base = petersen();
    let co_tree = co_tree_edges(&base);
    let mut found: Vec<Option<Vec<(usize, usize)>>> = vec![None; PETERSEN_TARGETS.len()];
    for pattern in 0u32..(1 << co_tree.len()) {
        // Bit for the first co-tree edge is the most significant.
        let negative: Vec<(usize, usize)> = co_tree
            .iter()
            .enumerate()
            .filter(|(i, _)| pattern >> (co_tree.len() - 1 - i) & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = signed_petersen(&negative)?;
        let census = cycle_census(&g, 9)?;
        for (slot, (_, target)) in found.iter_mut().zip(PETERSEN_TARGETS.iter()) {
            if slot.is_none() && target.iter().all(|&(l, c)| census.negative(l) == c) {
                *slot = Some(negative.clone());
            }
        }
    }
    found
        .into_iter()
        .zip(PETERSEN_TARGETS.iter())
        .map(|(slot, &(letter, _))| {
            slot.map(|neg| (letter, neg))
                .ok_or_else(|| Error::Undefined(format!("no Petersen signing matches census {letter}")))
        })
        .collect()
}

/// Edges outside the spanning forest built greedily over sorted edges.
fn co_tree_edges(g: &SignedGraph) -> Vec<(usize, usize)> {
    let mut parent: Vec<usize> = (0..g.order()).collect();
    fn root(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut rest = Vec::new();
    for e in g.edges() {
        let (a, b) = (root(&mut parent, e.u), root(&mut parent, e.v));
        if a == b {
            rest.push((e.u, e.v));
        } else {
            parent[a] = b;
        }
    }
    rest
}
