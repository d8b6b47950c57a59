//! Helpers for the acceptance run: correlation statistics and seeded random
//! signed graphs.

use mlbalance::{Sign, SignedGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sign(rng: &mut ChaCha8Rng, q: f64) -> Sign {
    if rng.gen_bool(q) {
        Sign::Negative
    } else {
        Sign::Positive
    }
}

/// Erdős–Rényi graph; each edge negative with probability `q`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, q: f64) -> SignedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v, sign(rng, q)));
            }
        }
    }
    SignedGraph::new(n, edges).unwrap()
}

/// A random spanning tree plus Erdős–Rényi extra edges.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64, q: f64) -> SignedGraph {
    let mut present = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        present[u][v] = true;
        edges.push((u, v, sign(rng, q)));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !present[u][v] && rng.gen_bool(p) {
                edges.push((u, v, sign(rng, q)));
            }
        }
    }
    SignedGraph::new(n, edges).unwrap()
}

/// Random graph with every degree at most `max_degree`.
pub fn random_bounded_degree(rng: &mut ChaCha8Rng, n: usize, max_degree: usize, q: f64) -> SignedGraph {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let mut degree = vec![0; n];
    let mut edges = Vec::new();
    for (u, v) in pairs {
        if degree[u] < max_degree && degree[v] < max_degree && rng.gen_bool(0.7) {
            degree[u] += 1;
            degree[v] += 1;
            edges.push((u, v, sign(rng, q)));
        }
    }
    SignedGraph::new(n, edges).unwrap()
}

/// A switching of an all-positive Erdős–Rényi graph.
pub fn random_balanced(rng: &mut ChaCha8Rng, n: usize, p: f64) -> SignedGraph {
    let g = random_graph(rng, n, p, 0.0);
    g.switch(&random_subset(rng, n)).unwrap()
}

pub fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

pub fn all_positive(g: &SignedGraph) -> SignedGraph {
    SignedGraph::new(g.order(), g.edges().iter().map(|e| (e.u, e.v, Sign::Positive))).unwrap()
}

pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    sxy / (sxx * syy).sqrt()
}

/// Ranks starting at 1, ties sharing their average rank.
pub fn ranks(x: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&i, &j| x[i].total_cmp(&x[j]));
    let mut out = vec![0.0; x.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && x[order[j + 1]] == x[order[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            out[k] = r;
        }
        i = j + 1;
    }
    out
}

pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    pearson(&ranks(x), &ranks(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn correlations() {
        let x = [1.0, 2.0, 3.0, 4.0];
        assert!((pearson(&x, &[2.0, 4.0, 6.0, 8.0]) - 1.0).abs() < 1e-15);
        assert!((pearson(&x, &[4.0, 3.0, 2.0, 1.0]) + 1.0).abs() < 1e-15);
        assert_eq!(ranks(&[3.0, 1.0, 3.0, 2.0]), vec![3.5, 1.0, 3.5, 2.0]);
        // Monotone but nonlinear.
        assert!((spearman(&x, &[1.0, 8.0, 27.0, 64.0]) - 1.0).abs() < 1e-15);
        // Textbook example: ρ = 1 − 6Σd²/(n(n²−1)) without ties.
        let a = [86.0, 97.0, 99.0, 100.0, 101.0, 103.0, 106.0, 110.0, 112.0, 113.0];
        let b = [2.0, 20.0, 28.0, 27.0, 50.0, 29.0, 7.0, 17.0, 6.0, 12.0];
        assert!((spearman(&a, &b) + 29.0 / 165.0).abs() < 1e-12);
    }
}
