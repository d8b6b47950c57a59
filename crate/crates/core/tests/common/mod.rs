#![allow(dead_code)]

use mlbalance::spectral::gamma::ln_gamma;
use mlbalance::{Sign, SignedGraph, SquareMatrix};
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

/// Erdős–Rényi graph with edge probability `p`; each edge negative with
/// probability `q`.
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

/// Random graph whose degrees never exceed `max_degree`, so its spectral
/// radius is at most `max_degree`.
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

pub fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

pub fn all_positive(g: &SignedGraph) -> SignedGraph {
    SignedGraph::new(g.order(), g.edges().iter().map(|e| (e.u, e.v, Sign::Positive))).unwrap()
}

/// A balanced graph: a random switching of an all-positive one.
pub fn random_balanced(rng: &mut ChaCha8Rng, n: usize, p: f64) -> SignedGraph {
    let g = all_positive(&random_graph(rng, n, p, 0.0));
    let s = random_subset(rng, n);
    g.switch(&s).unwrap()
}

/// `ln Γ(x)` from `Γ(x) = Γ(x − m) ∏_{j=1}^{m} (x − j)` with `x − m ∈ [1, 2)`,
/// where the library routine is accurate to rounding. Direct `ln_gamma` is
/// only good to about 1e-13 for moderate `x`, which the alternating series
/// amplifies.
fn ln_gamma_by_recurrence(x: f64) -> f64 {
    if x >= 170.0 {
        return ln_gamma(x);
    }
    let mut y = x;
    let mut product = 1.0;
    while y >= 2.0 {
        y -= 1.0;
        product *= y;
    }
    product.ln() + ln_gamma(y)
}

/// `Σ_k Tr((γM)^k) / Γ(αk+1)`, summed until the terms are negligible. Powers
/// are rescaled as they are formed so that large `k` cannot overflow; the
/// envelope `n ‖(γM)^k‖_max / Γ(αk+1)` bounds every term.
pub fn matrix_series_trace(m: &SquareMatrix, alpha: f64, gamma: f64) -> f64 {
    let n = m.nrows();
    let scaled = m * gamma;
    let mut power = SquareMatrix::identity(n, n);
    let mut ln_scale = 0.0;
    let mut sum = n as f64;
    let mut prev_envelope = f64::INFINITY;
    for k in 1..100_000 {
        power = &power * &scaled;
        let amax = power.amax();
        if amax == 0.0 {
            break;
        }
        power /= amax;
        ln_scale += amax.ln();
        let ln_weight = ln_scale - ln_gamma_by_recurrence(alpha * k as f64 + 1.0);
        sum += power.trace() * ln_weight.exp();
        let envelope = n as f64 * ln_weight.exp();
        if envelope < prev_envelope && envelope < 1e-18 * sum.abs() {
            break;
        }
        prev_envelope = envelope;
    }
    sum
}

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}
