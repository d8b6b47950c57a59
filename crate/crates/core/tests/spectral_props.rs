mod common;

use std::f64::consts::PI;

use common::{matrix_series_trace, rel, rng};
use mlbalance::cycles::cycle_graph;
use mlbalance::spectral::ml_trace_ln;
use mlbalance::{frac_bessel, ml_scalar, ml_trace, sym_eig, MLParams, SignedGraph, SquareMatrix};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_symmetric(r: &mut ChaCha8Rng, n: usize) -> SquareMatrix {
    let m = DMatrix::from_fn(n, n, |_, _| r.gen_range(-1.0..1.0));
    (&m + m.transpose()) * 0.5
}

fn random_orthogonal(r: &mut ChaCha8Rng, n: usize) -> SquareMatrix {
    DMatrix::from_fn(n, n, |_, _| r.gen_range(-1.0..1.0)).qr().q()
}

#[test]
fn cycle_spectra() {
    for n in [3, 6, 11] {
        let plus = sym_eig(&cycle_graph(n, 0).unwrap().adjacency(), false).unwrap();
        let minus = sym_eig(&cycle_graph(n, 1).unwrap().adjacency(), false).unwrap();
        let mut want_plus: Vec<f64> = (0..n)
            .map(|k| 2.0 * (2.0 * PI * k as f64 / n as f64).cos())
            .collect();
        let mut want_minus: Vec<f64> = (0..n)
            .map(|k| 2.0 * ((2 * k + 1) as f64 * PI / n as f64).cos())
            .collect();
        want_plus.sort_by(|a, b| b.total_cmp(a));
        want_minus.sort_by(|a, b| b.total_cmp(a));
        for (a, b) in plus.eigenvalues().iter().zip(&want_plus) {
            assert!((a - b).abs() < 1e-12);
        }
        for (a, b) in minus.eigenvalues().iter().zip(&want_minus) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}

#[test]
fn exponential_traces_of_c10() {
    let g = cycle_graph(10, 1).unwrap();
    let p = MLParams::with_gamma(1.0, 1.0).unwrap();
    let signed = ml_trace(&sym_eig(&g.adjacency(), false).unwrap(), p).unwrap();
    let unsigned = ml_trace(&sym_eig(&g.abs_adjacency(), false).unwrap(), p).unwrap();
    assert!((signed - 22.7958).abs() < 5e-5, "{signed}");
    assert!((unsigned - 22.7959).abs() < 5e-5, "{unsigned}");
}

#[test]
fn edgeless_trace_is_order() {
    let g = SignedGraph::new(7, []).unwrap();
    let s = sym_eig(&g.adjacency(), false).unwrap();
    for alpha in [0.2, 0.5, 1.0] {
        assert_eq!(ml_trace(&s, MLParams::new(alpha).unwrap()).unwrap(), 7.0);
    }
}

#[test]
fn trace_overflow_is_reported_and_log_trace_is_not() {
    let s = sym_eig(&cycle_graph(5, 0).unwrap().adjacency(), false).unwrap();
    let p = MLParams::with_gamma(0.2, 20.0).unwrap();
    assert!(ml_trace(&s, p).is_err());
    let ln = ml_trace_ln(&s, p).unwrap();
    // Dominated by the simple top eigenvalue 2: ln E ≈ 40^5 − ln 0.2.
    assert!(rel(ln, 40f64.powi(5) - 0.2f64.ln()) < 1e-12);
}

#[test]
fn completely_monotone_on_negative_axis() {
    for alpha in [0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.95, 1.0] {
        let mut prev = ml_scalar(alpha, 0.0).unwrap();
        for i in 1..=1000 {
            let x = i as f64 * 0.05;
            let v = ml_scalar(alpha, -x).unwrap();
            assert!(v >= 0.0, "alpha={alpha} x={x}");
            assert!(v <= prev, "alpha={alpha} x={x}: {v} > {prev}");
            prev = v;
        }
    }
}

#[test]
fn strictly_increasing_in_argument() {
    for alpha in [0.2, 0.4, 0.6, 0.8, 1.0] {
        let mut prev = ml_scalar(alpha, -50.0).unwrap();
        for i in 1..=1000 {
            let z = -50.0 + i as f64 * 0.1;
            let Ok(v) = ml_scalar(alpha, z) else {
                // Past the largest representable value; the log form still
                // increases.
                assert!(ml_scalar(alpha, z).is_err());
                break;
            };
            assert!(v > prev, "alpha={alpha} z={z}: {v} <= {prev}");
            prev = v;
        }
    }
}

#[test]
fn bessel_integer_order_matches_quadrature() {
    // (1/π)∫_0^π cos(νθ) f(z cos θ) dθ by the trapezoidal rule, which is
    // spectrally accurate for this periodic integrand.
    fn bessel_quadrature(nu: u32, z: f64, f: impl Fn(f64) -> f64) -> f64 {
        let m = 400;
        let h = PI / m as f64;
        let mut sum = 0.0;
        for j in 0..=m {
            let theta = j as f64 * h;
            let w = if j == 0 || j == m { 0.5 } else { 1.0 };
            sum += w * (nu as f64 * theta).cos() * f(z * theta.cos());
        }
        sum * h / PI
    }
    for z in [0.5, 1.0, 2.0] {
        let want = bessel_quadrature(0, z, f64::exp);
        assert!(rel(frac_bessel(0, 1.0, z).unwrap(), want) < 1e-13, "z={z}");
    }
    for (nu, alpha, z) in [(0, 0.6, 1.7), (1, 0.6, 1.7), (2, 0.4, -2.5), (3, 0.8, 3.0)] {
        let want = bessel_quadrature(nu, z, |x| ml_scalar(alpha, x).unwrap());
        let got = frac_bessel(nu, alpha, z).unwrap();
        assert!(
            (got - want).abs() < 1e-12 * want.abs().max(1.0),
            "{nu} {alpha} {z}: {got} vs {want}"
        );
    }
}

#[test]
fn bessel_is_the_cycle_average() {
    let n = 512;
    for alpha in [0.3, 0.5, 0.75, 1.0] {
        let p = MLParams::new(alpha).unwrap();
        let g = p.gamma();
        let avg: f64 = (1..=n)
            .map(|k| ml_scalar(alpha, 2.0 * g * (2.0 * PI * k as f64 / n as f64).cos()).unwrap())
            .sum::<f64>()
            / n as f64;
        let b = frac_bessel(0, alpha, 2.0 * g).unwrap();
        assert!((avg - b).abs() < 1e-3, "alpha={alpha}: {avg} vs {b}");
    }
}

#[test]
fn grouping_survives_tiny_noise() {
    let mut r = rng(7);
    let values = [3.0, 3.0, 3.0, 1.0, -0.5, -0.5, -2.0, -2.0];
    let q = random_orthogonal(&mut r, values.len());
    let m = &q * DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(&values)) * q.transpose();
    let m = (&m + m.transpose()) * 0.5;
    let base: Vec<usize> = sym_eig(&m, false)
        .unwrap()
        .groups()
        .iter()
        .map(|g| g.multiplicity)
        .collect();
    assert_eq!(base, vec![3, 1, 2, 2]);
    for _ in 0..20 {
        let noise = random_symmetric(&mut r, values.len()) * 1e-13;
        let groups: Vec<usize> = sym_eig(&(&m + noise), false)
            .unwrap()
            .groups()
            .iter()
            .map(|g| g.multiplicity)
            .collect();
        assert_eq!(groups, base);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eigenvectors_reconstruct(seed in any::<u64>(), n in 1usize..20) {
        let mut r = rng(seed);
        let m = random_symmetric(&mut r, n) * r.gen_range(0.1..100.0);
        let s = sym_eig(&m, true).unwrap();
        let v = s.eigenvectors().unwrap();
        let scale = m.amax().max(1.0);
        let back = s.apply(|x| x).unwrap();
        prop_assert!((&back - &m).amax() <= 1e-8 * scale);
        prop_assert!((v.transpose() * v - SquareMatrix::identity(n, n)).amax() <= 1e-8);
        prop_assert!(s.eigenvalues().windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(s.groups().iter().map(|g| g.multiplicity).sum::<usize>(), n);
    }

    #[test]
    fn trace_matches_matrix_series(seed in any::<u64>(), n in 1usize..=8) {
        let mut r = rng(seed);
        let mut m = random_symmetric(&mut r, n);
        let radius = sym_eig(&m, false).unwrap().spectral_radius();
        if radius > 0.0 {
            m *= r.gen_range(0.1..3.0) / radius;
        }
        let s = sym_eig(&m, false).unwrap();
        for alpha in [0.4, 0.7, 1.0] {
            let p = MLParams::new(alpha).unwrap();
            let spectral = ml_trace(&s, p).unwrap();
            let series = matrix_series_trace(&m, alpha, p.gamma());
            prop_assert!(rel(spectral, series) < 1e-8, "alpha={} {} vs {}", alpha, spectral, series);
        }
    }
}
