//! Symmetric eigendecomposition and Mittag-Leffler functions of symmetric
//! matrices.

mod bessel;
pub mod gamma;
mod mittag_leffler;

use nalgebra::{DMatrix, SymmetricEigen};

pub use bessel::frac_bessel;
pub(crate) use mittag_leffler::neumaier_add;
pub use mittag_leffler::{ml_ln, ml_scalar, MLParams};

use crate::error::{Error, Result};
use crate::graph::SquareMatrix;

/// Relative gap below which neighbouring eigenvalues are treated as one.
pub const DEFAULT_GROUP_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenGroup {
    pub value: f64,
    pub multiplicity: usize,
}

/// Eigenvalues of a real symmetric matrix in descending order, optionally
/// with orthonormal eigenvectors stored as the columns of a matrix aligned
/// with the eigenvalues.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: Option<DMatrix<f64>>,
    groups: Vec<EigenGroup>,
}

impl Spectrum {
    /// Builds a spectrum from eigenvalues in any order.
    pub fn from_eigenvalues(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        let groups = group(&values, DEFAULT_GROUP_TOLERANCE);
        Spectrum {
            eigenvalues: values,
            eigenvectors: None,
            groups,
        }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> Option<&DMatrix<f64>> {
        self.eigenvectors.as_ref()
    }

    pub fn groups(&self) -> &[EigenGroup] {
        &self.groups
    }

    pub fn order(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn largest(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn smallest(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.largest().abs().max(self.smallest().abs())
    }

    /// Regroups with tolerance `relative_tol · max(1, spectral radius)`.
    pub fn with_group_tolerance(mut self, relative_tol: f64) -> Self {
        self.groups = group(&self.eigenvalues, relative_tol);
        self
    }

    /// Matrix function `V f(Λ) Vᵀ`. Requires eigenvectors.
    pub fn apply<F: Fn(f64) -> f64>(&self, f: F) -> Option<DMatrix<f64>> {
        let v = self.eigenvectors.as_ref()?;
        let mut scaled = v.clone();
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let fj = f(lambda);
            scaled.column_mut(j).scale_mut(fj);
        }
        Some(scaled * v.transpose())
    }
}

fn group(sorted_desc: &[f64], relative_tol: f64) -> Vec<EigenGroup> {
    let Some(&first) = sorted_desc.first() else {
        return Vec::new();
    };
    let radius = first.abs().max(sorted_desc.last().unwrap().abs());
    let tol = relative_tol * radius.max(1.0);
    let mut groups = vec![EigenGroup {
        value: first,
        multiplicity: 1,
    }];
    let mut sum = first;
    let mut prev = first;
    for &lambda in &sorted_desc[1..] {
        let last = groups.last_mut().unwrap();
        if prev - lambda <= tol {
            last.multiplicity += 1;
            sum += lambda;
            last.value = sum / last.multiplicity as f64;
        } else {
            groups.push(EigenGroup {
                value: lambda,
                multiplicity: 1,
            });
            sum = lambda;
        }
        prev = lambda;
    }
    groups
}

/// Largest absolute asymmetry `max |M_ij − M_ji|`.
pub fn asymmetry(m: &SquareMatrix) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..i {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

/// Eigendecomposition of a real symmetric matrix.
pub fn sym_eig(m: &SquareMatrix, want_vectors: bool) -> Result<Spectrum> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    let scale = m.amax().max(1.0);
    let asym = asymmetry(m);
    if asym > 1e-12 * scale {
        return Err(Error::NotSymmetric(asym));
    }
    if m.nrows() == 0 {
        return Ok(Spectrum::from_eigenvalues(Vec::new()));
    }
    if !want_vectors {
        let values = m.clone().symmetric_eigenvalues();
        return Ok(Spectrum::from_eigenvalues(values.iter().copied().collect()));
    }
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..m.nrows()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), m.nrows(), |r, c| eig.eigenvectors[(r, order[c])]);
    let groups = group(&values, DEFAULT_GROUP_TOLERANCE);
    Ok(Spectrum {
        eigenvalues: values,
        eigenvectors: Some(vectors),
        groups,
    })
}

/// `Tr E_α(γM) = Σ_j E_α(γλ_j)`.
pub fn ml_trace(spectrum: &Spectrum, params: MLParams) -> Result<f64> {
    let mut total = 0.0;
    for &lambda in spectrum.eigenvalues() {
        total += ml_scalar(params.alpha(), params.gamma() * lambda)?;
    }
    if total.is_finite() {
        Ok(total)
    } else {
        Err(Error::Overflow("Mittag-Leffler trace".into()))
    }
}

/// `ln Tr E_α(γM)`, accumulated in log space so it never overflows.
pub fn ml_trace_ln(spectrum: &Spectrum, params: MLParams) -> Result<f64> {
    let logs = spectrum
        .eigenvalues()
        .iter()
        .map(|&lambda| ml_ln(params.alpha(), params.gamma() * lambda))
        .collect::<Result<Vec<_>>>()?;
    Ok(log_sum_exp(&logs))
}

pub(crate) fn log_sum_exp(logs: &[f64]) -> f64 {
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + logs.iter().map(|&l| (l - max).exp()).sum::<f64>().ln()
}
