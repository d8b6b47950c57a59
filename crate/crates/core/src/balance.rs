//! Balance indices: ratios of traces of matrix functions of the signed
//! adjacency `A` and its unsigned counterpart `|A|`.
//!
//! Every index is computed from the two spectra, never from matrix powers.
//! Traces are accumulated in log space so that small `α` or large `β` never
//! overflow; a [`BalanceReport`] carries the common scale it divided out.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::SignedGraph;
use crate::spectral::gamma::ln_gamma;
use crate::spectral::{log_sum_exp, ml_ln, ml_trace_ln, neumaier_add, sym_eig, MLParams, Spectrum};

/// Traces whose natural log exceeds this are reported relative to a scale.
const MAX_UNSCALED_LN: f64 = 700.0;

/// The matrix function behind a report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IndexKind {
    /// `Tr exp(βA) / Tr exp(β|A|)`.
    Exponential { beta: f64 },
    /// `Tr E_α(γA) / Tr E_α(γ|A|)`.
    MittagLeffler(MLParams),
}

/// A balance index with its trace components.
///
/// `numerator_trace` and `denominator_trace` (and the two parts) are the
/// true traces divided by `exp(log_scale)`. The scale is zero unless the
/// denominator would not fit in an `f64`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalanceReport {
    pub index: f64,
    pub numerator_trace: f64,
    pub denominator_trace: f64,
    /// Weighted count of positive closed walks, `(den + num) / 2`.
    pub positive_part: f64,
    /// Weighted count of negative closed walks, `(den − num) / 2`.
    pub negative_part: f64,
    pub log_scale: f64,
    pub kind: IndexKind,
}

impl BalanceReport {
    fn from_logs(ln_num: f64, ln_den: f64, kind: IndexKind) -> Self {
        let log_scale = if ln_den > MAX_UNSCALED_LN { ln_den } else { 0.0 };
        let num = (ln_num - log_scale).exp();
        let den = (ln_den - log_scale).exp();
        let mut index = (ln_num - ln_den).exp();
        if (num - den).abs() <= 1e-12 * den {
            index = 1.0;
        }
        BalanceReport {
            index,
            numerator_trace: num,
            denominator_trace: den,
            positive_part: 0.5 * (den + num),
            negative_part: (0.5 * (den - num)).max(0.0),
            log_scale,
            kind,
        }
    }

    /// `ln` of the unscaled denominator trace.
    pub fn ln_denominator(&self) -> f64 {
        self.denominator_trace.ln() + self.log_scale
    }
}

/// How `γ` is chosen for each `α` of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum GammaRule {
    /// `γ = Γ(α + 1)`.
    #[default]
    Conventional,
    Fixed(f64),
}

impl GammaRule {
    pub fn params(self, alpha: f64) -> Result<MLParams> {
        match self {
            GammaRule::Conventional => MLParams::new(alpha),
            GammaRule::Fixed(gamma) => MLParams::with_gamma(alpha, gamma),
        }
    }
}

/// Truncated moment series `M_r^s`, `M_r^u` and their ratios `M_r`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentLedger {
    pub alpha: f64,
    /// The requested maximum power.
    pub requested: usize,
    /// The largest power actually included; smaller than `requested` when a
    /// scaled moment of `|A|` overflows.
    pub r: usize,
    /// `Tr(A^k) / Γ(αk + 1)` for `k = 0..=r`.
    pub signed_moments: Vec<f64>,
    /// `Tr(|A|^k) / Γ(αk + 1)` for `k = 0..=r`.
    pub unsigned_moments: Vec<f64>,
    /// Ratios of the cumulative sums of the two lists.
    pub partial_ratios: Vec<f64>,
}

/// The small-`α` approximation `K̃_α` compared with the exact index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapApproximation {
    pub approx: f64,
    pub exact: f64,
    pub relative_error: f64,
    /// Multiplicity of the largest eigenvalue of `A`.
    pub multiplicity: usize,
    /// `(λ_1 − λ_2) / |λ_1|` with `λ_2` the next distinct eigenvalue of `A`.
    pub relative_gap: Option<f64>,
}

/// Spectra of `A` and `|A|` for one graph, computed once and reused by every
/// index.
///
/// For a balanced graph the two matrices are switching equivalent, so the
/// spectrum of `|A|` is used for both. This keeps indices of balanced graphs
/// at exactly 1 even where eigenvalue rounding would be amplified.
#[derive(Debug, Clone)]
pub struct SignedSpectra {
    signed: Spectrum,
    unsigned: Spectrum,
    balanced: bool,
}

impl SignedSpectra {
    pub fn new(g: &SignedGraph) -> Result<Self> {
        let unsigned = sym_eig(&g.abs_adjacency(), false)?;
        let balanced = g.is_balanced();
        let signed = if balanced {
            unsigned.clone()
        } else {
            sym_eig(&g.adjacency(), false)?
        };
        Ok(SignedSpectra {
            signed,
            unsigned,
            balanced,
        })
    }

    pub fn signed(&self) -> &Spectrum {
        &self.signed
    }

    pub fn unsigned(&self) -> &Spectrum {
        &self.unsigned
    }

    pub fn is_balanced(&self) -> bool {
        self.balanced
    }

    pub fn k_exp(&self, beta: f64) -> Result<BalanceReport> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::Domain(format!("beta must be positive, got {beta}")));
        }
        let ln_trace = |s: &Spectrum| {
            let logs: Vec<f64> = s.eigenvalues().iter().map(|&l| beta * l).collect();
            log_sum_exp(&logs)
        };
        Ok(BalanceReport::from_logs(
            ln_trace(&self.signed),
            ln_trace(&self.unsigned),
            IndexKind::Exponential { beta },
        ))
    }

    pub fn k_ml(&self, params: MLParams) -> Result<BalanceReport> {
        Ok(BalanceReport::from_logs(
            ml_trace_ln(&self.signed, params)?,
            ml_trace_ln(&self.unsigned, params)?,
            IndexKind::MittagLeffler(params),
        ))
    }

    /// Moment ledger for `γ = 1`: the k-th moments are `Σ_j λ_j^k / Γ(αk+1)`.
    pub fn moment_ledger(&self, alpha: f64, r: usize) -> Result<MomentLedger> {
        MLParams::new(alpha)?;
        let mut ledger = MomentLedger {
            alpha,
            requested: r,
            r: 0,
            signed_moments: Vec::with_capacity(r + 1),
            unsigned_moments: Vec::with_capacity(r + 1),
            partial_ratios: Vec::with_capacity(r + 1),
        };
        let (mut cum_s, mut comp_s) = (0.0, 0.0);
        let (mut cum_u, mut comp_u) = (0.0, 0.0);
        for k in 0..=r {
            let ln_g = ln_gamma(alpha * k as f64 + 1.0);
            let s = scaled_power_sum(self.signed.eigenvalues(), k, ln_g);
            let u = scaled_power_sum(self.unsigned.eigenvalues(), k, ln_g);
            if !(s.is_finite() && u.is_finite() && (cum_u + u).is_finite()) {
                break;
            }
            neumaier_add(&mut cum_s, &mut comp_s, s);
            neumaier_add(&mut cum_u, &mut comp_u, u);
            ledger.signed_moments.push(s);
            ledger.unsigned_moments.push(u);
            ledger.partial_ratios.push((cum_s + comp_s) / (cum_u + comp_u));
            ledger.r = k;
        }
        Ok(ledger)
    }

    /// `K̃_α = m_1 E_α(γλ_1) / (m'_1 E_α(γμ_1))`, where `m_1` and `m'_1` are
    /// the multiplicities of the largest eigenvalues of `A` and `|A|`
    /// (`m'_1 = 1` for connected graphs). The relative error is formed from
    /// logarithms, so it stays defined when both indices underflow.
    pub fn gap_approx(&self, params: MLParams) -> Result<GapApproximation> {
        let report = self.k_ml(params)?;
        let ln_exact = ml_trace_ln(&self.signed, params)? - ml_trace_ln(&self.unsigned, params)?;
        let top = self.signed.groups()[0];
        let top_unsigned = self.unsigned.groups()[0];
        let (alpha, gamma) = (params.alpha(), params.gamma());
        let ln_approx = (top.multiplicity as f64).ln() + ml_ln(alpha, gamma * top.value)?
            - (top_unsigned.multiplicity as f64).ln()
            - ml_ln(alpha, gamma * top_unsigned.value)?;
        let approx = ln_approx.exp();
        let relative_gap = match self.signed.groups().get(1) {
            Some(next) if top.value != 0.0 => Some((top.value - next.value) / top.value.abs()),
            _ => None,
        };
        Ok(GapApproximation {
            approx,
            exact: report.index,
            relative_error: (ln_approx - ln_exact).exp_m1().abs(),
            multiplicity: top.multiplicity,
            relative_gap,
        })
    }

    /// First `α` of a strictly descending grid at which the gap approximation
    /// has relative error below `threshold`, or `None` if there is none.
    pub fn alpha_c(&self, rule: GammaRule, threshold: f64, grid: &[f64]) -> Result<Option<f64>> {
        if !(threshold > 0.0) {
            return Err(Error::Domain(format!(
                "threshold must be positive, got {threshold}"
            )));
        }
        check_grid(grid)?;
        if grid.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Invalid("alpha grid must be strictly descending".into()));
        }
        for &alpha in grid {
            if self.gap_approx(rule.params(alpha)?)?.relative_error < threshold {
                return Ok(Some(alpha));
            }
        }
        Ok(None)
    }

    /// `K_α` at every grid point, in grid order.
    pub fn profile(&self, grid: &[f64], rule: GammaRule) -> Result<Vec<(f64, BalanceReport)>> {
        check_grid(grid)?;
        grid.par_iter()
            .map(|&alpha| Ok((alpha, self.k_ml(rule.params(alpha)?)?)))
            .collect()
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Invalid("alpha grid is empty".into()));
    }
    if let Some(bad) = grid.iter().find(|&&a| !(a > 0.0 && a <= 1.0)) {
        return Err(Error::Domain(format!("alpha must lie in (0, 1], got {bad}")));
    }
    Ok(())
}

/// `Σ_j λ_j^k / Γ(αk+1)` with each term formed in log space. `Γ(1) = 1` is
/// taken exactly.
fn scaled_power_sum(values: &[f64], k: usize, ln_g: f64) -> f64 {
    let (mut sum, mut comp) = (0.0, 0.0);
    for &l in values {
        let term = if k == 0 {
            1.0
        } else if l == 0.0 {
            0.0
        } else {
            let magnitude = (k as f64 * l.abs().ln() - ln_g).exp();
            if l < 0.0 && k % 2 == 1 {
                -magnitude
            } else {
                magnitude
            }
        };
        neumaier_add(&mut sum, &mut comp, term);
    }
    sum + comp
}

/// Exponential index `K(G, β)`.
pub fn k_exp(g: &SignedGraph, beta: f64) -> Result<BalanceReport> {
    SignedSpectra::new(g)?.k_exp(beta)
}

/// Mittag-Leffler index `K_α^γ`.
pub fn k_ml(g: &SignedGraph, params: MLParams) -> Result<BalanceReport> {
    SignedSpectra::new(g)?.k_ml(params)
}

pub fn moment_ledger(g: &SignedGraph, alpha: f64, r: usize) -> Result<MomentLedger> {
    SignedSpectra::new(g)?.moment_ledger(alpha, r)
}

pub fn k_ml_gap_approx(g: &SignedGraph, params: MLParams) -> Result<GapApproximation> {
    SignedSpectra::new(g)?.gap_approx(params)
}

pub fn alpha_c(g: &SignedGraph, rule: GammaRule, threshold: f64, grid: &[f64]) -> Result<Option<f64>> {
    SignedSpectra::new(g)?.alpha_c(rule, threshold, grid)
}

pub fn balance_profile(g: &SignedGraph, grid: &[f64], rule: GammaRule) -> Result<Vec<(f64, BalanceReport)>> {
    SignedSpectra::new(g)?.profile(grid, rule)
}

/// `K_α^γ` of an unbalanced `n`-cycle from its closed-form spectra:
/// `A` has eigenvalues `2cos((2k+1)π/n)` and `|A|` has `2cos(2kπ/n)`.
pub fn k_ml_cycle_analytic(n: usize, params: MLParams) -> Result<BalanceReport> {
    if n < 3 {
        return Err(Error::Invalid(format!(
            "cycle length must be at least 3, got {n}"
        )));
    }
    let (alpha, gamma) = (params.alpha(), params.gamma());
    let nf = n as f64;
    let ln_trace = |offset: f64| -> Result<f64> {
        let logs = (1..=n)
            .map(|k| {
                let theta = (2.0 * k as f64 + offset) * std::f64::consts::PI / nf;
                ml_ln(alpha, 2.0 * gamma * theta.cos())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(log_sum_exp(&logs))
    };
    Ok(BalanceReport::from_logs(
        ln_trace(1.0)?,
        ln_trace(0.0)?,
        IndexKind::MittagLeffler(params),
    ))
}
