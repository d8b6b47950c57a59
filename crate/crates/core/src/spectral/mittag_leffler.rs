//! Scalar Mittag-Leffler function `E_α(z) = Σ_k z^k / Γ(αk + 1)` for real `z`
//! and `0 < α ≤ 1`.
//!
//! For these parameters `E_α` is strictly positive on the whole real line, so
//! [`ml_ln`] is always finite and is the preferred entry point when values may
//! overflow. Evaluation picks one of these routes:
//!
//! * `α = 1`: the exponential.
//! * `z > 0`: the power series while `z^{1/α} ≤ 50`, otherwise the leading
//!   asymptotic term `exp(z^{1/α}) / α`, whose neglected part is below
//!   `e^{-50}` relative.
//! * `z < 0`, small `|z|`: the alternating series, only when the estimated
//!   cancellation loss `E_α(|z|) / E_α(z)` is below 30.
//! * `z < 0`, `|z|^{1/α} ≥ 60`: the algebraic expansion
//!   `Σ_{k≥1} (−1)^{k+1} |z|^{−k} / Γ(1 − αk)`, truncated where the term
//!   envelope `Γ(αk) / (π |z|^k)` is smallest.
//! * `z < 0` otherwise: the completely monotone integral representation
//!
//!   `E_α(−x) = sin(απ)/(απ) ∫_0^∞ x e^{−v^{1/α}} / (v² + 2xv cos(απ) + x²) dv`
//!
//!   evaluated with adaptive Gauss-Kronrod quadrature.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad;

use super::gamma::{gamma, ln_gamma, rgamma};

const POSITIVE_ASYMPTOTIC_EXPONENT: f64 = 50.0;
const NEGATIVE_ASYMPTOTIC_EXPONENT: f64 = 60.0;
const MAX_CANCELLATION: f64 = 30.0;
const MAX_ALTERNATING_TERMS: usize = 250;
const MAX_POSITIVE_TERMS: usize = 100_000;

/// Order and argument scaling of a Mittag-Leffler matrix function
/// `E_α(γM)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    alpha: f64,
    gamma: f64,
}

impl MLParams {
    /// Parameters with the conventional scaling `γ = Γ(α + 1)`.
    pub fn new(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(MLParams {
            alpha,
            gamma: gamma(alpha + 1.0),
        })
    }

    pub fn with_gamma(alpha: f64, gamma: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::Domain(format!("gamma must be positive, got {gamma}")));
        }
        Ok(MLParams { alpha, gamma })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("alpha must lie in (0, 1], got {alpha}")))
    }
}

fn check_args(alpha: f64, z: f64) -> Result<()> {
    check_alpha(alpha)?;
    if z.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("argument must be finite, got {z}")))
    }
}

/// `E_α(z)`. Fails with [`Error::Overflow`] when the value exceeds `f64`.
pub fn ml_scalar(alpha: f64, z: f64) -> Result<f64> {
    check_args(alpha, z)?;
    let value = match eval(alpha, z) {
        Eval::Value(v) => v,
        Eval::Log(l) => l.exp(),
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(format!("E_{alpha}({z})")))
    }
}

/// `ln E_α(z)`, finite for every finite `z`.
pub fn ml_ln(alpha: f64, z: f64) -> Result<f64> {
    check_args(alpha, z)?;
    Ok(match eval(alpha, z) {
        Eval::Value(v) => v.ln(),
        Eval::Log(l) => l,
    })
}

enum Eval {
    Value(f64),
    Log(f64),
}

fn eval(alpha: f64, z: f64) -> Eval {
    if alpha == 1.0 {
        return Eval::Log(z);
    }
    if z == 0.0 {
        return Eval::Value(1.0);
    }
    if z > 0.0 {
        let t = z.powf(1.0 / alpha);
        if t > POSITIVE_ASYMPTOTIC_EXPONENT {
            return Eval::Log(t - alpha.ln());
        }
        return Eval::Value(positive_series(alpha, z));
    }
    let x = -z;
    if let Some(v) = alternating_series(alpha, x) {
        return Eval::Value(v);
    }
    if x.powf(1.0 / alpha) >= NEGATIVE_ASYMPTOTIC_EXPONENT {
        return Eval::Value(negative_asymptotic(alpha, x));
    }
    Eval::Value(negative_integral(alpha, x))
}

/// `z^k / Γ(αk + 1)` for `z > 0`.
fn series_term(alpha: f64, z: f64, k: usize) -> f64 {
    let arg = alpha * k as f64 + 1.0;
    if arg < 170.0 && k < 400 {
        let p = z.powi(k as i32);
        if p.is_finite() && p > 0.0 {
            return p * rgamma(arg);
        }
    }
    (k as f64 * z.ln() - ln_gamma(arg)).exp()
}

fn positive_series(alpha: f64, z: f64) -> f64 {
    let mut sum = 1.0;
    let mut comp = 0.0;
    let mut prev = 1.0;
    for k in 1..MAX_POSITIVE_TERMS {
        let term = series_term(alpha, z, k);
        neumaier_add(&mut sum, &mut comp, term);
        if term < prev && term < 1e-17 * sum {
            break;
        }
        prev = term;
    }
    sum + comp
}

/// Alternating series for `E_α(−x)`; `None` when cancellation or term count
/// would spoil the result.
fn alternating_series(alpha: f64, x: f64) -> Option<f64> {
    let abs_ln = match eval(alpha, x) {
        Eval::Value(v) => v.ln(),
        Eval::Log(l) => l,
    };
    // Lower bound E_α(−x) ≥ 1 / (1 + Γ(1 − α) x).
    let loss_ln = abs_ln + (gamma(1.0 - alpha) * x).ln_1p();
    if loss_ln > MAX_CANCELLATION.ln() {
        return None;
    }
    let mut sum = 1.0;
    let mut comp = 0.0;
    let mut prev = 1.0;
    for k in 1..=MAX_ALTERNATING_TERMS {
        let magnitude = series_term(alpha, x, k);
        let term = if k % 2 == 1 { -magnitude } else { magnitude };
        neumaier_add(&mut sum, &mut comp, term);
        if magnitude < prev && magnitude < 1e-18 {
            return Some(sum + comp);
        }
        prev = magnitude;
    }
    None
}

fn negative_asymptotic(alpha: f64, x: f64) -> f64 {
    // |1/Γ(1−αk)| ≤ Γ(αk)/π, so the envelope Γ(αk)/(π x^k) bounds each term
    // without the accidental dips near the poles of Γ(1−αk). Truncate where
    // the envelope is smallest.
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut prev_env = f64::INFINITY;
    let ln_x = x.ln();
    for k in 1..2000 {
        let kf = k as f64;
        let ln_env = ln_gamma(alpha * kf) - PI.ln() - kf * ln_x;
        if ln_env > prev_env {
            break;
        }
        prev_env = ln_env;
        let term = (-kf * ln_x).exp() * rgamma(1.0 - alpha * kf);
        let signed = if k % 2 == 1 { term } else { -term };
        neumaier_add(&mut sum, &mut comp, signed);
        if ln_env < (1e-17 * (sum + comp).abs()).ln() {
            break;
        }
    }
    sum + comp
}

fn negative_integral(alpha: f64, x: f64) -> f64 {
    let (s, c) = (alpha * PI).sin_cos();
    let inv = 1.0 / alpha;
    let upper = 745f64.powf(alpha);
    let integrand = |v: f64| x * (-v.powf(inv)).exp() / ((v + x * c).powi(2) + (x * s).powi(2));

    let mut points = vec![0.0, upper];
    if upper > 1.0 {
        points.push(1.0);
    }
    if c < 0.0 {
        let peak = -x * c;
        let width = x * s;
        for m in [-16.0, -4.0, -1.0, 0.0, 1.0, 4.0, 16.0] {
            let p = peak + m * width;
            if p > 0.0 && p < upper {
                points.push(p);
            }
        }
    }
    points.sort_by(f64::total_cmp);
    points.dedup();
    let (value, _) = quad::integrate(integrand, &points, 1e-14, 4000);
    s / (alpha * PI) * value
}

pub(crate) fn neumaier_add(sum: &mut f64, comp: &mut f64, term: f64) {
    let t = *sum + term;
    if sum.abs() >= term.abs() {
        *comp += (*sum - t) + term;
    } else {
        *comp += (term - t) + *sum;
    }
    *sum = t;
}
