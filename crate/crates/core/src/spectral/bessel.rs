use crate::error::{Error, Result};

use super::gamma::ln_gamma;
use super::mittag_leffler::check_alpha;

/// Fractional modified Bessel function of the first kind,
///
/// `Σ_k (2k+ν)! / (Γ(α(2k+ν)+1) k! (k+ν)!) (z/2)^{2k+ν}`,
///
/// equal to `(1/π) ∫_0^π cos(νθ) E_α(z cos θ) dθ`. With `α = 1` this is the
/// ordinary modified Bessel function `I_ν`.
pub fn frac_bessel(nu: u32, alpha: f64, z: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !z.is_finite() {
        return Err(Error::Domain(format!("argument must be finite, got {z}")));
    }
    if z == 0.0 {
        return Ok(if nu == 0 { 1.0 } else { 0.0 });
    }
    let nu_f = nu as f64;
    let ln_half = (z.abs() / 2.0).ln();
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for k in 0..1_000_000u32 {
        let k = k as f64;
        let m = 2.0 * k + nu_f;
        let ln_term =
            ln_gamma(m + 1.0) - ln_gamma(alpha * m + 1.0) - ln_gamma(k + 1.0) - ln_gamma(k + nu_f + 1.0)
                + m * ln_half;
        let term = ln_term.exp();
        sum += term;
        if !sum.is_finite() {
            return Err(Error::Overflow(format!(
                "fractional Bessel E_{{{nu},{alpha}}}({z})"
            )));
        }
        if term < prev && term <= 1e-17 * sum {
            break;
        }
        prev = term;
    }
    // Every power 2k+ν has the parity of ν.
    Ok(if z < 0.0 && nu % 2 == 1 { -sum } else { sum })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_argument() {
        assert_eq!(frac_bessel(0, 0.5, 0.0).unwrap(), 1.0);
        assert_eq!(frac_bessel(3, 0.5, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn parity() {
        let a = frac_bessel(1, 0.7, 1.3).unwrap();
        assert_eq!(frac_bessel(1, 0.7, -1.3).unwrap(), -a);
        let b = frac_bessel(2, 0.7, 1.3).unwrap();
        assert_eq!(frac_bessel(2, 0.7, -1.3).unwrap(), b);
    }
}
