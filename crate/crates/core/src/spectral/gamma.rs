//! Thin wrappers around `statrs` gamma routines.

use std::f64::consts::PI;

pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

/// `sin(πx)` with the argument reduced first so that integers map to exact
/// zeros.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).floor();
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    (PI * r).sin()
}

/// `1/Γ(x)`, finite everywhere and zero at the non-positive integers.
pub fn rgamma(x: f64) -> f64 {
    if x >= 0.5 {
        let g = gamma(x);
        if g.is_finite() {
            1.0 / g
        } else {
            (-ln_gamma(x)).exp()
        }
    } else {
        // Reflection: 1/Γ(x) = sin(πx) Γ(1−x) / π.
        let s = sin_pi(x);
        if s == 0.0 {
            return 0.0;
        }
        let lg = ln_gamma(1.0 - x);
        s * (lg - PI.ln()).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rgamma_values() {
        assert!((rgamma(1.0) - 1.0).abs() < 1e-15);
        assert!((rgamma(0.5) - 1.0 / PI.sqrt()).abs() < 1e-15);
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-3.0), 0.0);
        // Γ(−0.5) = −2√π
        assert!((rgamma(-0.5) + 1.0 / (2.0 * PI.sqrt())).abs() < 1e-14);
        // Γ(−1.5) = 4√π/3
        assert!((rgamma(-1.5) - 3.0 / (4.0 * PI.sqrt())).abs() < 1e-14);
    }
}
