//! Altafini consensus, fractional nonconservative diffusion and the discrete
//! Caputo derivative.
//!
//! Both evolutions use closed forms over an eigendecomposition of the
//! generator: `u(t) = Σ_i f(μ_i) φ_i φ_iᵀ u0` with `f(μ) = e^{−tμ}` for the
//! signed Laplacian and `f(ν) = E_α(−t^α ν)` for `χI − A`.

use crate::csv;
use crate::error::{Error, Result};
use crate::graph::{SignedGraph, SquareMatrix};
use crate::spectral::gamma::gamma;
use crate::spectral::{ml_scalar, sym_eig, Spectrum};

/// Node states sampled at increasing times.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub total_mass: Vec<f64>,
}

impl DiffusionTrajectory {
    fn start(u0: &[f64]) -> Self {
        DiffusionTrajectory {
            times: vec![0.0],
            states: vec![u0.to_vec()],
            total_mass: vec![u0.iter().sum()],
        }
    }

    fn push(&mut self, t: f64, state: Vec<f64>) {
        self.times.push(t);
        self.total_mass.push(state.iter().sum());
        self.states.push(state);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Columns `time, v0, …, v{n−1}, total_mass`.
    pub fn to_csv(&self) -> String {
        let n = self.states.first().map_or(0, Vec::len);
        let mut out = String::from("time");
        for v in 0..n {
            out.push_str(&format!(",v{v}"));
        }
        out.push_str(",total_mass\n");
        for ((t, state), mass) in self.times.iter().zip(&self.states).zip(&self.total_mass) {
            out.push_str(&csv::number(*t));
            for x in state {
                out.push(',');
                out.push_str(&csv::number(*x));
            }
            out.push(',');
            out.push_str(&csv::number(*mass));
            out.push('\n');
        }
        out
    }
}

/// Total mass along a trajectory and its change from the initial mass.
#[derive(Debug, Clone, PartialEq)]
pub struct MassSeries {
    pub times: Vec<f64>,
    pub mass: Vec<f64>,
    pub deficit: Vec<f64>,
}

pub fn mass_series(trajectory: &DiffusionTrajectory) -> MassSeries {
    let m0 = trajectory.total_mass.first().copied().unwrap_or(0.0);
    MassSeries {
        times: trajectory.times.clone(),
        mass: trajectory.total_mass.clone(),
        deficit: trajectory.total_mass.iter().map(|m| m - m0).collect(),
    }
}

/// `max_v u_v − min_v u_v`, the largest pairwise state difference.
pub fn spread(u: &[f64]) -> f64 {
    let max = u.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = u.iter().copied().fold(f64::INFINITY, f64::min);
    if u.is_empty() {
        0.0
    } else {
        max - min
    }
}

/// `u0_i = i / (n − 1)`.
pub fn default_initial_state(n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![0.0; n];
    }
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

/// Eigendecomposition of a symmetric generator, applied as `V f(Λ) Vᵀ u`.
#[derive(Debug, Clone)]
struct Propagator {
    spectrum: Spectrum,
}

impl Propagator {
    fn new(m: &SquareMatrix) -> Result<Self> {
        Ok(Propagator {
            spectrum: sym_eig(m, true)?,
        })
    }

    fn check_dim(&self, u0: &[f64]) -> Result<()> {
        let n = self.spectrum.order();
        if u0.len() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: n,
                found: u0.len(),
            })
        }
    }

    fn apply<F: Fn(f64) -> Result<f64>>(&self, u0: &[f64], f: F) -> Result<Vec<f64>> {
        self.check_dim(u0)?;
        let v = self.spectrum.eigenvectors().unwrap();
        let mut coeffs = v.tr_mul(&nalgebra::DVector::from_column_slice(u0));
        for (c, &lambda) in coeffs.iter_mut().zip(self.spectrum.eigenvalues()) {
            *c *= f(lambda)?;
        }
        Ok((v * coeffs).as_slice().to_vec())
    }
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "time must be finite and nonnegative, got {t}"
        )))
    }
}

fn check_times(times: &[f64]) -> Result<()> {
    for &t in times {
        check_time(t)?;
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Invalid("sample times must be strictly increasing".into()));
    }
    Ok(())
}

/// `u̇ = −L_A u` through the eigendecomposition of the signed Laplacian.
#[derive(Debug, Clone)]
pub struct AltafiniModel {
    propagator: Propagator,
}

/// Settings for [`consensus_time`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsensusOptions {
    /// Consensus holds once the spread is below this.
    pub tolerance: f64,
    /// Spacing of the time grid that is searched.
    pub dt: f64,
    pub t_max: f64,
    /// Bisect between the last two grid points for a finer `t_c`.
    pub refine: bool,
}

impl Default for ConsensusOptions {
    fn default() -> Self {
        ConsensusOptions {
            tolerance: 1e-5,
            dt: 1.0,
            t_max: 10_000.0,
            refine: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsensusResult {
    /// First grid time with spread below tolerance.
    pub t_c: Option<f64>,
    pub final_spread: f64,
    /// The spread stalled above tolerance, as on balanced graphs with
    /// negative edges.
    pub dissensus: bool,
    /// States at every grid time visited.
    pub trajectory: DiffusionTrajectory,
}

/// Steps over which a stalled spread is detected.
const STALL_WINDOW: usize = 10;
const STALL_RELATIVE_CHANGE: f64 = 1e-12;

impl AltafiniModel {
    pub fn new(g: &SignedGraph) -> Result<Self> {
        Ok(AltafiniModel {
            propagator: Propagator::new(&g.signed_laplacian())?,
        })
    }

    /// Eigenvalues `μ_i` and eigenvectors `φ_i` of `L_A`.
    pub fn spectrum(&self) -> &Spectrum {
        &self.propagator.spectrum
    }

    pub fn evolve(&self, u0: &[f64], t: f64) -> Result<Vec<f64>> {
        check_time(t)?;
        if t == 0.0 {
            self.propagator.check_dim(u0)?;
            return Ok(u0.to_vec());
        }
        self.propagator.apply(u0, |mu| Ok((-t * mu).exp()))
    }

    pub fn trajectory(&self, u0: &[f64], times: &[f64]) -> Result<DiffusionTrajectory> {
        check_times(times)?;
        let mut traj = DiffusionTrajectory::start(u0);
        for &t in times.iter().filter(|&&t| t > 0.0) {
            traj.push(t, self.evolve(u0, t)?);
        }
        Ok(traj)
    }

    pub fn consensus(&self, u0: &[f64], opts: &ConsensusOptions) -> Result<ConsensusResult> {
        if !(opts.tolerance > 0.0) {
            return Err(Error::Domain(format!(
                "tolerance must be positive, got {}",
                opts.tolerance
            )));
        }
        if !(opts.dt > 0.0 && opts.dt.is_finite()) {
            return Err(Error::Domain(format!(
                "time step must be positive, got {}",
                opts.dt
            )));
        }
        check_time(opts.t_max)?;
        self.propagator.check_dim(u0)?;
        let mut traj = DiffusionTrajectory::start(u0);
        let mut spreads = vec![spread(u0)];
        fn result(
            trajectory: DiffusionTrajectory,
            t_c: Option<f64>,
            dissensus: bool,
            final_spread: f64,
        ) -> ConsensusResult {
            ConsensusResult {
                t_c,
                final_spread,
                dissensus,
                trajectory,
            }
        }
        if spreads[0] < opts.tolerance {
            return Ok(result(traj, Some(0.0), false, spreads[0]));
        }
        let mut k = 1usize;
        loop {
            let t = k as f64 * opts.dt;
            if t > opts.t_max {
                let last = *spreads.last().unwrap();
                return Ok(result(traj, None, false, last));
            }
            let u = self.evolve(u0, t)?;
            let s = spread(&u);
            traj.push(t, u);
            spreads.push(s);
            if s < opts.tolerance {
                let t_c = if opts.refine {
                    self.bisect(u0, t - opts.dt, t, opts.tolerance)?
                } else {
                    t
                };
                return Ok(result(traj, Some(t_c), false, s));
            }
            if k >= STALL_WINDOW {
                let earlier = spreads[k - STALL_WINDOW];
                if (earlier - s).abs() <= STALL_RELATIVE_CHANGE * earlier {
                    return Ok(result(traj, None, true, s));
                }
            }
            k += 1;
        }
    }

    fn bisect(&self, u0: &[f64], mut lo: f64, mut hi: f64, tolerance: f64) -> Result<f64> {
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if spread(&self.evolve(u0, mid)?) < tolerance {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }
}

/// `u(t) = e^{−t L_A} u0`.
pub fn altafini_evolve(g: &SignedGraph, u0: &[f64], t: f64) -> Result<Vec<f64>> {
    AltafiniModel::new(g)?.evolve(u0, t)
}

/// Runs the consensus dynamics on a time grid until every pair of states is
/// within `opts.tolerance`.
pub fn consensus_time(g: &SignedGraph, u0: &[f64], opts: &ConsensusOptions) -> Result<ConsensusResult> {
    AltafiniModel::new(g)?.consensus(u0, opts)
}

/// Time-fractional diffusion `D_t^α u = −L_χ u` with `L_χ = χI − A`, solved as
/// `u(t) = E_α(−t^α L_χ) u0`.
#[derive(Debug, Clone)]
pub struct FractionalModel {
    chi: f64,
    propagator: Propagator,
}

impl FractionalModel {
    pub fn new(g: &SignedGraph, chi: f64) -> Result<Self> {
        if !(chi >= 0.0 && chi.is_finite()) {
            return Err(Error::Domain(format!(
                "chi must be finite and nonnegative, got {chi}"
            )));
        }
        Ok(FractionalModel {
            chi,
            propagator: Propagator::new(&g.lerman_ghosh_laplacian(chi))?,
        })
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.propagator.spectrum
    }

    pub fn evolve(&self, alpha: f64, u0: &[f64], t: f64) -> Result<Vec<f64>> {
        crate::spectral::MLParams::new(alpha)?;
        check_time(t)?;
        if t == 0.0 {
            self.propagator.check_dim(u0)?;
            return Ok(u0.to_vec());
        }
        let scale = t.powf(alpha);
        self.propagator.apply(u0, |nu| ml_scalar(alpha, -scale * nu))
    }

    pub fn trajectory(&self, alpha: f64, u0: &[f64], times: &[f64]) -> Result<DiffusionTrajectory> {
        check_times(times)?;
        let mut traj = DiffusionTrajectory::start(u0);
        for &t in times.iter().filter(|&&t| t > 0.0) {
            traj.push(t, self.evolve(alpha, u0, t)?);
        }
        Ok(traj)
    }
}

pub fn frac_diffuse(g: &SignedGraph, chi: f64, alpha: f64, u0: &[f64], t: f64) -> Result<Vec<f64>> {
    FractionalModel::new(g, chi)?.evolve(alpha, u0, t)
}

/// Bracketed weights of the product-trapezoidal Caputo scheme on `k`
/// subintervals, indexed by grid point `0..=k`. With `p = 2 − α`:
/// `w_0 = (k−1)^p − (k+α−2)k^{1−α}`,
/// `w_j = (k−j+1)^p − 2(k−j)^p + (k−j−1)^p` for `0 < j < k`, and `w_k = 1`.
pub fn caputo_weights(k: usize, alpha: f64) -> Result<Vec<f64>> {
    crate::spectral::MLParams::new(alpha)?;
    if k == 0 {
        return Err(Error::Invalid(
            "the Caputo scheme needs at least one subinterval".into(),
        ));
    }
    let p = 2.0 - alpha;
    let kf = k as f64;
    let mut w = Vec::with_capacity(k + 1);
    w.push((kf - 1.0).powf(p) - (kf + alpha - 2.0) * kf.powf(1.0 - alpha));
    for j in 1..k {
        let m = (k - j) as f64;
        w.push((m + 1.0).powf(p) - 2.0 * m.powf(p) + (m - 1.0).powf(p));
    }
    w.push(1.0);
    Ok(w)
}

/// Discrete Caputo derivative at `t = k h` from `u′(t_j)`, `j = 0..=k`:
/// `h^{1−α} / Γ(3−α) · Σ_j w_j u′(t_j)`. Exact for `α = 1` and for
/// piecewise-linear `u′`; `O(h²)` otherwise.
pub fn caputo_discrete(derivatives: &[f64], alpha: f64, h: f64) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Domain(format!("step must be positive, got {h}")));
    }
    if derivatives.len() < 2 {
        return Err(Error::Invalid(
            "the Caputo scheme needs at least one subinterval".into(),
        ));
    }
    let w = caputo_weights(derivatives.len() - 1, alpha)?;
    let sum: f64 = w.iter().zip(derivatives).map(|(w, d)| w * d).sum();
    Ok(h.powf(1.0 - alpha) / gamma(3.0 - alpha) * sum)
}
