use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "mlbalance", version, about = "Structural balance of signed graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exponential and Mittag-Leffler balance indices, one row per graph.
    Balance(BalanceArgs),
    /// K_α over a grid of α, one column per graph.
    Profile(ProfileArgs),
    /// Positive and negative simple cycles by length.
    Cycles(CyclesArgs),
    /// Altafini consensus time from a fixed or seeded initial state.
    Consensus(ConsensusArgs),
    /// Fractional nonconservative diffusion trajectory of one graph.
    Diffuse(DiffuseArgs),
    /// Spectral-gap approximation of K_α and the α where it becomes accurate.
    Approx(ApproxArgs),
    /// Truncated moment series of A and |A|.
    Moments(MomentsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    JsonLines,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Edge-list files, `-` for stdin, or generators `gen:cycle:N:K`,
    /// `gen:petersen` and `gen:petersen:a`..`gen:petersen:e`.
    #[arg(required = true, value_name = "INPUT")]
    pub inputs: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the table here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BalanceArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated α values for K_α.
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    pub alpha: Vec<f64>,
    /// Fixed γ for every α; defaults to Γ(α+1).
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Inverse temperature of the exponential index.
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub common: Common,
    /// `start:stop:step` or a comma-separated list.
    #[arg(long, default_value = "0.4:1:0.02")]
    pub alpha_grid: String,
    #[arg(long)]
    pub gamma: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CyclesArgs {
    #[command(flatten)]
    pub common: Common,
    /// Longest cycle length counted.
    #[arg(long, default_value_t = 10)]
    pub lmax: usize,
    /// Allow --lmax above 12.
    #[arg(long)]
    pub unguarded: bool,
}

#[derive(Debug, Args)]
pub struct ConsensusArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 1e-5)]
    pub tolerance: f64,
    /// Spacing of the time grid.
    #[arg(long, default_value_t = 1.0)]
    pub dt: f64,
    #[arg(long, default_value_t = 1e4)]
    pub t_max: f64,
    /// Bisect between grid points for a finer t_c.
    #[arg(long)]
    pub refine: bool,
    /// Draw the initial state uniformly from [0, 1) with this seed instead
    /// of u_i = i/(n−1).
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct DiffuseArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated α values, one trajectory each.
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    pub alpha: Vec<f64>,
    /// χ of L_χ = χI − A; defaults to the largest degree.
    #[arg(long)]
    pub chi: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub dt: f64,
    #[arg(long, default_value_t = 10.0)]
    pub t_max: f64,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[command(flatten)]
    pub common: Common,
    /// Strictly descending grid, `start:stop:step` or a list.
    #[arg(long, default_value = "1:0.05:0.05")]
    pub alpha_grid: String,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Relative error below which the approximation counts as accurate.
    #[arg(long, default_value_t = 0.1)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Largest power included.
    #[arg(long, default_value_t = 10)]
    pub r: usize,
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Balance(a) => &a.common,
            Command::Profile(a) => &a.common,
            Command::Cycles(a) => &a.common,
            Command::Consensus(a) => &a.common,
            Command::Diffuse(a) => &a.common,
            Command::Approx(a) => &a.common,
            Command::Moments(a) => &a.common,
        }
    }
}

/// Parses `start:stop:step` (inclusive, in the direction from start to stop)
/// or a comma-separated list.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let number = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| format!("`{s}` is not a number"))
    };
    if let [start, stop, step] = text.split(':').collect::<Vec<_>>()[..] {
        let (start, stop, step) = (number(start)?, number(stop)?, number(step)?);
        if !(step > 0.0 && step.is_finite() && start.is_finite() && stop.is_finite()) {
            return Err(format!("invalid range `{text}`"));
        }
        let count = ((stop - start).abs() / step + 1e-9).floor() as usize;
        let dir = if stop >= start { 1.0 } else { -1.0 };
        // Rounding keeps 0.4 + 3·0.02 printing as 0.46.
        Ok((0..=count)
            .map(|i| ((start + dir * i as f64 * step) * 1e12).round() / 1e12)
            .collect())
    } else if text.contains(':') {
        Err(format!("expected `start:stop:step`, found `{text}`"))
    } else {
        text.split(',').map(number).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let g = parse_grid("0.4:1:0.02").unwrap();
        assert_eq!(g.len(), 31);
        assert_eq!(g[3], 0.46);
        assert_eq!(*g.last().unwrap(), 1.0);
        let d = parse_grid("1:0.05:0.05").unwrap();
        assert_eq!(d.len(), 20);
        assert_eq!(d[19], 0.05);
        assert_eq!(parse_grid("0.5, 0.25").unwrap(), vec![0.5, 0.25]);
        assert!(parse_grid("0.5:1").is_err());
        assert!(parse_grid("0.5:1:0").is_err());
        assert!(parse_grid("a,b").is_err());
    }
}
