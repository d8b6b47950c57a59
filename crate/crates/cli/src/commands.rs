use mlbalance::balance::{GammaRule, SignedSpectra};
use mlbalance::cycles::{cycle_census, cycle_census_unguarded, MAX_GUARDED_LENGTH};
use mlbalance::dynamics::{
    default_initial_state, mass_series, AltafiniModel, ConsensusOptions, FractionalModel,
};
use mlbalance::{MLParams, SignedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::args::*;
use crate::input;
use crate::table::{scaled, Cell, Table};

/// A finished table plus the inputs that failed, each with its message.
pub struct Outcome {
    pub table: Table,
    pub errors: Vec<String>,
}

/// Loads every input and applies `f`, in parallel, keeping input order.
fn per_input<T: Send>(
    inputs: &[String],
    f: impl Fn(&SignedGraph) -> mlbalance::Result<T> + Sync,
) -> Vec<(String, Result<T, String>)> {
    inputs
        .par_iter()
        .map(|name| {
            let result = input::load(name).and_then(|g| f(&g).map_err(|e| format!("{name}: {e}")));
            (name.clone(), result)
        })
        .collect()
}

fn split<T>(results: Vec<(String, Result<T, String>)>) -> (Vec<(String, T)>, Vec<String>) {
    let mut ok = Vec::new();
    let mut errors = Vec::new();
    for (name, r) in results {
        match r {
            Ok(v) => ok.push((name, v)),
            Err(e) => errors.push(e),
        }
    }
    (ok, errors)
}

fn flag_error(flag: &str, e: impl std::fmt::Display) -> String {
    format!("{flag}: {e}")
}

fn gamma_rule(flag_gamma: Option<f64>) -> Result<GammaRule, String> {
    match flag_gamma {
        None => Ok(GammaRule::Conventional),
        Some(g) if g > 0.0 && g.is_finite() => Ok(GammaRule::Fixed(g)),
        Some(g) => Err(flag_error("--gamma", format!("must be positive, got {g}"))),
    }
}

fn check_alphas(flag: &str, alphas: &[f64]) -> Result<(), String> {
    if alphas.is_empty() {
        return Err(flag_error(flag, "no values given"));
    }
    for &a in alphas {
        MLParams::new(a).map_err(|e| flag_error(flag, e))?;
    }
    Ok(())
}

fn label(x: f64) -> String {
    mlbalance::csv::number(x)
}

pub fn execute(command: &Command) -> Result<Outcome, String> {
    match command {
        Command::Balance(a) => balance(a),
        Command::Profile(a) => profile(a),
        Command::Cycles(a) => cycles(a),
        Command::Consensus(a) => consensus(a),
        Command::Diffuse(a) => diffuse(a),
        Command::Approx(a) => approx(a),
        Command::Moments(a) => moments(a),
    }
}

fn balance(a: &BalanceArgs) -> Result<Outcome, String> {
    check_alphas("--alpha", &a.alpha)?;
    let rule = gamma_rule(a.gamma)?;
    if !(a.beta > 0.0 && a.beta.is_finite()) {
        return Err(flag_error("--beta", format!("must be positive, got {}", a.beta)));
    }
    let params: Vec<MLParams> = a
        .alpha
        .iter()
        .map(|&x| rule.params(x).map_err(|e| flag_error("--alpha", e)))
        .collect::<Result<_, _>>()?;

    let mut columns: Vec<String> = ["input", "n", "m", "negative_edges", "balanced"]
        .map(String::from)
        .to_vec();
    for prefix in
        std::iter::once("K_exp".to_string()).chain(a.alpha.iter().map(|&x| format!("K_{}", label(x))))
    {
        columns.push(prefix.clone());
        columns.push(format!("{prefix}_positive"));
        columns.push(format!("{prefix}_negative"));
    }
    let results = per_input(&a.common.inputs, |g| {
        let s = SignedSpectra::new(g)?;
        let mut row: Vec<Cell> = vec![
            g.order().into(),
            g.size().into(),
            g.negative_edge_count().into(),
            s.is_balanced().into(),
        ];
        let mut reports = vec![s.k_exp(a.beta)?];
        for &p in &params {
            reports.push(s.k_ml(p)?);
        }
        for r in reports {
            row.push(r.index.into());
            row.push(scaled(r.positive_part, r.log_scale));
            row.push(scaled(r.negative_part, r.log_scale));
        }
        Ok(row)
    });
    let (ok, errors) = split(results);
    let mut table = Table::new(columns);
    for (name, mut row) in ok {
        row.insert(0, name.as_str().into());
        table.push(row);
    }
    Ok(Outcome { table, errors })
}

fn grid(flag: &str, text: &str) -> Result<Vec<f64>, String> {
    let g = parse_grid(text).map_err(|e| flag_error(flag, e))?;
    check_alphas(flag, &g)?;
    Ok(g)
}

fn profile(a: &ProfileArgs) -> Result<Outcome, String> {
    let alphas = grid("--alpha-grid", &a.alpha_grid)?;
    let rule = gamma_rule(a.gamma)?;
    let results = per_input(&a.common.inputs, |g| {
        let profile = SignedSpectra::new(g)?.profile(&alphas, rule)?;
        Ok(profile.into_iter().map(|(_, r)| r.index).collect::<Vec<f64>>())
    });
    let (ok, errors) = split(results);
    let mut columns = vec!["alpha".to_string(), "gamma".to_string()];
    columns.extend(ok.iter().map(|(name, _)| format!("K[{name}]")));
    if ok.len() == 2 {
        columns.push("difference".into());
    }
    let mut table = Table::new(columns);
    for (i, &alpha) in alphas.iter().enumerate() {
        let gamma = rule
            .params(alpha)
            .map_err(|e| flag_error("--alpha-grid", e))?
            .gamma();
        let mut row: Vec<Cell> = vec![alpha.into(), gamma.into()];
        row.extend(ok.iter().map(|(_, ks)| Cell::Num(ks[i])));
        if ok.len() == 2 {
            row.push((ok[0].1[i] - ok[1].1[i]).into());
        }
        table.push(row);
    }
    Ok(Outcome { table, errors })
}

fn cycles(a: &CyclesArgs) -> Result<Outcome, String> {
    if a.lmax < 3 {
        return Err(flag_error(
            "--lmax",
            format!("must be at least 3, got {}", a.lmax),
        ));
    }
    if a.lmax > MAX_GUARDED_LENGTH && !a.unguarded {
        return Err(flag_error(
            "--lmax",
            format!(
                "{} exceeds {MAX_GUARDED_LENGTH}; pass --unguarded to count longer cycles",
                a.lmax
            ),
        ));
    }
    let results = per_input(&a.common.inputs, |g| {
        if a.unguarded {
            Ok(cycle_census_unguarded(g, a.lmax))
        } else {
            cycle_census(g, a.lmax)
        }
    });
    let (ok, errors) = split(results);
    let mut table = Table::new(["input", "length", "positive", "negative", "total"]);
    for (name, census) in ok {
        for (l, p, n) in census.rows() {
            table.push(vec![
                name.as_str().into(),
                l.into(),
                p.into(),
                n.into(),
                (p + n).into(),
            ]);
        }
    }
    Ok(Outcome { table, errors })
}

fn initial_state(n: usize, seed: Option<u64>) -> Vec<f64> {
    match seed {
        None => default_initial_state(n),
        Some(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            (0..n).map(|_| rng.gen::<f64>()).collect()
        }
    }
}

fn seed_notes(table: &mut Table, seed: Option<u64>) {
    if let Some(s) = seed {
        table.notes.push(("seed".into(), s.to_string()));
    }
}

fn consensus(a: &ConsensusArgs) -> Result<Outcome, String> {
    if !(a.tolerance > 0.0) {
        return Err(flag_error(
            "--tolerance",
            format!("must be positive, got {}", a.tolerance),
        ));
    }
    if !(a.dt > 0.0 && a.dt.is_finite()) {
        return Err(flag_error("--dt", format!("must be positive, got {}", a.dt)));
    }
    if !(a.t_max >= 0.0 && a.t_max.is_finite()) {
        return Err(flag_error(
            "--t-max",
            format!("must be finite and nonnegative, got {}", a.t_max),
        ));
    }
    let opts = ConsensusOptions {
        tolerance: a.tolerance,
        dt: a.dt,
        t_max: a.t_max,
        refine: a.refine,
    };
    let results = per_input(&a.common.inputs, |g| {
        let res = AltafiniModel::new(g)?.consensus(&initial_state(g.order(), a.seed), &opts)?;
        Ok(vec![
            g.order().into(),
            g.is_balanced().into(),
            res.t_c.into(),
            res.final_spread.into(),
            res.dissensus.into(),
        ])
    });
    let (ok, errors) = split(results);
    let mut table = Table::new(["input", "n", "balanced", "t_c", "final_spread", "dissensus"]);
    seed_notes(&mut table, a.seed);
    for (name, mut row) in ok {
        row.insert(0, name.as_str().into());
        table.push(row);
    }
    Ok(Outcome { table, errors })
}

fn diffuse(a: &DiffuseArgs) -> Result<Outcome, String> {
    check_alphas("--alpha", &a.alpha)?;
    if let Some(chi) = a.chi {
        if !(chi >= 0.0 && chi.is_finite()) {
            return Err(flag_error(
                "--chi",
                format!("must be finite and nonnegative, got {chi}"),
            ));
        }
    }
    if !(a.dt > 0.0 && a.dt.is_finite()) {
        return Err(flag_error("--dt", format!("must be positive, got {}", a.dt)));
    }
    if !(a.t_max >= 0.0 && a.t_max.is_finite()) {
        return Err(flag_error(
            "--t-max",
            format!("must be finite and nonnegative, got {}", a.t_max),
        ));
    }
    let steps = (a.t_max / a.dt + 1e-9).floor() as usize;
    let times: Vec<f64> = (0..=steps).map(|k| k as f64 * a.dt).collect();
    let results = per_input(&a.common.inputs, |g| {
        let chi = a
            .chi
            .unwrap_or_else(|| (0..g.order()).map(|v| g.degree(v)).max().unwrap_or(0) as f64);
        let model = FractionalModel::new(g, chi)?;
        let u0 = initial_state(g.order(), a.seed);
        let mut rows = Vec::new();
        for &alpha in &a.alpha {
            let traj = model.trajectory(alpha, &u0, &times)?;
            let mass = mass_series(&traj);
            for (i, state) in traj.states.iter().enumerate() {
                rows.push((
                    alpha,
                    chi,
                    traj.times[i],
                    state.clone(),
                    mass.mass[i],
                    mass.deficit[i],
                ));
            }
        }
        Ok(rows)
    });
    let (ok, errors) = split(results);
    let width = ok
        .iter()
        .flat_map(|(_, rows)| rows.iter().map(|r| r.3.len()))
        .max()
        .unwrap_or(0);
    let mut columns: Vec<String> = ["input", "alpha", "chi", "time"].map(String::from).to_vec();
    columns.extend((0..width).map(|v| format!("v{v}")));
    columns.push("total_mass".into());
    columns.push("deficit".into());
    let mut table = Table::new(columns);
    seed_notes(&mut table, a.seed);
    for (name, rows) in ok {
        for (alpha, chi, t, state, mass, deficit) in rows {
            let mut row: Vec<Cell> = vec![name.as_str().into(), alpha.into(), chi.into(), t.into()];
            row.extend((0..width).map(|v| state.get(v).copied().into()));
            row.push(mass.into());
            row.push(deficit.into());
            table.push(row);
        }
    }
    Ok(Outcome { table, errors })
}

fn approx(a: &ApproxArgs) -> Result<Outcome, String> {
    let alphas = grid("--alpha-grid", &a.alpha_grid)?;
    if alphas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(flag_error("--alpha-grid", "must be strictly descending"));
    }
    let rule = gamma_rule(a.gamma)?;
    if !(a.tolerance > 0.0) {
        return Err(flag_error(
            "--tolerance",
            format!("must be positive, got {}", a.tolerance),
        ));
    }
    let results = per_input(&a.common.inputs, |g| {
        let s = SignedSpectra::new(g)?;
        let alpha_c = s.alpha_c(rule, a.tolerance, &alphas)?;
        let mut rows = Vec::new();
        for &alpha in &alphas {
            let p = rule.params(alpha)?;
            let ga = s.gap_approx(p)?;
            rows.push(vec![
                Cell::Num(alpha),
                p.gamma().into(),
                ga.exact.into(),
                ga.approx.into(),
                ga.relative_error.into(),
                ga.multiplicity.into(),
                ga.relative_gap.into(),
                alpha_c.into(),
            ]);
        }
        Ok(rows)
    });
    let (ok, errors) = split(results);
    let mut table = Table::new([
        "input",
        "alpha",
        "gamma",
        "K",
        "K_approx",
        "relative_error",
        "multiplicity",
        "relative_gap",
        "alpha_c",
    ]);
    for (name, rows) in ok {
        for mut row in rows {
            row.insert(0, name.as_str().into());
            table.push(row);
        }
    }
    Ok(Outcome { table, errors })
}

fn moments(a: &MomentsArgs) -> Result<Outcome, String> {
    check_alphas("--alpha", &[a.alpha])?;
    let results = per_input(&a.common.inputs, |g| {
        SignedSpectra::new(g)?.moment_ledger(a.alpha, a.r)
    });
    let (ok, errors) = split(results);
    let mut columns = vec!["k".to_string()];
    for (name, _) in &ok {
        columns.push(format!("signed[{name}]"));
        columns.push(format!("unsigned[{name}]"));
        columns.push(format!("ratio[{name}]"));
    }
    if ok.len() == 2 {
        columns.push("difference".into());
    }
    let mut table = Table::new(columns);
    for k in 0..=a.r {
        let mut row: Vec<Cell> = vec![k.into()];
        for (_, ledger) in &ok {
            row.push(ledger.signed_moments.get(k).copied().into());
            row.push(ledger.unsigned_moments.get(k).copied().into());
            row.push(ledger.partial_ratios.get(k).copied().into());
        }
        if ok.len() == 2 {
            let (x, y) = (ok[0].1.signed_moments.get(k), ok[1].1.signed_moments.get(k));
            row.push(x.zip(y).map(|(x, y)| x - y).into());
        }
        table.push(row);
    }
    if ok.iter().any(|(_, l)| l.r < l.requested) {
        table.notes.push(("truncated".into(), "overflow".into()));
    }
    Ok(Outcome { table, errors })
}
