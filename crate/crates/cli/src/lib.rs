//! Command-line front end: every analysis of the `mlbalance` library as a
//! CSV or JSON-lines table.

mod args;
mod commands;
mod input;
mod table;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::Format;

/// Environment variable capping the worker threads.
pub const THREADS_VAR: &str = "MLBALANCE_THREADS";

/// Runs the command line `argv` (program name first), writing the table to
/// `out` or the `--output` file and diagnostics to `err`. Returns the exit
/// code: 0 when every input succeeded, 1 otherwise.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    for line in &outcome.errors {
        let _ = writeln!(err, "error: {line}");
    }
    if let Err(e) = write_table(cli.command.common(), &outcome.table, out) {
        let _ = writeln!(err, "error: {e}");
        return 1;
    }
    if outcome.errors.is_empty() {
        0
    } else {
        1
    }
}

fn execute(command: &args::Command) -> Result<commands::Outcome, String> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var(THREADS_VAR) {
        let n: usize = value
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("{THREADS_VAR}: expected a positive integer, got `{value}`"))?;
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| format!("{THREADS_VAR}: {e}"))?;
    pool.install(|| commands::execute(command))
}

fn write_table(common: &args::Common, table: &table::Table, out: &mut dyn Write) -> Result<(), String> {
    match &common.output {
        Some(path) => {
            let fail = |e: std::io::Error| format!("--output {}: {e}", path.display());
            let file = std::fs::File::create(path).map_err(fail)?;
            let mut w = std::io::BufWriter::new(file);
            table.write(common.format, &mut w).map_err(fail)?;
            w.flush().map_err(fail)
        }
        None => table
            .write(common.format, out)
            .map_err(|e| format!("writing output: {e}")),
    }
}
